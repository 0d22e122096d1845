#pragma once

#include "ilab/ale.hpp"
#include "ilab/beth.hpp"
#include "ilab/taubnut.hpp"
#include "ilab/types.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace ilab {

// s(t) = sigma(t) / (sigma(t) + sigma(1 - t)), sigma(t) = exp(-1/t) for t > 0.
namespace step {
double value(double t);
double d1(double t);
}  // namespace step

// chi rises on [K - 1, K].  kappa is the primitive of s vanishing on t <= 0;
// it equals t - 1/2 on t >= 1, which differs from the identity by a constant.
class CutoffProfile {
 public:
  explicit CutoffProfile(double K);
  double K() const { return K_; }

  double chi(double t) const { return step::value(t - K_ + 1); }
  double chi_d(double t) const { return step::d1(t - K_ + 1); }

  static double kappa(double t);
  static double kappa_d(double t) { return step::value(t); }  // the gluing cut-off
  static double kappa_dd(double t) { return step::d1(t); }

 private:
  double K_;
};

// psi_c = -2 (y2 + i y3) sinh(4 m y1) / (r^2 R), as a function of (y1, y2, y3)
// through r^2 = 2 (R cosh 4my1 + y1 sinh 4my1).
cplx psi_c(const Point4& p, double m);
cplx psi_c_y(const Vec3& y, double m);
// d^{a+b+c} psi_c / dy1^a dy2^b dy3^c, a + b + c <= 4, by forward-mode autodiff.
cplx psi_c_partial(const Vec3& y, double m, int a, int b, int c);
// All partials up to total order 4 from one autodiff pass; index [a][b][c].
using PsiJet = std::array<std::array<std::array<cplx, 5>, 5>, 5>;
PsiJet psi_c_jet(const Vec3& y, double m);

// Chain rule through r^2(y), with d r^2 / dy1 = 4V (y1 cosh 4my1 + R sinh 4my1).
cplx psi_c_dy1_closed(const Vec3& y, double m);
// The two printed simplifications of d psi_c / dy1 (coefficient 1 or m on r^-4).
cplx psi_c_dy1_display(const Vec3& y, double m, bool with_mass);

// dd^c_{I1} psi_c is asymptotic to 8 (theta2 + i theta3); the mixed potential uses psi_c / 8.
constexpr double kPsiCScale = 8.0;

// Real and imaginary parts of d psi_c in x-coordinates.
std::pair<Vec4, Vec4> psi_c_gradient(const Point4& p, const TaubNut& tn);

// vartheta = z1 dz1bar + z2 dz2bar, phi = -z2 dz1 + z1 dz2 against xi and zeta.
struct ThetaPhiCouplings {
  cplx vartheta_xi, vartheta_zeta, phi_xi, phi_zeta;
};
ThetaPhiCouplings couplings_direct(const Point4& p, const TaubNut& tn);
ThetaPhiCouplings couplings_closed(const Point4& p, const TaubNut& tn);

enum class KillProfile {
  Printed,  // chi((r - r0)^beta) chi(r - r0) Psi_euc
  Log,      // d(kill)/d(r^2) = s(beta log(r / r0)) / 4: derivative terms are O(beta), end radius r0 e^{1/beta}
};

struct GluingParams {
  double K = 4;
  double r0 = 14;
  double beta = 1;
  KillProfile kill = KillProfile::Printed;
};

struct GluedForm {
  Mat4 omega;
  Mat4 g;             // symmetrized omega(., J .)
  Mat4 reference;     // f^b
  double min_eig = 0;  // smallest eigenvalue of g relative to f^b
};

// The model gluing: omega_1^Y -> omega_1^e + varpi_1, I_1^Y -> I_1 + iota_1 for a
// gram matrix in normal form.
class GluedPotential {
 public:
  GluedPotential(const Mat3& Zp, const GroupWeight& w, double m, const GluingParams& params);

  const GluingParams& params() const { return par_; }
  const BethMap& beth() const { return beth_; }
  const TaubNut& taubnut() const { return tn_; }
  const Mat3& gram() const { return Z_; }
  double c() const { return w_.norm(); }
  // -1 as in the far-field identity; +1 reproduces the printed sign
  void set_mixed_sign(double s) { mixed_sign_ = s; }

  double psi_euc(const Point4& p) const;
  Vec4 psi_euc_gradient(const Point4& p) const;
  double psi_mixd(const Point4& p) const;
  Vec4 psi_mixd_gradient(const Point4& p) const;
  double phi_b(const Point4& p) const;
  Vec4 phi_b_gradient(const Point4& p) const;
  double kill(const Point4& p) const;
  double kill_end() const;  // radius beyond which the kill term is Psi_euc up to a constant
  double kill_fraction(double r) const;  // h with kill ~ h Psi_euc
  // R_beta = omega - dd^c(kill) - h (omega - dd^c Psi_euc) - (1 - h) omega, omega = omega_1^Y
  Mat4 shell_remainder(const Point4& p, const Scheme& s = {}) const;
  Vec4 kill_gradient(const Point4& p) const;
  double total(const Point4& p) const;
  Vec4 total_gradient(const Point4& p) const;

  Mat4 structure(const Point4& p) const;  // I1 + iota1
  Mat4 omega_ale(const Point4& p) const;  // omega_1^e + varpi_1
  Mat4 ddc(const CovectorField& grad, const Point4& p, const Scheme& s = {}) const;

  GluedForm glued(const Point4& p, const Scheme& s = {}) const;

 private:
  double kill_profile(double r) const;
  double kill_profile_d(double r) const;

  Mat3 Z_;
  GroupWeight w_;
  TaubNut tn_;
  GluingParams par_;
  CutoffProfile prof_;
  BethMap beth_;
  double mixed_sign_ = -1;
};

struct TuneRanges {
  std::vector<double> K = {3, 4, 6};
  std::vector<double> r0_offset = {10, 15, 20, 30};
  std::vector<double> beta = {1, 0.5, 0.25, 0.1, 0.05};
  KillProfile kill = KillProfile::Printed;
  int radial = 24;
  int directions = 12;
  std::uint64_t seed = 1;
};

struct TuneResult {
  GluingParams params;
  std::array<double, 3> margin{};  // r <= r0, r0 <= r <= r0 + 1, r >= r0 + 1
  std::array<Point4, 3> worst{};  // sample attaining each margin
  int samples = 0;
  bool found = false;
  double best_margin = -INFINITY;
};

// Sampled radial x angular positivity sweep for one parameter set.
TuneResult positivity_sweep(const GluedPotential& gp, int radial, int directions, std::uint64_t seed);

// Smallest r0, then largest beta, with positive margins in all three regions.
// tune_search reports the best candidate either way; tune_parameters throws SearchFailed.
TuneResult tune_search(const Mat3& Zp, const GroupWeight& w, double m, const TuneRanges& ranges);
TuneResult tune_parameters(const Mat3& Zp, const GroupWeight& w, double m, const TuneRanges& ranges);

}  // namespace ilab
