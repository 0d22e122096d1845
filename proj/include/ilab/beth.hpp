#pragma once

#include "ilab/ale.hpp"
#include "ilab/taubnut.hpp"
#include "ilab/types.hpp"

namespace ilab {

// z -> (1 + a / (kappa + r^4)) z.
class BethMap {
 public:
  BethMap(double a, double kappa);

  // a = |Gamma| (Z22 + Z33) / 4 for a gram matrix already in normal form.
  static double coefficient(const Mat3& Zp, const GroupWeight& w);
  static double default_kappa(double a) { return std::max(1.0, 80.0 * a); }
  // s -> s (1 + a / (kappa + s^4)) is increasing iff 16 kappa > 9 a.
  static bool injective(double a, double kappa) { return 16.0 * kappa > 9.0 * a; }

  double a() const { return a_; }
  double kappa() const { return kappa_; }

  double scale(const Point4& p) const;               // alpha
  Vec4 scale_gradient(const Point4& p) const;        // d alpha
  Point4 apply(const Point4& p) const { return scale(p) * p; }
  Point4 inverse(const Point4& p, double tol = 1e-14) const;
  Mat4 jacobian(const Point4& p) const;

  // Jacobian determinant minus one, without the O(r^-4) cancellation.
  double volume_defect(const Point4& p) const;

  Vec4 pullback_covector(const Vec4& b_at_image, const Point4& p) const;
  Mat4 pullback_tensor(const Mat4& T_at_image, const Point4& p) const;
  Mat4 pullback_endo(const Mat4& J_at_image, const Point4& p) const;

 private:
  double a_, kappa_;
};

struct PulledBackCoords {
  double alpha = 1;
  TaubNutCoords composed;  // y_j o beth
  TaubNutCoords shifted;   // from the solution at mass m alpha^2
};

PulledBackCoords pulled_back_coords(const BethMap& b, const Point4& p, double m);

// d y_{1,mu} / d mu at fixed (z1, z2).
double y1_mass_derivative(const Point4& p, double mu);

Mat4 fb_metric(const BethMap& b, const TaubNut& tn, const Point4& p);

struct FrameForms {
  Vec4 eta;
  std::array<Vec4, 3> dy;
  Mat4 coupling;  // rows eta, dy1, dy2, dy3 of the pulled-back forms; columns the f_m frame at p
  Vec4 eta_closed = Vec4::Zero();
  bool axis_fallback = false;  // z1 z2 = 0, closed form for eta skipped
};

FrameForms fb_frame_forms(const BethMap& b, const TaubNut& tn, const Point4& p);

// Closed-form couplings of d alpha, dy1^b and eta^b against -I1 xi, zeta, I1 zeta.
struct BethCouplings {
  double dalpha_mI1xi = 0, dalpha_zeta = 0, dalpha_I1zeta = 0;
  double dy1_mI1xi = 0, dy1_zeta = 0, dy1_I1zeta = 0;
  double eta_zeta = 0, eta_I1zeta = 0;
};

BethCouplings closed_couplings(const BethMap& b, const TaubNut& tn, const Point4& p);
BethCouplings exact_couplings(const BethMap& b, const TaubNut& tn, const Point4& p);

}  // namespace ilab
