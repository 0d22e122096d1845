#pragma once

#include "ilab/types.hpp"

#include <vector>

namespace ilab {

// Standard complex structures.  I1 is multiplication by i on (z1, z2); I2 and
// I3 have holomorphic coordinates (x1 + i x3, x4 + i x2) and (x1 + i x4, x2 + i x3).
const Mat4& I1();
const Mat4& I2();
const Mat4& I3();
const Mat4& I(int j);  // j = 1, 2, 3
std::array<Mat4, 3> standard_structures();

// Action of an endomorphism on covectors: (J b)(X) = -b(J X).
inline Vec4 act_covector(const Mat4& J, const Vec4& b) { return -J.transpose() * b; }

// alpha . beta = alpha (x) beta + beta (x) alpha, and alpha^2 = alpha (x) alpha.
inline Mat4 sym_product(const Vec4& a, const Vec4& b) { return a * b.transpose() + b * a.transpose(); }
inline Mat4 sym_square(const Vec4& a) { return a * a.transpose(); }
inline Mat4 wedge(const Vec4& a, const Vec4& b) { return a * b.transpose() - b * a.transpose(); }

// Coefficient of dx1^dx2^dx3^dx4 in W ^ V.
double wedge22(const Mat4& W, const Mat4& V);

// Hodge star of the euclidean metric, orientation dx1^dx2^dx3^dx4.
Mat4 hodge_e(const Mat4& W);

struct BaseForms {
  Vec4 rdr;
  std::array<Vec4, 3> alpha;
  std::array<Mat4, 3> omega;  // omega_j = e(I_j ., .)
  std::array<Mat4, 3> theta;  // zero when computed without the pole terms
};

// theta_j has an r^-4 pole; with_theta = true throws PoleAtOrigin at p = 0.
BaseForms base_forms(const Point4& p, bool with_theta = true);

Vec4 rdr(const Point4& p);
Vec4 alpha(int j, const Point4& p);
Mat4 omega_e(int j);
Mat4 theta(int j, const Point4& p);

// Euclidean volume form coefficient, Omega_e = dx1^dx2^dx3^dx4.
inline double omega_volume() { return 1.0; }

// Real 4x4 matrix of a complex 2x2 matrix acting on (z1, z2).
Mat4 realify(const Eigen::Matrix2cd& U);

class DihedralGroup {
 public:
  explicit DihedralGroup(int k);
  int k() const { return k_; }
  int order() const { return 4 * k_; }
  const Eigen::Matrix2cd& zeta() const { return zeta_; }
  const Eigen::Matrix2cd& tau() const { return tau_; }
  // zeta^l tau^e for l in [0, 2k), e in {0, 1}.
  std::vector<Eigen::Matrix2cd> elements() const;
  std::vector<Mat4> real_elements() const;

 private:
  int k_;
  Eigen::Matrix2cd zeta_, tau_;
};

inline Point4 act(const Mat4& L, const Point4& p) { return L * p; }

// Pullbacks by a linear map L of fields evaluated at L p.
inline Vec4 pullback_covector(const Mat4& L, const Vec4& b_at_Lp) { return L.transpose() * b_at_Lp; }
inline Mat4 pullback_tensor(const Mat4& L, const Mat4& T_at_Lp) { return L.transpose() * T_at_Lp * L; }

}  // namespace ilab
