#pragma once

#include "ilab/calculus.hpp"
#include "ilab/types.hpp"

#include <vector>

namespace ilab {

struct GroupWeight {
  int gamma_order = 8;  // |Gamma|

  double norm() const;  // |Gamma| / pi^2
  static GroupWeight dihedral(int k) { return {4 * k}; }
};

// A hyperkaehler triple of constant structures; the standard one by default,
// or the rotation I'_j = sum_l A_jl I_l of it.
struct Triple {
  std::array<Mat4, 3> I;

  static Triple standard();
  static Triple rotated(const Mat3& A);
  Vec4 alpha(int j, const Point4& p) const;  // j = 1, 2, 3
  Mat4 theta(int j, const Point4& p) const;
};

// The three first-order tensors of the ALE expansion.
Mat4 h_zeta(const Mat3& Z, const GroupWeight& w, const Point4& p, const Triple& T = Triple::standard());
Mat4 iota1(const Mat3& Z, const GroupWeight& w, const Point4& p);  // (1,1)-tensor, e-symmetric
Mat4 varpi1(const Mat3& Z, const GroupWeight& w, const Point4& p);

// -|Gamma| sum_k Z_jk theta_k; equals varpi_1 for j = 1 and gives varpi_2^{zeta'},
// varpi_3^{zeta''} on the truncated grams.
Mat4 varpi_row(int j, const Mat3& Z, const GroupWeight& w, const Point4& p, const Triple& T = Triple::standard());

// The right-hand side of h = varpi_3^{zeta''}(., I3 .) + varpi_2^{zeta'}(., I2 .) + varpi_1(., I1 .).
Mat4 h_from_decomposition(const Mat3& Z, const GroupWeight& w, const Point4& p);

struct SphereResiduals {
  Vec3 laplace;     // the harmonic system with constant-coefficient lift
  Vec3 laplace_r2;  // the system for the r^2-rescaled coefficients
};

// Residuals of the two linear systems at a point of S^3 (x is normalized),
// with e_j = I_j(x/r) . d and the positive sphere Laplacian.
SphereResiduals sphere_system_check(const ScalarField& f, const ScalarField& g, const ScalarField& h,
                                    const Point4& x, const Scheme& s = {});

// Degree-2 harmonic polynomials: x1^2 - x_j^2 (j = 2, 3, 4), then x_j x_k (j < k).
double harmonic2(int index, const Point4& p);
constexpr int kHarmonic2Dim = 9;

// Matrix of the averaging operator u -> |G|^-1 sum_g g^* u on the degree-2
// harmonics, recovered by sampling and least squares.
Eigen::MatrixXd averaging_operator(const std::vector<Mat4>& group, const std::vector<Point4>& samples);
int numerical_rank(const Eigen::MatrixXd& M, double tol = 1e-10);

}  // namespace ilab
