#include "ilab/ale.hpp"

#include "ilab/euclidean.hpp"
#include "ilab/so3.hpp"

#include <numbers>

namespace ilab {

double GroupWeight::norm() const { return gamma_order / (std::numbers::pi * std::numbers::pi); }

Triple Triple::standard() { return {{I1(), I2(), I3()}}; }

Triple Triple::rotated(const Mat3& A) {
  Triple T;
  for (int j = 0; j < 3; ++j) T.I[j] = A(j, 0) * I1() + A(j, 1) * I2() + A(j, 2) * I3();
  return T;
}

Vec4 Triple::alpha(int j, const Point4& p) const { return act_covector(I[j - 1], p); }

Mat4 Triple::theta(int j, const Point4& p) const {
  const double r2 = p.squaredNorm();
  if (r2 == 0.0) throw LabError(ErrorKind::PoleAtOrigin, "theta_j is singular at the origin");
  const int k = j % 3 + 1, l = k % 3 + 1;
  return (wedge(p, alpha(j, p)) - wedge(alpha(k, p), alpha(l, p))) / (r2 * r2 * r2);
}

namespace {

double r6(const Point4& p) {
  const double r2 = p.squaredNorm();
  if (r2 == 0.0) throw LabError(ErrorKind::PoleAtOrigin, "ALE tensors are singular at the origin");
  return r2 * r2 * r2;
}

}  // namespace

Mat4 h_zeta(const Mat3& Z, const GroupWeight& w, const Point4& p, const Triple& T) {
  const double den = r6(p);
  const Vec4& rdr = p;
  const Vec4 a[3] = {T.alpha(1, p), T.alpha(2, p), T.alpha(3, p)};
  const Mat4 rr = sym_square(rdr);
  const Mat4 sq[3] = {sym_square(a[0]), sym_square(a[1]), sym_square(a[2])};
  Mat4 s = Mat4::Zero();
  for (int j = 0; j < 3; ++j) {
    const int k = (j + 1) % 3, l = (j + 2) % 3;
    s += Z(j, j) * (rr + sq[j] - sq[k] - sq[l]);
  }
  s += Z(0, 1) * (sym_product(a[0], a[1]) - sym_product(rdr, a[2]));
  s += Z(0, 2) * (sym_product(a[0], a[2]) + sym_product(rdr, a[1]));
  s += Z(1, 2) * (sym_product(a[1], a[2]) - sym_product(rdr, a[0]));
  return -w.norm() * s / den;
}

Mat4 iota1(const Mat3& Z, const GroupWeight& w, const Point4& p) {
  const double den = r6(p);
  const Vec4& rdr = p;
  const Vec4 a1 = alpha(1, p), a2 = alpha(2, p), a3 = alpha(3, p);
  Mat4 E = (Z(2, 2) - Z(1, 1)) * sym_product(a2, a3) - (Z(2, 2) + Z(1, 1)) * sym_product(rdr, a1) -
           Z(1, 2) * (sym_square(rdr) + sym_square(a3) - sym_square(a1) - sym_square(a2));
  // e(iota ., .) = E with E symmetric, so iota has matrix E
  return w.norm() * E / den;
}

Mat4 varpi_row(int j, const Mat3& Z, const GroupWeight& w, const Point4& p, const Triple& T) {
  Mat4 s = Mat4::Zero();
  for (int k = 1; k <= 3; ++k) s += Z(j - 1, k - 1) * T.theta(k, p);
  return -w.norm() * s;
}

Mat4 varpi1(const Mat3& Z, const GroupWeight& w, const Point4& p) { return varpi_row(1, Z, w, p); }

Mat4 h_from_decomposition(const Mat3& Z, const GroupWeight& w, const Point4& p) {
  const Mat3 Z1 = truncate_gram(Z, 1), Z2 = truncate_gram(Z, 2);
  return varpi_row(3, Z2, w, p) * I3() + varpi_row(2, Z1, w, p) * I2() + varpi_row(1, Z, w, p) * I1();
}

SphereResiduals sphere_system_check(const ScalarField& f, const ScalarField& g, const ScalarField& h,
                                    const Point4& x, const Scheme& s) {
  const Point4 u = x.normalized();
  const ScalarField F[3] = {f, g, h};
  double lap[3], val[3], der[3][4];  // der[i][j] = e_j . F_i
  for (int i = 0; i < 3; ++i) {
    auto ext = [&, i](const Point4& q) { return F[i](q.normalized()); };
    lap[i] = laplacian_s3(F[i], u, s);
    val[i] = F[i](u);
    const Vec4 grad = gradient(ext, u, s);
    for (int j = 1; j <= 3; ++j) der[i][j] = grad.dot(I(j) * u);
  }
  SphereResiduals r;
  r.laplace << lap[0] - 4 * (der[1][3] - der[2][2]), lap[1] - 4 * (der[2][1] - der[0][3]),
      lap[2] - 4 * (der[0][2] - der[1][1]);
  r.laplace_r2 << lap[0] - 16 * val[0] - 4 * der[1][3] + 4 * der[2][2],
      lap[1] - 16 * val[1] - 4 * der[2][1] + 4 * der[0][3], lap[2] - 16 * val[2] - 4 * der[0][2] + 4 * der[1][1];
  return r;
}

double harmonic2(int index, const Point4& p) {
  static const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  if (index < 3) return p[0] * p[0] - p[index + 1] * p[index + 1];
  const auto& q = pairs[index - 3];
  return p[q[0]] * p[q[1]];
}

Eigen::MatrixXd averaging_operator(const std::vector<Mat4>& group, const std::vector<Point4>& samples) {
  const int n = static_cast<int>(samples.size());
  Eigen::MatrixXd B(n, kHarmonic2Dim), V(n, kHarmonic2Dim);
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < kHarmonic2Dim; ++i) {
      B(s, i) = harmonic2(i, samples[s]);
      double acc = 0;
      for (const Mat4& g : group) acc += harmonic2(i, g * samples[s]);
      V(s, i) = acc / group.size();
    }
  return B.colPivHouseholderQr().solve(V);
}

int numerical_rank(const Eigen::MatrixXd& M, double tol) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++r;
  return r;
}

}  // namespace ilab
