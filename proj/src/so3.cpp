#include "ilab/so3.hpp"

#include "ilab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ilab {

Mat3 act(const Mat3& A, const Mat3& Z) { return A * Z * A.transpose(); }

bool is_rotation(const Mat3& A, double tol) {
  return (A.transpose() * A - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(A.determinant() - 1) <= tol;
}

bool is_psd(const Mat3& Z, double tol) {
  if ((Z - Z.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, Z.norm())) return false;
  return symmetric_eigen(Z).values[2] >= -tol * std::max(1.0, Z.norm());
}

Mat3 gram_of(const Eigen::MatrixXd& zeta) { return zeta.transpose() * zeta; }

Mat3 random_gram(Rng& rng, int dim) {
  Eigen::MatrixXd M(dim, 3);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = rng.normal();
  return gram_of(M);
}

namespace {

Vec3 cardano(const Mat3& A) {
  const double p1 = A(0, 1) * A(0, 1) + A(0, 2) * A(0, 2) + A(1, 2) * A(1, 2);
  const double q = A.trace() / 3;
  const double p2 = (A(0, 0) - q) * (A(0, 0) - q) + (A(1, 1) - q) * (A(1, 1) - q) +
                    (A(2, 2) - q) * (A(2, 2) - q) + 2 * p1;
  if (p2 == 0) return Vec3::Constant(q);
  const double p = std::sqrt(p2 / 6);
  const Mat3 B = (A - q * Mat3::Identity()) / p;
  const double r = std::clamp(B.determinant() / 2, -1.0, 1.0);
  const double phi = std::acos(r) / 3;
  const double e1 = q + 2 * p * std::cos(phi);
  const double e3 = q + 2 * p * std::cos(phi + 2 * std::numbers::pi / 3);
  return {e1, 3 * q - e1 - e3, e3};
}

bool kernel_vector(const Mat3& Z, double l, Vec3& v) {
  const Mat3 M = Z - l * Mat3::Identity();
  const Vec3 c[3] = {M.row(0).cross(M.row(1)), M.row(0).cross(M.row(2)), M.row(1).cross(M.row(2))};
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (c[i].squaredNorm() > c[best].squaredNorm()) best = i;
  const double scale = std::max(Z.squaredNorm(), 1e-300);
  if (c[best].squaredNorm() <= 1e-20 * scale) return false;
  v = c[best].normalized();
  return true;
}

void jacobi_polish(const Mat3& Z, Mat3& O) {
  for (int sweep = 0; sweep < 30; ++sweep) {
    Mat3 S = O * Z * O.transpose();
    const double off = std::abs(S(0, 1)) + std::abs(S(0, 2)) + std::abs(S(1, 2));
    if (off <= 1e-17 * std::max(S.norm(), 1e-300)) return;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        S = O * Z * O.transpose();
        if (S(p, q) == 0) continue;
        const double theta = (S(q, q) - S(p, p)) / (2 * S(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        Mat3 G = Mat3::Identity();
        G(p, p) = c;
        G(q, q) = c;
        G(p, q) = s;
        G(q, p) = -s;
        O = G.transpose() * O;
      }
  }
}

}  // namespace

Mat3 signed_transposition(int i, int j) {
  if (i > j) std::swap(i, j);
  Mat3 P = Mat3::Zero();
  const int k = 3 - i - j;
  P(k, k) = 1;
  P(i, j) = 1;
  P(j, i) = -1;
  return P;
}

SymEigen symmetric_eigen(const Mat3& Z) {
  const Vec3 lam = cardano(Z);
  Mat3 O = Mat3::Identity();
  const int first = (lam[0] - lam[1] >= lam[1] - lam[2]) ? 0 : 2;
  Vec3 v;
  if (kernel_vector(Z, lam[first], v)) {
    Vec3 a = std::abs(v[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    a = (a - a.dot(v) * v).normalized();
    const Vec3 b = v.cross(a);
    O.row(0) = v.transpose();
    O.row(1) = a.transpose();
    O.row(2) = b.transpose();
  }
  jacobi_polish(Z, O);

  Vec3 d = (O * Z * O.transpose()).diagonal();
  for (int pass = 0; pass < 3; ++pass)
    for (int i = 0; i < 2; ++i)
      if (d[i] < d[i + 1]) {
        const Mat3 P = signed_transposition(i, i + 1);
        O = P * O;
        std::swap(d[i], d[i + 1]);
      }
  if (O.determinant() < 0) O.row(2) *= -1;
  return {d, O};
}

Normalization normalize(const Mat3& Z, double tie_tol) {
  const SymEigen E = symmetric_eigen(Z);
  const Vec3 l = E.values;
  const double scale = std::max(Z.norm(), 1e-300);
  Normalization out;
  out.lambda = l;
  out.degenerate = (l[0] - l[1] <= tie_tol * scale) || (l[1] - l[2] <= tie_tol * scale);
  Mat3 Q = Mat3::Identity();
  if (l[0] - l[2] > tie_tol * scale) {
    // at exact ties Q reduces to the identity or to the (1, 3) signed transposition
    const double a = std::sqrt(std::max(0.0, (l[0] - l[1]) / (l[0] - l[2])));
    const double b = std::sqrt(std::max(0.0, (l[1] - l[2]) / (l[0] - l[2])));
    Q << a, 0, b, 0, 1, 0, -b, 0, a;
  }
  out.A = Q * E.O;
  out.Zp = act(out.A, Z);
  return out;
}

Mat3 normalized_family(const Mat3& Z, double phi) {
  const Vec3 l = symmetric_eigen(Z).values;
  const double L = std::sqrt(std::max(0.0, (l[0] - l[1]) * (l[1] - l[2])));
  Mat3 F;
  F << l[0] + l[2] - l[1], L * std::cos(phi), L * std::sin(phi), L * std::cos(phi), l[1], 0,
      L * std::sin(phi), 0, l[1];
  return F;
}

std::pair<double, double> family_angle(const Mat3& Zp, const Mat3& Z) {
  const double phi = std::atan2(Zp(0, 2), Zp(0, 1));
  return {phi, (Zp - normalized_family(Z, phi)).cwiseAbs().maxCoeff()};
}

Mat3 truncate_gram(const Mat3& Z, int k) {
  Mat3 T = Z;
  for (int i = 0; i < k; ++i) {
    T.row(i).setZero();
    T.col(i).setZero();
  }
  return T;
}

}  // namespace ilab
