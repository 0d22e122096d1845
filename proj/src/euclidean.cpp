#include "ilab/euclidean.hpp"

#include <numbers>

namespace ilab {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PoleAtOrigin: return "PoleAtOrigin";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::OriginFrame: return "OriginFrame";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::SearchFailed: return "SearchFailed";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

Mat4 make_structure(std::array<std::array<int, 2>, 2> pairs) {
  // each pair (a, b) means d_a -> d_b and d_b -> -d_a
  Mat4 J = Mat4::Zero();
  for (auto [a, b] : pairs) {
    J(b, a) = 1.0;
    J(a, b) = -1.0;
  }
  return J;
}

}  // namespace

const Mat4& I1() {
  static const Mat4 J = make_structure({{{0, 1}, {2, 3}}});
  return J;
}

const Mat4& I2() {
  static const Mat4 J = make_structure({{{0, 2}, {3, 1}}});
  return J;
}

const Mat4& I3() {
  static const Mat4 J = make_structure({{{0, 3}, {1, 2}}});
  return J;
}

const Mat4& I(int j) {
  switch (j) {
    case 1: return I1();
    case 2: return I2();
    case 3: return I3();
  }
  throw std::out_of_range("complex structure index must be 1, 2 or 3");
}

std::array<Mat4, 3> standard_structures() { return {I1(), I2(), I3()}; }

double wedge22(const Mat4& W, const Mat4& V) {
  return W(0, 1) * V(2, 3) - W(0, 2) * V(1, 3) + W(0, 3) * V(1, 2) + W(1, 2) * V(0, 3) -
         W(1, 3) * V(0, 2) + W(2, 3) * V(0, 1);
}

Mat4 hodge_e(const Mat4& W) {
  Mat4 S = Mat4::Zero();
  auto set = [&S](int i, int j, double v) {
    S(i, j) = v;
    S(j, i) = -v;
  };
  set(0, 1, W(2, 3));
  set(0, 2, -W(1, 3));
  set(0, 3, W(1, 2));
  set(1, 2, W(0, 3));
  set(1, 3, -W(0, 2));
  set(2, 3, W(0, 1));
  return S;
}

Vec4 rdr(const Point4& p) { return p; }

Vec4 alpha(int j, const Point4& p) { return act_covector(I(j), p); }

Mat4 omega_e(int j) { return I(j).transpose(); }

Mat4 theta(int j, const Point4& p) {
  const double r2 = p.squaredNorm();
  if (r2 == 0.0) throw LabError(ErrorKind::PoleAtOrigin, "theta_j is singular at the origin");
  const int k = j % 3 + 1;
  const int l = k % 3 + 1;
  return (wedge(p, alpha(j, p)) - wedge(alpha(k, p), alpha(l, p))) / (r2 * r2 * r2);
}

BaseForms base_forms(const Point4& p, bool with_theta) {
  BaseForms b;
  b.rdr = rdr(p);
  for (int j = 1; j <= 3; ++j) {
    b.alpha[j - 1] = alpha(j, p);
    b.omega[j - 1] = omega_e(j);
    b.theta[j - 1] = with_theta ? theta(j, p) : Mat4::Zero();
  }
  return b;
}

Mat4 realify(const Eigen::Matrix2cd& U) {
  Mat4 L;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const cplx c = U(a, b);
      L.block<2, 2>(2 * a, 2 * b) << c.real(), -c.imag(), c.imag(), c.real();
    }
  return L;
}

DihedralGroup::DihedralGroup(int k) : k_(k) {
  if (k < 2) throw LabError(ErrorKind::ConfigError, "dihedral order k must be >= 2");
  const cplx w = std::polar(1.0, std::numbers::pi / k);
  zeta_ << w, 0, 0, std::conj(w);
  tau_ << 0, -1, 1, 0;
}

std::vector<Eigen::Matrix2cd> DihedralGroup::elements() const {
  std::vector<Eigen::Matrix2cd> out;
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Identity();
  for (int l = 0; l < 2 * k_; ++l) {
    out.push_back(z);
    out.push_back(z * tau_);
    z = z * zeta_;
  }
  return out;
}

std::vector<Mat4> DihedralGroup::real_elements() const {
  std::vector<Mat4> out;
  for (const auto& g : elements()) out.push_back(realify(g));
  return out;
}

}  // namespace ilab
