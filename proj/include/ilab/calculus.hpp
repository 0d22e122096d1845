#pragma once

#include "ilab/types.hpp"

#include <cmath>
#include <type_traits>
#include <vector>

namespace ilab {

struct Scheme {
  double step = 1e-3;  // relative to max(1, |p|)
  int order = 4;       // 2 or 4

  double h(const Point4& p) const { return step * std::max(1.0, p.norm()); }
  Scheme halved() const { return {step / 2, order}; }
};

namespace fd {

template <class F>
using value_t = std::decay_t<decltype(std::declval<F>()(std::declval<Point4>()))>;

template <class T>
void check_finite(const T& v, const Point4& q) {
  bool ok;
  if constexpr (std::is_arithmetic_v<T>)
    ok = std::isfinite(v);
  else
    ok = v.allFinite();
  if (!ok) throw LabError(ErrorKind::DomainViolation, "non-finite stencil value");
  (void)q;
}

template <class F>
value_t<F> eval(F&& f, const Point4& q) {
  value_t<F> v = f(q);
  check_finite(v, q);
  return v;
}

// d/dx_i with step h.
template <class F>
value_t<F> partial(F&& f, const Point4& p, int i, double h, int order) {
  using T = value_t<F>;
  Point4 e = Point4::Zero();
  e[i] = h;
  if (order == 2) {
    T r = (eval(f, p + e) - eval(f, p - e)) / (2 * h);
    return r;
  }
  T r = (8.0 * (eval(f, p + e) - eval(f, p - e)) - (eval(f, p + 2 * e) - eval(f, p - 2 * e))) / (12 * h);
  return r;
}

// d/dx_i d/dx_j with step h.
template <class F>
value_t<F> partial2(F&& f, const Point4& p, int i, int j, double h, int order) {
  using T = value_t<F>;
  Point4 e = Point4::Zero();
  e[i] = h;
  if (i == j) {
    if (order == 2) {
      T r = (eval(f, p + e) - 2.0 * eval(f, p) + eval(f, p - e)) / (h * h);
      return r;
    }
    T r = (16.0 * (eval(f, p + e) + eval(f, p - e)) - (eval(f, p + 2 * e) + eval(f, p - 2 * e)) -
           30.0 * eval(f, p)) /
          (12 * h * h);
    return r;
  }
  auto inner = [&](const Point4& q) -> T { return partial(f, q, j, h, order); };
  return partial(inner, p, i, h, order);
}

}  // namespace fd

template <class F>
Vec4 gradient(F&& f, const Point4& p, const Scheme& s = {}) {
  Vec4 g;
  for (int i = 0; i < 4; ++i) g[i] = fd::partial(f, p, i, s.h(p), s.order);
  return g;
}

// (dW) components indexed by the omitted coordinate l: c[l] = dW(e_i, e_j, e_k)
// with i < j < k the complement of l.
using ThreeForm = Vec4;

Mat4 exterior_d1(const CovectorField& beta, const Point4& p, const Scheme& s = {});
ThreeForm exterior_d2(const TensorField& W, const Point4& p, const Scheme& s = {});

// dd^c_J f = d(J df); with a known gradient only one finite-difference level is used.
Mat4 ddc(const ScalarField& f, const EndoField& J, const Point4& p, const Scheme& s = {});
Mat4 ddc_from_gradient(const CovectorField& df, const EndoField& J, const Point4& p, const Scheme& s = {});
EndoField constant_endo(const Mat4& J);

// Norms with all indices raised by g^-1 (Frobenius).
double norm_covector(const Vec4& b, const Mat4& ginv);
double norm_tensor(const Mat4& T, const Mat4& ginv);
double norm_endo(const Mat4& J, const Mat4& g, const Mat4& ginv);

Mat4 inverse_spd(const Mat4& g);
Mat4 hodge(const Mat4& W, const Mat4& g);

struct Christoffel {
  std::array<Mat4, 4> up;  // up[a](b, c) = Gamma^a_{bc}
};

struct MetricJet {
  Mat4 g, ginv;
  std::array<Mat4, 4> dg;                   // dg[c](a, b) = d_c g_ab
  std::array<std::array<Mat4, 4>, 4> ddg;  // ddg[c][d](a, b) = d_c d_d g_ab
};

MetricJet metric_jet(const TensorField& g, const Point4& p, const Scheme& s = {}, bool second = true);
Christoffel christoffel(const MetricJet& jet);
Christoffel levi_civita(const TensorField& g, const Point4& p, const Scheme& s = {});

struct Curvature {
  std::array<double, 256> R{};  // R[((a*4+b)*4+c)*4+d] = R_abcd, all indices down
  Mat4 ricci = Mat4::Zero();
  double scalar = 0;
  double rm_norm = 0;     // |Rm|_g
  double ricci_norm = 0;  // |Ric|_g
  double bianchi = 0;     // max |R_abcd + R_acdb + R_adbc|

  double operator()(int a, int b, int c, int d) const { return R[((a * 4 + b) * 4 + c) * 4 + d]; }
};

Curvature curvature(const MetricJet& jet);
Curvature curvature(const TensorField& g, const Point4& p, const Scheme& s = {});

// Value at step s/2 together with |value(s) - value(s/2)|.
struct Estimate {
  double value = 0;
  double error = 0;
};
template <class F>
Estimate richardson(F&& quantity, const Scheme& s) {
  const double a = quantity(s);
  const double b = quantity(s.halved());
  return {b, std::abs(a - b)};
}

// Covariant derivative of a 2-tensor field: out[c](a, b) = (nabla_c T)_ab.
std::array<Mat4, 4> nabla_tensor(const TensorField& T, const TensorField& g, const Point4& p,
                                 const Scheme& s = {});
double norm_3tensor(const std::array<Mat4, 4>& N, const Mat4& ginv);

// Metric trace and divergence (delta h)_c = -g^{ab} (nabla_a h)_{bc}.
double trace(const Mat4& h, const Mat4& ginv);
Vec4 divergence(const TensorField& h, const TensorField& g, const Point4& p, const Scheme& s = {});
Vec4 divergence_e(const TensorField& h, const Point4& p, const Scheme& s = {});

// Positive Laplacians: flat on R^4 and round on S^3 (via the degree-0 extension).
double laplacian_e(const ScalarField& f, const Point4& p, const Scheme& s = {});
double laplacian_s3(const ScalarField& f, const Point4& x, const Scheme& s = {});

// A coordinate chart w -> p with analytic Jacobian dp/dw.
struct Chart {
  std::function<Point4(const Vec4&)> to_point;
  std::function<Vec4(const Point4&)> from_point;
  std::function<Mat4(const Vec4&)> jacobian;
};

// Field expressed in chart coordinates: T_w = D^T T D, vectors v_w = D^-1 v.
TensorField pullback(const TensorField& T, const Chart& chart);

struct DecayFit {
  double exponent = 0;
  double intercept = 0;
  double residual = 0;
  std::vector<std::pair<double, double>> samples;
};

DecayFit fit_power_law(const std::vector<std::pair<double, double>>& samples);
DecayFit fit_decay(const std::function<double(double)>& norm_at, const std::vector<double>& radii);
std::vector<double> geometric_grid(double lo, double hi, int n);

}  // namespace ilab
