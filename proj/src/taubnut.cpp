#include "ilab/taubnut.hpp"

#include "ilab/euclidean.hpp"

#include <boost/math/special_functions/lambert_w.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ilab {

namespace {

void finish(TaubNutCoords& c, double m, double rho) {
  c.R = std::hypot(c.y1, rho);
  const double a = c.y1 >= 0 ? c.R + c.y1 : rho * rho / (c.R - c.y1);
  const double b = c.y1 <= 0 ? c.R - c.y1 : rho * rho / (c.R + c.y1);
  c.u = std::sqrt(a);
  c.v = std::sqrt(b);
  c.V = c.R > 0 ? (1 + 4 * m * c.R) / (2 * c.R) : std::numeric_limits<double>::infinity();
}

// Axis case: |z| = e^{m s} sqrt(s) with s = u^2 (or v^2).
double axis_square(double modulus, double m) {
  return boost::math::lambert_w0(2 * m * modulus * modulus) / (2 * m);
}

}  // namespace

double lebrun_residual(const Point4& p, double m, const TaubNutCoords& c) {
  const double a = std::abs(z1_of(p)), b = std::abs(z2_of(p));
  const double s = 2 * m * c.y1;  // u^2 - v^2 = 2 y1 without cancellation
  const double l1 = std::exp(s) * c.u, l2 = std::exp(-s) * c.v;
  const double r1 = a > 0 ? std::abs(l1 / a - 1) : std::abs(l1);
  const double r2 = b > 0 ? std::abs(l2 / b - 1) : std::abs(l2);
  return std::max(r1, r2);
}

TaubNutCoords solve_lebrun(const Point4& p, double m) {
  if (!(m > 0) || !std::isfinite(m)) throw LabError(ErrorKind::ConfigError, "mass must be positive");
  const cplx z1 = z1_of(p), z2 = z2_of(p);
  const double a = std::abs(z1), b = std::abs(z2);
  TaubNutCoords c;
  const cplx w = -cplx(0, 1) * z1 * z2;
  c.y2 = w.real();
  c.y3 = w.imag();
  if (a == 0 && b == 0) {
    finish(c, m, 0);
    return c;
  }
  if (b == 0) {
    c.y1 = axis_square(a, m) / 2;
    finish(c, m, 0);
    return c;
  }
  if (a == 0) {
    c.y1 = -axis_square(b, m) / 2;
    finish(c, m, 0);
    return c;
  }

  const double rho = a * b;
  const double L = std::log(a) - std::log(b);
  const double flat = 0.5 * (a - b) * (a + b);  // solution at m = 0
  double lo, hi;
  if (L >= 0) {
    lo = 0;
    hi = std::min(L / (4 * m), flat);
  } else {
    lo = std::max(L / (4 * m), flat);
    hi = 0;
  }
  auto F = [&](double y) { return 4 * m * y + std::asinh(y / rho) - L; };
  auto dF = [&](double y) { return 4 * m + 1 / std::hypot(y, rho); };

  double y = L >= 0 ? hi : lo;
  std::ostringstream trace;
  const int max_iter = 200;
  int it = 0;
  for (; it < max_iter; ++it) {
    const double f = F(y);
    if (f == 0) break;
    if (f > 0)
      hi = std::min(hi, y);
    else
      lo = std::max(lo, y);
    double next = y - f / dF(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    trace << it << ':' << y << ' ';
    const double step = std::abs(next - y);
    y = next;
    const double tol = 2 * std::numeric_limits<double>::epsilon() * std::abs(y);
    if (step <= tol || hi - lo <= tol) break;
  }
  if (it == max_iter) throw LabError(ErrorKind::NoConvergence, "LeBrun solve: " + trace.str());
  c.y1 = y;
  c.iterations = it + 1;
  finish(c, m, rho);
  return c;
}

Point4 point_from_y(const Vec3& y, double m) {
  const double R = y.norm();
  const double rho2 = y[1] * y[1] + y[2] * y[2];
  const double a = y[0] >= 0 ? R + y[0] : rho2 / (R - y[0]);
  const double b = y[0] <= 0 ? R - y[0] : rho2 / (R + y[0]);
  const double m1 = std::exp(2 * m * y[0]) * std::sqrt(a);
  const double m2 = std::exp(-2 * m * y[0]) * std::sqrt(b);
  if (m1 == 0) return point_from(0, m2);
  // z1 z2 = i (y2 + i y3)
  return point_from(m1, cplx(-y[2], y[1]) / m1);
}

TaubNut::TaubNut(double m) : m_(m) {
  if (!(m > 0)) throw LabError(ErrorKind::ConfigError, "mass must be positive");
}

double TaubNut::potential(const Point4& p) const {
  const auto c = coords(p);
  const double a = c.u * c.u, b = c.v * c.v;
  return 0.25 * (a + b + m_ * (a * a + b * b));
}

double TaubNut::potential_alt(const Point4& p) const {
  const auto c = coords(p);
  return 0.5 * (c.R + m_ * (c.R * c.R + c.y1 * c.y1));
}

std::array<Vec4, 3> TaubNut::dy(const Point4& p, const TaubNutCoords& c) const {
  const double x1 = p[0], x2 = p[1], x3 = p[2], x4 = p[3];
  const double e = std::exp(4 * m_ * c.y1);
  const Vec4 d1(2 * x1 / e, 2 * x2 / e, -2 * x3 * e, -2 * x4 * e);
  return {d1 / (2 * (1 + 4 * m_ * c.R)), Vec4(x4, x3, x2, x1), Vec4(-x3, x4, -x1, x2)};
}

std::array<Vec4, 3> TaubNut::dy(const Point4& p) const { return dy(p, coords(p)); }

Vec4 TaubNut::potential_gradient(const Point4& p) const {
  const auto c = coords(p);
  if (c.R == 0) return Vec4::Zero();
  const auto d = dy(p, c);
  const Vec4 dR = (c.y1 * d[0] + c.y2 * d[1] + c.y3 * d[2]) / c.R;
  return 0.5 * dR + m_ * (c.R * dR + c.y1 * d[0]);
}

Vec4 TaubNut::eta(const Point4& p) const {
  const auto c = coords(p);
  if (c.R == 0) throw LabError(ErrorKind::OriginFrame, "eta is undefined at the origin");
  return act_covector(I1(), c.V * dy(p, c)[0]);
}

Mat4 TaubNut::metric(const Point4& p) const {
  const auto c = coords(p);
  if (c.R == 0) return Mat4::Identity();
  const auto d = dy(p, c);
  const Vec4 et = act_covector(I1(), c.V * d[0]);
  Mat4 f = c.V * (d[0] * d[0].transpose() + d[1] * d[1].transpose() + d[2] * d[2].transpose());
  f += et * et.transpose() / c.V;
  return f;
}

Vec4 TaubNut::xi(const Point4& p) { return {-p[1], p[0], p[3], -p[2]}; }

Vec4 TaubNut::zeta_frame(const Point4& p) const {
  const auto c = coords(p);
  if (c.R == 0) throw LabError(ErrorKind::OriginFrame, "frame is undefined at the origin");
  const double e = std::exp(4 * m_ * c.y1);
  const cplx i(0, 1);
  const cplx a1 = i * std::conj(z2_of(p)) * e / (2 * c.R);
  const cplx a2 = i * std::conj(z1_of(p)) / (e * 2 * c.R);
  return {a1.real(), a1.imag(), a2.real(), a2.imag()};
}

TaubNutFrame TaubNut::frames(const Point4& p) const {
  const auto c = coords(p);
  if (c.R == 0) throw LabError(ErrorKind::OriginFrame, "frame is undefined at the origin");
  const double s = std::sqrt(c.V);
  const Vec4 x = xi(p), z = zeta_frame(p);
  const auto d = dy(p, c);
  TaubNutFrame F;
  F.e = {s * x, -s * (I1() * x), z / s, (I1() * z) / s};
  F.coframe = {act_covector(I1(), c.V * d[0]) / s, s * d[0], s * d[1], s * d[2]};
  return F;
}

std::array<Mat4, 2> TaubNut::companion_structures(const Point4& p) const {
  // f_m^{-1} = sum_i e_i e_i^T for the f_m-orthonormal frame; an LDLT solve
  // against f_m loses cond(f_m) ~ (m r^2)^2 digits at large m r^2.
  const auto c = coords(p);
  if (c.R == 0) return {-omega_e(2), -omega_e(3)};
  const auto F = frames(p);
  Mat4 finv = Mat4::Zero();
  for (const Vec4& e : F.e) finv += e * e.transpose();
  return {-finv * omega_e(2), -finv * omega_e(3)};
}

double TaubNut::fibre_length(const Point4& p) const {
  const Vec4 x = xi(p);
  return 2 * std::numbers::pi * std::sqrt(x.dot(metric(p) * x));
}

Mat4 TaubNut::fibration_coframe(const Point4& p) const {
  const auto d = dy(p);
  const double n1 = p[0] * p[0] + p[1] * p[1];
  if (n1 == 0) throw LabError(ErrorKind::DomainViolation, "fibration chart needs z1 != 0");
  Mat4 C;
  C.row(0) = d[0].transpose();
  C.row(1) = d[1].transpose();
  C.row(2) = d[2].transpose();
  C.row(3) << -p[1] / n1, p[0] / n1, 0, 0;
  return C;
}

Mat4 TaubNut::metric_in_chart(const Vec4& w) const {
  const Chart ch = fibration_chart();
  const Point4 p = ch.to_point(w);
  const Mat4 Dt = fibration_coframe(p).inverse().transpose();
  const auto F = frames(p);
  Mat4 g = Mat4::Zero();
  for (const Vec4& th : F.coframe) {
    const Vec4 t = Dt * th;
    g += t * t.transpose();
  }
  return g;
}

Chart TaubNut::fibration_chart() const {
  const double m = m_;
  Chart ch;
  ch.to_point = [m](const Vec4& w) -> Point4 {
    const Point4 q = point_from_y(w.head<3>(), m);
    const cplx rot = std::polar(1.0, w[3]);
    return point_from(z1_of(q) * rot, z2_of(q) / rot);
  };
  ch.from_point = [m](const Point4& p) -> Vec4 {
    const auto c = solve_lebrun(p, m);
    return {c.y1, c.y2, c.y3, std::arg(z1_of(p))};
  };
  ch.jacobian = [self = *this, to = ch.to_point](const Vec4& w) -> Mat4 {
    return self.fibration_coframe(to(w)).inverse();
  };
  return ch;
}

}  // namespace ilab
