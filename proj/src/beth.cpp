#include "ilab/beth.hpp"

#include "ilab/euclidean.hpp"

#include <cmath>

namespace ilab {

namespace {

// log1p(x) - x
double log1p_tail(double x) {
  if (std::abs(x) < 1e-4) return x * x * (-0.5 + x * (1.0 / 3 - x * 0.25));
  return std::log1p(x) - x;
}

}  // namespace

BethMap::BethMap(double a, double kappa) : a_(a), kappa_(kappa) {
  if (!(a >= 0) || !(kappa >= 1))
    throw LabError(ErrorKind::ConfigError, "beth map needs a >= 0 and kappa >= 1");
  if (!injective(a, kappa))
    throw LabError(ErrorKind::ConfigError, "beth map is not injective for a = " + std::to_string(a) +
                                                ", kappa = " + std::to_string(kappa));
}

double BethMap::coefficient(const Mat3& Zp, const GroupWeight& w) { return w.norm() * (Zp(1, 1) + Zp(2, 2)) / 4; }

double BethMap::scale(const Point4& p) const {
  const double r2 = p.squaredNorm();
  return 1 + a_ / (kappa_ + r2 * r2);
}

Vec4 BethMap::scale_gradient(const Point4& p) const {
  const double r2 = p.squaredNorm(), D = kappa_ + r2 * r2;
  return -4 * a_ * r2 / (D * D) * p;
}

Point4 BethMap::inverse(const Point4& p, double tol) const {
  const double target = p.norm();
  if (target == 0 || a_ == 0) return p;
  // s (1 + a / (kappa + s^4)) = target; the radial map is increasing and s <= target
  double s = target;
  for (int it = 0; it < 100; ++it) {
    const double s4 = s * s * s * s, D = kappa_ + s4;
    const double F = s * (1 + a_ / D) - target;
    const double dF = 1 + a_ * (kappa_ - 3 * s4) / (D * D);
    const double next = std::max(0.0, s - F / dF);
    const double step = std::abs(next - s);
    s = next;
    if (step <= tol * std::max(1.0, target)) {
      const Point4 q = (s / target) * p;
      if ((apply(q) - p).norm() < tol * std::max(1.0, target) * 10) return q;
    }
  }
  throw LabError(ErrorKind::NoConvergence, "beth inverse did not converge at |p| = " + std::to_string(target));
}

Mat4 BethMap::jacobian(const Point4& p) const {
  return scale(p) * Mat4::Identity() + p * scale_gradient(p).transpose();
}

double BethMap::volume_defect(const Point4& p) const {
  // det = alpha^4 (1 + delta), delta = p . d alpha / alpha; 4 eps + delta is exact below
  const double r2 = p.squaredNorm(), r4 = r2 * r2, D = kappa_ + r4;
  const double eps = a_ / D;
  const double delta = -4 * a_ * r4 / (D * D * (1 + eps));
  const double lead = 4 * a_ * (kappa_ + a_) / (D * D * (1 + eps));
  return std::expm1(4 * log1p_tail(eps) + log1p_tail(delta) + lead);
}

Vec4 BethMap::pullback_covector(const Vec4& b, const Point4& p) const { return jacobian(p).transpose() * b; }

Mat4 BethMap::pullback_tensor(const Mat4& T, const Point4& p) const {
  const Mat4 D = jacobian(p);
  return D.transpose() * T * D;
}

Mat4 BethMap::pullback_endo(const Mat4& J, const Point4& p) const {
  const Mat4 D = jacobian(p);
  return D.partialPivLu().solve(J * D);
}

PulledBackCoords pulled_back_coords(const BethMap& b, const Point4& p, double m) {
  PulledBackCoords out;
  out.alpha = b.scale(p);
  const double al2 = out.alpha * out.alpha;
  out.composed = solve_lebrun(b.apply(p), m);
  const TaubNutCoords c = solve_lebrun(p, m * al2);
  TaubNutCoords& s = out.shifted;
  s.u = out.alpha * c.u;
  s.v = out.alpha * c.v;
  s.y1 = al2 * c.y1;
  s.y2 = al2 * c.y2;
  s.y3 = al2 * c.y3;
  s.R = al2 * c.R;
  s.V = s.R > 0 ? (1 + 4 * m * s.R) / (2 * s.R) : INFINITY;
  s.iterations = c.iterations;
  return out;
}

double y1_mass_derivative(const Point4& p, double mu) {
  const TaubNutCoords c = solve_lebrun(p, mu);
  return -4 * c.R * c.y1 / (1 + 4 * mu * c.R);
}

Mat4 fb_metric(const BethMap& b, const TaubNut& tn, const Point4& p) {
  return b.pullback_tensor(tn.metric(b.apply(p)), p);
}

FrameForms fb_frame_forms(const BethMap& b, const TaubNut& tn, const Point4& p) {
  const Point4 q = b.apply(p);
  const Mat4 D = b.jacobian(p);
  FrameForms out;
  out.eta = D.transpose() * tn.eta(q);
  const auto d = tn.dy(q);
  for (int j = 0; j < 3; ++j) out.dy[j] = D.transpose() * d[j];
  const TaubNutFrame F = tn.frames(p);
  const Vec4 rows[4] = {out.eta, out.dy[0], out.dy[1], out.dy[2]};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.coupling(i, j) = rows[i].dot(F.e[j]);

  const cplx z1 = z1_of(p), z2 = z2_of(p);
  if (z1 == 0.0 || z2 == 0.0) {
    out.axis_fallback = true;
    return out;
  }
  // (i / 4R^b) [u^2 (dz1bar/z1bar - dz1/z1) - v^2 (...)] = (u^2 Im(dz1/z1) - v^2 Im(dz2/z2)) / 2R^b
  const TaubNutCoords c = solve_lebrun(q, tn.m());
  const double n1 = std::norm(z1), n2 = std::norm(z2);
  const Vec4 im1 = Vec4(-p[1], p[0], 0, 0) / n1, im2 = Vec4(0, 0, -p[3], p[2]) / n2;
  out.eta_closed = (c.u * c.u * im1 - c.v * c.v * im2) / (2 * c.R);
  return out;
}

BethCouplings closed_couplings(const BethMap& b, const TaubNut& tn, const Point4& p) {
  const double m = tn.m(), a = b.a(), kap = b.kappa();
  const TaubNutCoords c = tn.coords(p);
  const TaubNutCoords cb = solve_lebrun(b.apply(p), m);
  const double al = b.scale(p), al2 = al * al;
  const double n1 = p.head<2>().squaredNorm(), n2 = p.tail<2>().squaredNorm(), r2 = n1 + n2;
  const double D2 = (kap + r2 * r2) * (kap + r2 * r2);
  const double ch = std::cosh(4 * m * c.y1), sh = std::sinh(4 * m * (c.y1 - cb.y1));
  const double den = 1 + 4 * m * cb.R;
  BethCouplings k;
  k.dalpha_mI1xi = -4 * a * (n1 * n1 - n2 * n2) / D2;
  k.dalpha_zeta = -4 * a * r2 * c.y2 * ch / (D2 * c.R);
  k.dalpha_I1zeta = -4 * a * r2 * c.y3 * ch / (D2 * c.R);
  k.dy1_mI1xi = 1 / cb.V - 8 * a / al * cb.y1 * (n1 * n1 - n2 * n2) / (den * D2);
  k.dy1_zeta = al2 * c.y2 * sh / (c.R * den) - 8 * a / al * r2 * cb.y1 * c.y2 * ch / (D2 * c.R * den);
  k.dy1_I1zeta = al2 * c.y3 * sh / (c.R * den) - 8 * a / al * r2 * cb.y1 * c.y3 * ch / (D2 * c.R * den);
  k.eta_zeta = -al2 * c.y3 * sh / (2 * cb.R * c.R);
  k.eta_I1zeta = al2 * c.y2 * sh / (2 * cb.R * c.R);
  return k;
}

BethCouplings exact_couplings(const BethMap& b, const TaubNut& tn, const Point4& p) {
  const Vec4 x = TaubNut::xi(p), z = tn.zeta_frame(p);
  const Vec4 mI1xi = -(I1() * x), I1z = I1() * z;
  const Vec4 da = b.scale_gradient(p);
  const FrameForms F = fb_frame_forms(b, tn, p);
  BethCouplings k;
  k.dalpha_mI1xi = da.dot(mI1xi);
  k.dalpha_zeta = da.dot(z);
  k.dalpha_I1zeta = da.dot(I1z);
  k.dy1_mI1xi = F.dy[0].dot(mI1xi);
  k.dy1_zeta = F.dy[0].dot(z);
  k.dy1_I1zeta = F.dy[0].dot(I1z);
  k.eta_zeta = F.eta.dot(z);
  k.eta_I1zeta = F.eta.dot(I1z);
  return k;
}

}  // namespace ilab
