#include "ilab/gluing.hpp"

#include "ilab/euclidean.hpp"
#include "ilab/parallel.hpp"
#include "ilab/rng.hpp"

#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>

namespace ilab {

namespace ad = boost::math::differentiation;

namespace step {

double value(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  return 1 / (1 + std::exp(1 / t - 1 / (1 - t)));
}

double d1(double t) {
  if (t <= 0 || t >= 1) return 0;
  const double E = std::exp(1 / t - 1 / (1 - t));
  if (!std::isfinite(E)) return 0;
  return (1 / (t * t) + 1 / ((1 - t) * (1 - t))) / (E + 2 + 1 / E);
}

}  // namespace step

CutoffProfile::CutoffProfile(double K) : K_(K) {
  if (!(K >= 1)) throw LabError(ErrorKind::ConfigError, "cut-off threshold K must be >= 1");
}

double CutoffProfile::kappa(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return t - 0.5;
  // s(t) + s(1 - t) = 1
  if (t > 0.5) return t - 0.5 + kappa(1 - t);
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(step::value, 0.0, t, 10, 1e-15);
}

namespace {

// -2 sinh(4 m y1) / (r^2 R) with r^2 = e^{4my1}(R + y1) + e^{-4my1}(R - y1).  Numerator and
// denominator are divided by e^{4m|y1|} and the smaller of R +- y1 is taken as (y2^2 + y3^2) / (R -+ y1).
template <class T1, class T2, class T3>
auto psi_factor(const T1& y1, const T2& y2, const T3& y3, double y1v, double m) {
  const auto rho2 = y2 * y2 + y3 * y3;
  const auto R = sqrt(y1 * y1 + rho2);
  const double sg = y1v >= 0 ? 1.0 : -1.0;
  const auto x = 4 * m * sg * y1;  // >= 0
  const auto E = exp(-2 * x);
  // 1 - e^{-2x}, without cancellation for small x
  const auto one_m = 4 * m * std::abs(y1v) < 20 ? 2 * sinh(x) * exp(-x) : 1 - E;
  const auto big = R + sg * y1;
  return -sg * one_m / ((big + E * rho2 / big) * R);
}

void require_off_axis(const Vec3& y) {
  if (y.norm() == 0) throw LabError(ErrorKind::PoleAtOrigin, "psi_c is singular at R = 0");
}

}  // namespace

cplx psi_c_y(const Vec3& y, double m) {
  require_off_axis(y);
  const double g = psi_factor(y[0], y[1], y[2], y[0], m);
  return {y[1] * g, y[2] * g};
}

cplx psi_c(const Point4& p, double m) {
  const TaubNutCoords c = solve_lebrun(p, m);
  return psi_c_y({c.y1, c.y2, c.y3}, m);
}

PsiJet psi_c_jet(const Vec3& y, double m) {
  require_off_axis(y);
  const auto v = ad::make_ftuple<double, 4, 4, 4>(y[0], y[1], y[2]);
  const auto& a = std::get<0>(v);
  const auto& b = std::get<1>(v);
  const auto& c = std::get<2>(v);
  const auto g = psi_factor(a, b, c, y[0], m);
  const auto re = b * g;
  const auto im = c * g;
  PsiJet J{};
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j)
      for (int k = 0; i + j + k <= 4; ++k) J[i][j][k] = {re.derivative(i, j, k), im.derivative(i, j, k)};
  return J;
}

cplx psi_c_partial(const Vec3& y, double m, int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || a + b + c > 4)
    throw LabError(ErrorKind::ConfigError, "psi_c partials are available up to total order 4");
  return psi_c_jet(y, m)[a][b][c];
}

cplx psi_c_dy1_closed(const Vec3& y, double m) {
  require_off_axis(y);
  const double R = y.norm(), x = 4 * m * y[0];
  const Point4 p = point_from_y(y, m);
  const double r2 = p.squaredNorm(), V = (1 + 4 * m * R) / (2 * R);
  const double ch = std::cosh(x), sh = std::sinh(x);
  const double dr2 = 4 * V * (y[0] * ch + R * sh);
  return -2.0 * cplx(y[1], y[2]) * (4 * m * ch / (r2 * R) - sh * dr2 / (r2 * r2 * R) - sh * y[0] / (r2 * R * R * R));
}

cplx psi_c_dy1_display(const Vec3& y, double m, bool with_mass) {
  require_off_axis(y);
  const double R = y.norm();
  const Point4 p = point_from_y(y, m);
  const double r4 = p.squaredNorm() * p.squaredNorm();
  const double lead = with_mass ? m : 1.0;
  return -4.0 * cplx(y[1], y[2]) * (lead / r4 - 1 / (R * R * R) + 1 / (4 * r4 * R));
}

std::pair<Vec4, Vec4> psi_c_gradient(const Point4& p, const TaubNut& tn) {
  const TaubNutCoords c = tn.coords(p);
  require_off_axis({c.y1, c.y2, c.y3});
  const auto v = ad::make_ftuple<double, 1, 1, 1>(c.y1, c.y2, c.y3);
  const auto& a = std::get<0>(v);
  const auto& b = std::get<1>(v);
  const auto& cc = std::get<2>(v);
  const auto g = psi_factor(a, b, cc, c.y1, tn.m());
  const auto re = b * g;
  const auto im = cc * g;
  const auto d = tn.dy(p, c);
  Vec4 gr = Vec4::Zero(), gi = Vec4::Zero();
  const int idx[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int j = 0; j < 3; ++j) {
    gr += re.derivative(idx[j][0], idx[j][1], idx[j][2]) * d[j];
    gi += im.derivative(idx[j][0], idx[j][1], idx[j][2]) * d[j];
  }
  return {gr, gi};
}

ThetaPhiCouplings couplings_direct(const Point4& p, const TaubNut& tn) {
  const cplx z1 = z1_of(p), z2 = z2_of(p);
  auto vartheta = [&](const Vec4& X) { return z1 * cplx(X[0], -X[1]) + z2 * cplx(X[2], -X[3]); };
  auto phi = [&](const Vec4& X) { return -z2 * cplx(X[0], X[1]) + z1 * cplx(X[2], X[3]); };
  const Vec4 x = TaubNut::xi(p), z = tn.zeta_frame(p);
  return {vartheta(x), vartheta(z), phi(x), phi(z)};
}

ThetaPhiCouplings couplings_closed(const Point4& p, const TaubNut& tn) {
  const cplx z1 = z1_of(p), z2 = z2_of(p), i(0, 1);
  const TaubNutCoords c = tn.coords(p);
  const double n1 = std::norm(z1), n2 = std::norm(z2);
  ThetaPhiCouplings k;
  k.vartheta_xi = -i * (n1 - n2);
  k.phi_xi = -2.0 * i * z1 * z2;
  k.vartheta_zeta = z1 * z2 * std::cosh(4 * tn.m() * c.y1) / (i * c.R);
  k.phi_zeta = i * c.y1 / c.R;
  return k;
}

GluedPotential::GluedPotential(const Mat3& Zp, const GroupWeight& w, double m, const GluingParams& params)
    : Z_(Zp),
      w_(w),
      tn_(m),
      par_(params),
      prof_(params.K),
      beth_(BethMap::coefficient(Zp, w), BethMap::default_kappa(BethMap::coefficient(Zp, w))) {
  if (!(params.beta > 0 && params.beta <= 1)) throw LabError(ErrorKind::ConfigError, "beta must lie in (0, 1]");
  if (!(params.r0 >= params.K + 10)) throw LabError(ErrorKind::ConfigError, "r0 must be at least K + 10");
}

double GluedPotential::psi_euc(const Point4& p) const {
  const double r = p.norm(), ch = prof_.chi(r);
  if (ch == 0) return 0;
  const double C = c() * (Z_(1, 1) + Z_(2, 2) - Z_(0, 0));
  return 0.25 * ch * (r * r + C / (r * r));
}

Vec4 GluedPotential::psi_euc_gradient(const Point4& p) const {
  const double r = p.norm(), ch = prof_.chi(r), chd = prof_.chi_d(r);
  if (ch == 0 && chd == 0) return Vec4::Zero();
  const double r2 = r * r, C = c() * (Z_(1, 1) + Z_(2, 2) - Z_(0, 0));
  return 0.25 * (chd * (r2 + C / r2) / r * p + ch * (2.0 - 2 * C / (r2 * r2)) * p);
}

double GluedPotential::psi_mixd(const Point4& p) const {
  const TaubNutCoords k = tn_.coords(p);
  const double ch = prof_.chi(k.R);
  if (ch == 0) return 0;
  const cplx ps = psi_c_y({k.y1, k.y2, k.y3}, tn_.m()) / kPsiCScale;
  return -c() * ch * (Z_(0, 1) * ps.real() + Z_(0, 2) * ps.imag());
}

Vec4 GluedPotential::psi_mixd_gradient(const Point4& p) const {
  const TaubNutCoords k = tn_.coords(p);
  const double ch = prof_.chi(k.R), chd = prof_.chi_d(k.R);
  if (ch == 0 && chd == 0) return Vec4::Zero();
  const cplx ps = psi_c_y({k.y1, k.y2, k.y3}, tn_.m()) / kPsiCScale;
  const auto [gr, gi] = psi_c_gradient(p, tn_);
  const auto d = tn_.dy(p, k);
  const Vec4 dR = (k.y1 * d[0] + k.y2 * d[1] + k.y3 * d[2]) / k.R;
  const double val = Z_(0, 1) * ps.real() + Z_(0, 2) * ps.imag();
  return -c() * (chd * val * dR + ch * (Z_(0, 1) * gr + Z_(0, 2) * gi) / kPsiCScale);
}

double GluedPotential::phi_b(const Point4& p) const { return tn_.potential(beth_.apply(p)); }

Vec4 GluedPotential::phi_b_gradient(const Point4& p) const {
  return beth_.jacobian(p).transpose() * tn_.potential_gradient(beth_.apply(p));
}

double GluedPotential::kill_profile(double r) const {
  const double t = r - par_.r0;
  if (t <= 0) return 0;
  return step::value(std::pow(t, par_.beta)) * step::value(t);
}

double GluedPotential::kill_profile_d(double r) const {
  const double t = r - par_.r0;
  if (t <= 0) return 0;
  const double tb = std::pow(t, par_.beta);
  return step::d1(tb) * par_.beta * tb / t * step::value(t) + step::value(tb) * step::d1(t);
}

double GluedPotential::kill_end() const {
  if (par_.kill == KillProfile::Printed) return par_.r0 + 1;
  return par_.r0 * std::exp(1 / par_.beta);
}

double GluedPotential::kill(const Point4& p) const {
  const double r = p.norm();
  if (par_.kill == KillProfile::Printed) return kill_profile(r) * psi_euc(p);
  if (r <= par_.r0) return 0;
  const double C = c() * (Z_(1, 1) + Z_(2, 2) - Z_(0, 0));
  const double b = par_.beta, r0 = par_.r0;
  auto dens = [&](double rho) { return step::value(b * 0.5 * std::log(rho / (r0 * r0))); };
  const double top = std::min(r * r, kill_end() * kill_end());
  double F = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(dens, r0 * r0, top, 5, 1e-13);
  if (r * r > top) F += r * r - top;
  return 0.25 * (F + step::value(b * std::log(r / r0)) * prof_.chi(r) * C / (r * r));
}

Vec4 GluedPotential::kill_gradient(const Point4& p) const {
  const double r = p.norm();
  if (par_.kill == KillProfile::Printed) {
    const double h = kill_profile(r), hd = kill_profile_d(r);
    if (h == 0 && hd == 0) return Vec4::Zero();
    return hd / r * psi_euc(p) * p + h * psi_euc_gradient(p);
  }
  if (r <= par_.r0) return Vec4::Zero();
  const double C = c() * (Z_(1, 1) + Z_(2, 2) - Z_(0, 0)), r2 = r * r;
  const double t = par_.beta * std::log(r / par_.r0);
  const double s = step::value(t), sd = step::d1(t) * par_.beta / r, ch = prof_.chi(r), chd = prof_.chi_d(r);
  // d(s chi / r^2) with ds/dr = sd
  const double dr = sd * ch / r2 + s * chd / r2 - 2 * s * ch / (r2 * r);
  return 0.5 * s * p + 0.25 * C * dr / r * p;
}

double GluedPotential::kill_fraction(double r) const {
  if (par_.kill == KillProfile::Printed) return kill_profile(r) * prof_.chi(r);
  return r <= par_.r0 ? 0 : step::value(par_.beta * std::log(r / par_.r0)) * prof_.chi(r);
}

Mat4 GluedPotential::shell_remainder(const Point4& p, const Scheme& s) const {
  const double h = kill_fraction(p.norm());
  const Mat4 dk = ddc([this](const Point4& q) { return kill_gradient(q); }, p, s);
  const Mat4 de = ddc([this](const Point4& q) { return psi_euc_gradient(q); }, p, s);
  return h * de - dk;
}

double GluedPotential::total(const Point4& p) const {
  return CutoffProfile::kappa(phi_b(p) + mixed_sign_ * psi_mixd(p) - par_.K) - kill(p);
}

Vec4 GluedPotential::total_gradient(const Point4& p) const {
  const double arg = phi_b(p) + mixed_sign_ * psi_mixd(p) - par_.K;
  Vec4 g = -kill_gradient(p);
  const double kd = CutoffProfile::kappa_d(arg);
  if (kd != 0) g += kd * (phi_b_gradient(p) + mixed_sign_ * psi_mixd_gradient(p));
  return g;
}

Mat4 GluedPotential::structure(const Point4& p) const { return I1() + iota1(Z_, w_, p); }

Mat4 GluedPotential::omega_ale(const Point4& p) const { return omega_e(1) + varpi1(Z_, w_, p); }

Mat4 GluedPotential::ddc(const CovectorField& grad, const Point4& p, const Scheme& s) const {
  return ddc_from_gradient(grad, [this](const Point4& q) { return structure(q); }, p, s);
}

GluedForm GluedPotential::glued(const Point4& p, const Scheme& s) const {
  GluedForm out;
  out.omega = omega_ale(p) + ddc([this](const Point4& q) { return total_gradient(q); }, p, s);
  const Mat4 gJ = out.omega * structure(p);
  out.g = 0.5 * (gJ + gJ.transpose());
  out.reference = fb_metric(beth_, tn_, p);
  const Eigen::GeneralizedSelfAdjointEigenSolver<Mat4> es(out.g, out.reference, Eigen::EigenvaluesOnly);
  out.min_eig = es.eigenvalues().minCoeff();
  return out;
}

namespace {

std::vector<Point4> sweep_directions(int n, std::uint64_t seed) {
  // axes and the diagonal first: the fibre direction is worst on z1 z2 = 0
  std::vector<Point4> d = {Point4(1, 0, 0, 0), Point4(0, 0, 1, 0), Point4(1, 0, 1, 0).normalized(),
                           Point4(1, 2, 0.5, -1).normalized()};
  Rng rng(seed);
  while (static_cast<int>(d.size()) < n) d.push_back(rng.direction4());
  d.resize(std::max(n, 1));
  return d;
}

}  // namespace

TuneResult positivity_sweep(const GluedPotential& gp, int radial, int directions, std::uint64_t seed) {
  const GluingParams& P = gp.params();
  const double bounds[4] = {P.K, P.r0, P.r0 + 1, std::max(3 * P.r0, 1.5 * gp.kill_end())};
  const auto dirs = sweep_directions(directions, seed);
  const Scheme sch{2e-4, 4};
  TuneResult res;
  res.params = P;
  res.margin = {INFINITY, INFINITY, INFINITY};
  const int nd = static_cast<int>(dirs.size()), per = radial * nd;
  std::vector<double> eig(3 * per);
  std::vector<Point4> pts(3 * per);
  for (int region = 0; region < 3; ++region) {
    const double lo = bounds[region], hi = bounds[region + 1];
    for (int i = 0; i < radial; ++i) {
      const double r = radial == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (radial - 1);
      for (int j = 0; j < nd; ++j) pts[region * per + i * nd + j] = r * dirs[j];
    }
  }
  parallel_for(3 * per, [&](int n) { eig[n] = gp.glued(pts[n], sch).min_eig; });
  for (int n = 0; n < 3 * per; ++n) {
    const int region = n / per;
    const double e = eig[n];
    ++res.samples;
    if (!(e >= res.margin[region])) {
      res.margin[region] = std::isfinite(e) ? e : -INFINITY;
      res.worst[region] = pts[n];
    }
  }
  res.best_margin = *std::min_element(res.margin.begin(), res.margin.end());
  res.found = res.best_margin > 0;
  return res;
}

TuneResult tune_search(const Mat3& Zp, const GroupWeight& w, double m, const TuneRanges& ranges) {
  struct Candidate {
    double K, r0, beta;
  };
  std::vector<Candidate> cands;
  for (double K : ranges.K)
    for (double off : ranges.r0_offset)
      for (double b : ranges.beta) cands.push_back({K, K + off, b});
  if (cands.empty()) throw LabError(ErrorKind::ConfigError, "empty tuning ranges");
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.r0 != b.r0) return a.r0 < b.r0;
    if (a.beta != b.beta) return a.beta > b.beta;
    return a.K < b.K;
  });
  TuneResult best;
  for (const Candidate& c : cands) {
    const GluedPotential gp(Zp, w, m, {c.K, c.r0, c.beta, ranges.kill});
    TuneResult r = positivity_sweep(gp, ranges.radial, ranges.directions, ranges.seed);
    if (r.found) return r;
    if (r.best_margin > best.best_margin || best.samples == 0) best = r;
  }
  return best;
}

TuneResult tune_parameters(const Mat3& Zp, const GroupWeight& w, double m, const TuneRanges& ranges) {
  TuneResult r = tune_search(Zp, w, m, ranges);
  if (!r.found)
    throw LabError(ErrorKind::SearchFailed, "no positive gluing parameters; best margin " +
                                                std::to_string(r.best_margin) + " at r0 = " +
                                                std::to_string(r.params.r0) + ", beta = " +
                                                std::to_string(r.params.beta));
  return r;
}

}  // namespace ilab
