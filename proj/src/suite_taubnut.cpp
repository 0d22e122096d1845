#include "suite_common.hpp"

#include "ilab/euclidean.hpp"
#include "ilab/rng.hpp"
#include "ilab/taubnut.hpp"

#include <numbers>

namespace ilab {

namespace detail {

Point4 ray_direction() { return Point4(0.9, -0.4, 0.7, 0.5).normalized(); }

Mat3 default_gram() { return Vec3(3, 2, 1).asDiagonal(); }

namespace {

// Chart point at distance R from the nut on the equator y1 = 0, where the
// x-coordinates stay finite for every mass.
Vec4 chart_point(double R) { return Vec4(0, 0.6 * R, -0.8 * R, 0.3); }

std::vector<double> taubnut_radii(double m, std::vector<double> radii) {
  if (!radii.empty()) return radii;
  const double s = std::max(1.0, 1.0 / m);
  return geometric_grid(10 * s, 200 * s, 12);
}

}  // namespace

Curve rm_taubnut_curve(double m, std::vector<double> radii) {
  radii = taubnut_radii(m, std::move(radii));
  const TaubNut tn(m);
  const TensorField gw = [&](const Vec4& w) { return tn.metric_in_chart(w); };
  const auto vals = collect<double>(static_cast<int>(radii.size()), [&](int i) {
    return curvature(gw, chart_point(radii[i]), Scheme{1e-2, 4}).rm_norm;
  });
  std::vector<std::pair<double, double>> s;
  for (std::size_t i = 0; i < radii.size(); ++i) s.push_back({radii[i], vals[i]});
  return make_curve(tag("rm_taubnut", m), s);
}

Curve frame_derivative_curve(double m, std::vector<double> radii) {
  radii = taubnut_radii(m, std::move(radii));
  const TaubNut tn(m);
  const Chart ch = tn.fibration_chart();
  const TensorField gw = [&](const Vec4& w) { return tn.metric_in_chart(w); };
  const Scheme sc{1e-3, 4};
  const auto vals = collect<double>(static_cast<int>(radii.size()), [&](int i) {
    const Vec4 w = chart_point(radii[i]);
    const MetricJet jet = metric_jet(gw, w, sc, false);
    const Christoffel G = christoffel(jet);
    double worst = 0;
    for (int j = 0; j < 4; ++j) {
      auto E = [&](const Vec4& x) -> Vec4 {
        const Point4 p = ch.to_point(x);
        return tn.fibration_coframe(p) * tn.frames(p).e[j];
      };
      const Vec4 e = E(w);
      Mat4 N;  // N(a, b) = (nabla_a e)^b
      for (int a = 0; a < 4; ++a) {
        const Vec4 d = fd::partial(E, w, a, sc.h(w), sc.order);
        for (int b = 0; b < 4; ++b) N(a, b) = d[b] + G.up[b].row(a).dot(e);
      }
      worst = std::max(worst, std::sqrt(std::max(0.0, (jet.ginv * N * jet.g * N.transpose()).trace())));
    }
    return worst;
  });
  std::vector<std::pair<double, double>> s;
  for (std::size_t i = 0; i < radii.size(); ++i) s.push_back({radii[i], vals[i]});
  return make_curve(tag("frame_derivative", m), s);
}

}  // namespace detail

using namespace detail;

namespace {

void lebrun_checks(Report& rep, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  const int n = cfg.lebrun_samples;
  std::vector<Point4> pts(n);
  std::vector<double> ms(n);
  for (int i = 0; i < n; ++i) {
    ms[i] = rng.log_uniform(1e-2, 1e2);
    pts[i] = rng.log_uniform(1e-3, 1e3) * rng.direction4();
    if (i % 50 == 0) pts[i][2] = pts[i][3] = 0;  // axis z2 = 0
    if (i % 50 == 25) pts[i][0] = pts[i][1] = 0;  // axis z1 = 0
  }
  struct Out {
    double residual = 0, consistency = 0, bound = 0;
  };
  const auto out = collect<Out>(n, [&](int i) {
    const auto c = solve_lebrun(pts[i], ms[i]);
    const double r2 = pts[i].squaredNorm();
    const double s = c.y1 * c.y1 + c.y2 * c.y2 + c.y3 * c.y3;
    return Out{lebrun_residual(pts[i], ms[i], c), std::abs(c.R * c.R - s) / std::max(c.R * c.R, 1e-300),
               c.R / (2 * r2)};
  });
  double res = 0, cons = 0, bound = 0;
  for (const auto& o : out) {
    res = std::max(res, o.residual);
    cons = std::max(cons, o.consistency);
    bound = std::max(bound, o.bound);
  }
  const std::string where = std::to_string(n) + " samples, |p| log-uniform in [1e-3, 1e3], m in [1e-2, 1e2]";
  rep.add(check_at_most("lebrun.residual", "|z1| = e^{m(u^2 - v^2)} u, |z2| = e^{m(v^2 - u^2)} v", res,
                        1e-12 * cfg.tol_scale))
      .note = where;
  rep.add(check_at_most("lebrun.r_squared", "R^2 = y1^2 + y2^2 + y3^2", cons, 1e-10 * cfg.tol_scale)).note =
      "relative; " + where;
  rep.add(check_at_most("lebrun.r_bound", "R <= 2 r^2", bound, 1.0)).note = "max of R / (2 r^2)";
}

void mass_checks(Report& rep, const SuiteConfig& cfg, double m, Rng& rng) {
  const TaubNut tn(m);
  const double tol = cfg.tol_scale;
  const Point4 one(1, 0, 1, 0);
  const double closed = std::max({std::abs(tn.potential(one) - (1 + m) / 2), std::abs(tn.potential_alt(one) - (1 + m) / 2),
                                  std::abs(tn.potential(Point4::Zero()))});
  rep.add(check_at_most(tag("potential.closed_forms", m),
                        "phi_m = (u^2 + v^2 + m(u^4 + v^4))/4 = (R + m(R^2 + y1^2))/2", closed, 1e-14 * tol));
  rep.add(check_at_most(tag("metric.origin", m), "(dd^c_{I1} phi_m)(., I1 .) = e at that point",
                        (tn.metric(Point4::Zero()) - Mat4::Identity()).norm(), 1e-12 * tol));

  const int n = cfg.points;
  std::vector<Point4> pts(n);
  for (auto& p : pts) p = rng.point_in_shell(0.5, 5);
  const CovectorField grad = [&](const Point4& q) { return tn.potential_gradient(q); };
  const Chart ch = tn.fibration_chart();
  const TensorField gw = [&](const Vec4& w) { return tn.metric_in_chart(w); };
  const TensorField gx = [&](const Point4& q) { return tn.metric(q); };
  const auto group = DihedralGroup(cfg.k).real_elements();

  struct Out {
    double ma = 0, det = 0, ric = 0, ric_err = 0, dual = 0, quat = 0, eta = 0, ortho = 0, inv = 0;
  };
  const auto out = collect<Out>(n, [&](int i) {
    const Point4& p = pts[i];
    Out o;
    const Mat4 W = ddc_from_gradient(grad, constant_endo(I1()), p, fd_scheme(cfg, 1e-3));
    o.ma = std::abs(wedge22(W, W) / 2 - 1);
    const Mat4 f = tn.metric(p);
    o.det = std::abs(f.fullPivLu().determinant() - 1);  // the cofactor formula cancels badly

    // The fibration chart degenerates on the axes z1 = 0 and z2 = 0 and the
    // x-coordinates lose precision for large m; keep the sharper estimate.
    const Vec4 w = ch.from_point(p);
    const Estimate rc = richardson([&](const Scheme& s) { return curvature(gw, w, s).ricci_norm; }, Scheme{5e-4, 4});
    const Estimate rx = richardson([&](const Scheme& s) { return curvature(gx, p, s).ricci_norm; }, Scheme{1e-3, 4});
    const Estimate& ric = rc.value + rc.error <= rx.value + rx.error ? rc : rx;
    o.ric = ric.value;
    o.ric_err = ric.error;

    const auto F = tn.frames(p);
    Mat4 D, G;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        D(a, b) = F.coframe[a].dot(F.e[b]);
        G(a, b) = F.e[a].dot(f * F.e[b]);
      }
    o.dual = (D - Mat4::Identity()).cwiseAbs().maxCoeff();
    o.ortho = (G - Mat4::Identity()).cwiseAbs().maxCoeff();

    const auto J = tn.companion_structures(p);
    const Mat4 Id = Mat4::Identity();
    o.quat = std::max({(J[0] * J[0] + Id).cwiseAbs().maxCoeff(), (J[1] * J[1] + Id).cwiseAbs().maxCoeff(),
                       (I1() * J[0] - J[1]).cwiseAbs().maxCoeff()});
    const auto c = tn.coords(p);
    const auto dy = tn.dy(p, c);
    const Vec4 eta = tn.eta(p);
    const double sc = std::max(1.0, eta.norm());
    o.eta = std::max({(act_covector(I1(), c.V * dy[0]) - eta).norm(), (act_covector(J[0], c.V * dy[1]) - eta).norm(),
                      (act_covector(J[1], c.V * dy[2]) - eta).norm()}) /
            sc;

    for (const Mat4& L : group) o.inv = std::max(o.inv, (pullback_tensor(L, tn.metric(L * p)) - f).norm() / f.norm());
    return o;
  });

  Out worst;
  for (const auto& o : out) {
    worst.ma = std::max(worst.ma, o.ma);
    worst.det = std::max(worst.det, o.det);
    worst.ric = std::max(worst.ric, o.ric + o.ric_err);
    worst.ric_err = std::max(worst.ric_err, o.ric_err);
    worst.dual = std::max(worst.dual, o.dual);
    worst.ortho = std::max(worst.ortho, o.ortho);
    worst.quat = std::max(worst.quat, o.quat);
    worst.eta = std::max(worst.eta, o.eta);
    worst.inv = std::max(worst.inv, o.inv);
  }
  const std::string where = std::to_string(n) + " points with r in [0.5, 5]";
  rep.add(check_at_most(tag("kahler.monge_ampere", m), "(dd^c_{I1} phi_m)^2 = 2 Omega_e", worst.ma, 1e-6 * tol)).note =
      "relative, order-4 stencil; " + where;
  rep.add(check_at_most(tag("kahler.volume", m), "vol^{f_m} = Omega_e", worst.det, 1e-10 * tol)).note = "|det f_m - 1|";
  auto& ric = rep.add(check_at_most(tag("ricci_flat", m), "Ric(f_m) = 0", worst.ric, 1e-5 * tol));
  ric.error_bar = worst.ric_err;
  ric.note = "max of |Ric| + Richardson error, fibration chart or x-coordinates; " + where;
  rep.add(check_at_most(tag("frame.duality", m), "<e_i^*, e_j> = delta_ij", worst.dual, 1e-9 * tol));
  rep.add(check_at_most(tag("frame.orthonormal", m), "f_m(e_i, e_j) = delta_ij", worst.ortho, 1e-9 * tol));
  rep.add(check_at_most(tag("frame.quaternionic", m), "J2^2 = J3^2 = -1, I1 J2 = J3", worst.quat, 1e-9 * tol));
  rep.add(check_at_most(tag("frame.eta_mapping", m), "V dy_j -> eta", worst.eta, 1e-9 * tol)).note =
      "I1, J2, J3 applied to V dy1, V dy2, V dy3";
  rep.add(check_at_most(tag("metric.dihedral_invariance", m), "the Taub-NUT metric f is D_k-invariant", worst.inv,
                        1e-12 * tol))
      .note = "D_" + std::to_string(cfg.k) + ", relative";

  const double Rfar = 1e4 / m;
  const Point4 far = point_from_y(Vec3(0, Rfar, 0), m);
  const double limit = std::numbers::pi * std::sqrt(2 / m);
  rep.add(check_at_most(tag("fibre.length_limit", m), "2 pi V^{-1/2} tends to pi sqrt(2/m)",
                        std::abs(tn.fibre_length(far) / limit - 1), 0.01))
      .note = "relative, at R = 1e4/m";

  add_decay(rep, rm_taubnut_curve(m, cfg.radii), tag("curvature.decay", m), "|Rm| = O(R^{-3})", -2.85, -3.15);
  add_decay(rep, frame_derivative_curve(m, cfg.radii), tag("frame.derivative_decay", m),
            "|nabla^f e_j|_f = O(R^{-2})", -1.8);
}

}  // namespace

Report run_verify_taubnut(const SuiteConfig& cfg) {
  Report rep = new_report("verify-taubnut", cfg);
  lebrun_checks(rep, cfg);
  Rng rng(cfg.seed + 1);
  for (double m : cfg.masses) mass_checks(rep, cfg, m, rng);
  return rep;
}

}  // namespace ilab
