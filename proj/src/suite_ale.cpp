#include "suite_common.hpp"

#include "ilab/ale.hpp"
#include "ilab/euclidean.hpp"
#include "ilab/rng.hpp"
#include "ilab/so3.hpp"

namespace ilab {

namespace detail {

Curve h_zeta_curve(const Mat3& Z, int k, std::vector<double> radii) {
  if (radii.empty()) radii = geometric_grid(1, 100, 12);
  const GroupWeight w = GroupWeight::dihedral(k);
  std::vector<std::pair<double, double>> s;
  for (double r : radii) s.push_back({r, h_zeta(Z, w, r * ray_direction()).norm()});
  return make_curve("h_zeta", s, "r");
}

}  // namespace detail

using namespace detail;

namespace {

std::vector<Mat3> grams_or_random(const SuiteConfig& cfg, Rng& rng, int n) {
  if (!cfg.grams.empty()) return cfg.grams;
  std::vector<Mat3> g;
  for (int i = 0; i < n; ++i) g.push_back(random_gram(rng));
  return g;
}

}  // namespace

Report run_verify_asymptotics(const SuiteConfig& cfg) {
  Report rep = new_report("verify-asymptotics", cfg);
  Rng rng(cfg.seed);
  const auto grams = grams_or_random(cfg, rng, 5);
  const GroupWeight w = GroupWeight::dihedral(cfg.k);
  const double tol = cfg.tol_scale;
  const int n = cfg.points;
  const Scheme fd = fd_scheme(cfg, 2e-4);

  struct Out {
    double trace = 0, div = 0, dvarpi = 0, asd = 0, anti = 0, sym = 0, decomp = 0, split = 0, homog = 0;
  };
  Out worst;
  for (const Mat3& Z : grams) {
    const Mat3 Zt = truncate_gram(Z, 1);
    std::vector<Point4> pts(n);
    for (auto& p : pts) p = rng.point_in_shell(0.5, 5);
    const TensorField hf = [&](const Point4& q) { return h_zeta(Z, w, q); };
    const auto out = collect<Out>(n, [&](int i) {
      const Point4& p = pts[i];
      Out o;
      const Mat4 h = hf(p);
      const double hs = std::max(1.0, h.norm());
      o.trace = std::abs(h.trace()) / hs;
      o.div = divergence_e(hf, p, fd).norm();
      const Mat4 v = varpi1(Z, w, p);
      const double vs = std::max(1.0, v.norm());
      o.dvarpi = exterior_d2([&](const Point4& q) { return varpi1(Z, w, q); }, p, fd).norm();
      o.asd = (hodge_e(v) + v).norm() / vs;
      const Mat4 io = iota1(Z, w, p);
      const double is = std::max(1.0, io.norm());
      o.anti = (io * I1() + I1() * io).norm() / is;
      o.sym = (io - io.transpose()).norm() / is;
      o.decomp = (h - h_from_decomposition(Z, w, p)).norm() / hs;
      o.split = (0.5 * (h - I1().transpose() * h * I1()) - h_zeta(Zt, w, p)).norm() / hs;
      const double sc = 1.7;
      o.homog = (std::pow(sc, 4) * h_zeta(Z, w, sc * p) - h).norm() / hs;
      return o;
    });
    for (const auto& o : out) {
      worst.trace = std::max(worst.trace, o.trace);
      worst.div = std::max(worst.div, o.div);
      worst.dvarpi = std::max(worst.dvarpi, o.dvarpi);
      worst.asd = std::max(worst.asd, o.asd);
      worst.anti = std::max(worst.anti, o.anti);
      worst.sym = std::max(worst.sym, o.sym);
      worst.decomp = std::max(worst.decomp, o.decomp);
      worst.split = std::max(worst.split, o.split);
      worst.homog = std::max(worst.homog, o.homog);
    }
  }
  const std::string where = std::to_string(grams.size()) + " grams x " + std::to_string(n) + " points, r in [0.5, 5]";
  rep.add(check_at_most("ale.trace", "tr^e(h_zeta) = 0", worst.trace, 1e-12 * tol)).note = "relative; " + where;
  rep.add(check_at_most("ale.divergence", "delta^e h_zeta = 0", worst.div, 1e-6 * tol)).note = "order-4 stencil; " + where;
  rep.add(check_at_most("ale.varpi_closed", "d varpi_1 = 0", worst.dvarpi, 1e-8 * tol));
  rep.add(check_at_most("ale.varpi_anti_self_dual", "*varpi_1 = -varpi_1", worst.asd, 1e-12 * tol)).note = "relative";
  rep.add(check_at_most("ale.iota_anticommutes", "iota_1 I1 + I1 iota_1 = 0", worst.anti, 1e-12 * tol));
  rep.add(check_at_most("ale.iota_symmetric", "iota_1 is e-symmetric", worst.sym, 1e-12 * tol));
  rep.add(check_at_most("ale.decomposition",
                        "h_zeta = varpi_3^{zeta''}(., I3 .) + varpi_2^{zeta'}(., I2 .) + varpi_1^zeta(., I1 .)",
                        worst.decomp, 1e-10 * tol))
      .note = "relative";
  rep.add(check_at_most("ale.hermitian_split", "(h_zeta - h_zeta(I1 ., I1 .))/2 = h_{zeta'}", worst.split, 1e-12 * tol));
  rep.add(check_at_most("ale.homogeneity", "kappa_s^* h_zeta = s^{-2} h_zeta", worst.homog, 1e-12 * tol));

  // Normal-form specialization of iota_1.
  double spec = 0;
  for (const Mat3& Z : grams) {
    const Mat3 Zp = normalize(Z).Zp;
    for (int i = 0; i < 5; ++i) {
      const Point4 p = rng.point_in_shell(0.5, 5);
      const Mat4 pred = -w.norm() * (Zp(1, 1) + Zp(2, 2)) * sym_product(rdr(p), alpha(1, p)) / std::pow(p.squaredNorm(), 3);
      spec = std::max(spec, (iota1(Zp, w, p).transpose() - pred).norm() / pred.norm());
    }
  }
  rep.add(check_at_most("ale.iota_normal_form", "e(iota_1 ., .) = -c(|xi2|^2 + |xi3|^2) rdr.alpha1/r^6", spec,
                        1e-12 * tol));

  // Averaging over D_k on the degree-2 harmonics.
  std::vector<Point4> samples;
  for (int i = 0; i < 40; ++i) samples.push_back(rng.direction4());
  json ranks = json::object();
  for (int k : {2, 3, 5}) {
    const auto G = DihedralGroup(k).real_elements();
    const auto A = averaging_operator(G, samples);
    const int rank = numerical_rank(A, 1e-9);
    std::vector<Mat4> cyclic;
    for (std::size_t i = 0; i < G.size(); i += 2) cyclic.push_back(G[i]);
    ranks["k=" + std::to_string(k)] = {{"dihedral", rank},
                                       {"cyclic_part", numerical_rank(averaging_operator(cyclic, samples), 1e-9)},
                                       {"tau_only", numerical_rank(averaging_operator({Mat4::Identity(), G[1]}, samples), 1e-9)}};
    auto& rec = rep.add(check_within("invariants.average_rank [k=" + std::to_string(k) + "]",
                                     "no non-trivial linear combination of the above polynomials is Gamma-invariant",
                                     rank, 0, 0));
    rec.error_bar = A.cwiseAbs().maxCoeff();
    rec.note = "rank of the averaging operator on the 9-dim degree-2 harmonics; error_bar = max |entry|";
  }
  rep.extra["averaging_ranks"] = ranks;

  // Constant coefficients solve the first sphere system; degree-2 harmonics
  // are the eigenspace Delta u = 8u (positive Laplacian) entering the second.
  const ScalarField one = [](const Point4&) { return 1.0; };
  double sph = 0, eig = 0;
  for (int i = 0; i < 5; ++i) {
    const Point4 x = rng.direction4();
    sph = std::max(sph, sphere_system_check(one, one, one, x).laplace.norm());
    for (int j = 0; j < kHarmonic2Dim; ++j) {
      const ScalarField u = [j](const Point4& q) { return harmonic2(j, q); };
      eig = std::max(eig, std::abs(laplacian_s3(u, x, Scheme{}) - 8 * harmonic2(j, x)));
    }
  }
  rep.add(check_at_most("ale.sphere_constants", "Delta_{S^3} f - 4(e3.g - e2.h) = 0", sph, 1e-6 * tol)).note =
      "residual of the harmonic system for constant coefficients";
  rep.add(check_at_most("ale.sphere_harmonics", "Delta_{S^3} f - 16 f - 4(e3.g) + 4(e2.h) = 0", eig, 1e-6 * tol)).note =
      "|Delta_{S^3} u - 8 u| over the degree-2 harmonics x1^2 - xj^2, xj xk";

  Curve hc = h_zeta_curve(grams.front(), cfg.k, cfg.radii);
  add_decay(rep, hc, "ale.h_zeta_decay", "kappa_s^* h_zeta = s^{-2} h_zeta", -3.95, -4.05);
  return rep;
}

Report run_normalize_so3(const SuiteConfig& cfg) {
  Report rep = new_report("normalize-so3", cfg);
  Rng rng(cfg.seed);
  const double tol = cfg.tol_scale;
  std::vector<Mat3> grams;
  for (int i = 0; i < 100; ++i) grams.push_back(random_gram(rng));
  grams.push_back(default_gram());
  for (const Mat3& Z : cfg.grams) grams.push_back(Z);

  double cons = 0, rot = 0, mid = 0, fam = 0, spec = 0, indep = 0;
  for (const Mat3& Z : grams) {
    const Normalization N = normalize(Z);
    const double s = std::max(1.0, Z.norm());
    cons = std::max({cons, std::abs(N.Zp(1, 1) - N.Zp(2, 2)) / s, std::abs(N.Zp(1, 2)) / s});
    rot = std::max({rot, (N.A.transpose() * N.A - Mat3::Identity()).cwiseAbs().maxCoeff(), std::abs(N.A.determinant() - 1)});
    mid = std::max(mid, std::abs(N.Zp(1, 1) - N.lambda[1]) / s);
    const Vec3 ev = symmetric_eigen(N.Zp).values;
    spec = std::max({spec, (ev - N.lambda).norm() / s, std::abs(N.Zp.determinant() - Z.determinant()) / (s * s * s)});
    if (!N.degenerate) fam = std::max(fam, family_angle(N.Zp, Z).second / s);
    const Mat3 B = rng.rotation();
    indep = std::max(indep, std::abs(normalize(act(B, Z)).Zp(1, 1) - N.Zp(1, 1)) / s);
  }
  const std::string where = std::to_string(grams.size()) + " grams (random Gram matrices of triples in R^5 and diag(3, 2, 1))";
  rep.add(check_at_most("so3.constraints", "|xi2|^2 = |xi3|^2, <xi2, xi3> = 0", cons, 1e-12 * tol)).note = where;
  rep.add(check_at_most("so3.rotation", "A^T A = Id, det A = 1", rot, 1e-12 * tol));
  rep.add(check_at_most("so3.middle_eigenvalue", "has to be the middle eigenvalue of the matrix (<zeta_j, zeta_l>)", mid,
                        1e-12 * tol));
  rep.add(check_at_most("so3.spectrum_preserved", "Z' = A Z A^T", spec, 1e-12 * tol));
  rep.add(check_at_most("so3.family", "Z' = (l1 + l3 - l2, L cos phi, L sin phi; L cos phi, l2, 0; L sin phi, 0, l2)", fam,
                        1e-10 * tol));
  rep.add(check_at_most("so3.rotation_independence", "|xi2|^2 = |xi3|^2 does not depend on A", indep, 1e-12 * tol));

  Mat3 target;
  target << 2, 0, -1, 0, 2, 0, -1, 0, 2;
  const Normalization N321 = normalize(default_gram());
  rep.add(check_at_most("so3.diag321", "Q diag(l1, l2, l3) Q^t = (l1 + l3 - l2, 0, -L; 0, l2, 0; -L, 0, l2)",
                        (N321.Zp - target).cwiseAbs().maxCoeff(), 1e-12 * tol));

  json out = json::array();
  for (const Mat3& Z : cfg.grams.empty() ? std::vector<Mat3>{default_gram()} : cfg.grams) {
    const Normalization N = normalize(Z);
    auto mat = [](const Mat3& M) {
      json j = json::array();
      for (int i = 0; i < 3; ++i) j.push_back({M(i, 0), M(i, 1), M(i, 2)});
      return j;
    };
    out.push_back({{"gram", mat(Z)},
                   {"A", mat(N.A)},
                   {"normalized", mat(N.Zp)},
                   {"eigenvalues", {N.lambda[0], N.lambda[1], N.lambda[2]}},
                   {"degenerate", N.degenerate}});
  }
  rep.extra["normalizations"] = out;
  return rep;
}

}  // namespace ilab
