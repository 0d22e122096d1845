#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_values.hpp"

#include "ilab/euclidean.hpp"
#include "ilab/gluing.hpp"
#include "ilab/rng.hpp"
#include "ilab/so3.hpp"

using namespace ilab;

namespace {

const Point4 kRay = Point4(0.8, 0.3, -0.4, 0.35).normalized();

double cabs_rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("step function against the oracle") {
  for (int i = 0; i < 5; ++i) {
    CHECK(step::value(oracle::kStepT[i]) == doctest::Approx(oracle::kStepValue[i]).epsilon(1e-14));
    CHECK(CutoffProfile::kappa(oracle::kStepT[i]) == doctest::Approx(oracle::kStepPrimitive[i]).epsilon(1e-12));
  }
}

TEST_CASE("step function properties") {
  CHECK(step::value(0) == 0.0);
  CHECK(step::value(-3) == 0.0);
  CHECK(step::value(1) == 1.0);
  CHECK(step::value(7) == 1.0);
  for (int i = 1; i < 100; ++i) {
    const double t = i / 100.0;
    CHECK(step::value(t) + step::value(1 - t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(step::d1(t) >= 0);
    CHECK(step::d1(t) == doctest::Approx((step::value(t + 1e-6) - step::value(t - 1e-6)) / 2e-6).epsilon(1e-7));
  }
  for (double t : {1.0, 1.5, 4.0}) CHECK(CutoffProfile::kappa(t) == doctest::Approx(t - 0.5).epsilon(1e-12));
  for (int i = -10; i < 30; ++i) CHECK(CutoffProfile::kappa_dd(i / 20.0) >= 0);
  const CutoffProfile prof(4);
  CHECK(prof.chi(3) == 0.0);
  CHECK(prof.chi(4) == 1.0);
  CHECK(prof.chi(3.5) == doctest::Approx(0.5));
}

TEST_CASE("psi_c partials against the oracle") {
  for (const auto& c : oracle::kPsi) {
    CAPTURE(c.a);
    CAPTURE(c.b);
    CAPTURE(c.c);
    const Vec3 y(c.y[0], c.y[1], c.y[2]);
    const cplx ref(c.re, c.im);
    CHECK(cabs_rel(psi_c_partial(y, c.m, c.a, c.b, c.c), ref) < 1e-12);
    CHECK(cabs_rel(psi_c_jet(y, c.m)[c.a][c.b][c.c], ref) < 1e-12);
  }
}

TEST_CASE("psi_c vanishes on y1 = 0 and on y2 = y3 = 0") {
  Rng rng(71);
  for (int n = 0; n < 20; ++n) {
    const double m = rng.log_uniform(0.1, 10);
    CHECK(std::abs(psi_c_y(Vec3(0, rng.uniform(-5, 5), rng.uniform(-5, 5)), m)) == 0.0);
    CHECK(std::abs(psi_c_y(Vec3(rng.uniform(-5, 5), 0, 0), m)) == 0.0);
  }
}

TEST_CASE("psi_c in x-coordinates agrees with the y form") {
  Rng rng(72);
  for (int n = 0; n < 20; ++n) {
    const double m = rng.log_uniform(0.1, 10);
    const Point4 p = rng.point_in_shell(0.5, 4);
    const auto c = solve_lebrun(p, m);
    CHECK(cabs_rel(psi_c(p, m), psi_c_y(Vec3(c.y1, c.y2, c.y3), m)) < 1e-12);
  }
}

TEST_CASE("chain-rule d psi_c / dy1 matches autodiff; the displays do not") {
  Rng rng(73);
  double worst_display = 0;
  for (int n = 0; n < 20; ++n) {
    const double m = rng.log_uniform(0.1, 10);
    const Vec3 y(rng.uniform(-1, 1) / m, rng.uniform(-3, 3), rng.uniform(-3, 3));
    const cplx truth = psi_c_partial(y, m, 1, 0, 0);
    CHECK(cabs_rel(psi_c_dy1_closed(y, m), truth) < 1e-12);
    worst_display = std::max(worst_display, cabs_rel(psi_c_dy1_display(y, m, true), truth));
  }
  CHECK(worst_display > 1e-3);
}

TEST_CASE("couplings: direct and closed forms agree") {
  Rng rng(74);
  for (double m : {0.1, 1.0, 10.0}) {
    const TaubNut tn(m);
    for (int n = 0; n < 20; ++n) {
      const Point4 p = rng.point_in_shell(0.5, 5);
      const auto D = couplings_direct(p, tn), C = couplings_closed(p, tn);
      const double s = std::max({1.0, std::abs(D.vartheta_xi), std::abs(D.phi_xi), std::abs(D.vartheta_zeta)});
      CHECK(std::abs(D.vartheta_xi - C.vartheta_xi) < 1e-10 * s);
      CHECK(std::abs(D.vartheta_zeta - C.vartheta_zeta) < 1e-10 * s);
      CHECK(std::abs(D.phi_xi - C.phi_xi) < 1e-10 * s);
      CHECK(std::abs(D.phi_zeta - C.phi_zeta) < 1e-10 * s);
    }
  }
}

TEST_CASE("potential gradients match finite differences") {
  const Mat3 Zp = normalize(Vec3(3, 2, 1).asDiagonal()).Zp;
  const GluedPotential gp(Zp, GroupWeight::dihedral(2), 1, {});
  const auto check = [&](auto value, auto grad, const Point4& p) {
    const Vec4 g = grad(p);
    const Vec4 f = gradient([&](const Point4& q) { return value(q); }, p, Scheme{1e-4, 4});
    CHECK((f - g).norm() < 1e-7 * std::max(1.0, g.norm()));
  };
  for (double r : {3.0, 14.5, 15.5, 30.0}) {
    const Point4 p = r * kRay;
    CAPTURE(r);
    check([&](const Point4& q) { return gp.psi_euc(q); }, [&](const Point4& q) { return gp.psi_euc_gradient(q); }, p);
    check([&](const Point4& q) { return gp.psi_mixd(q); }, [&](const Point4& q) { return gp.psi_mixd_gradient(q); }, p);
    check([&](const Point4& q) { return gp.phi_b(q); }, [&](const Point4& q) { return gp.phi_b_gradient(q); }, p);
    check([&](const Point4& q) { return gp.kill(q); }, [&](const Point4& q) { return gp.kill_gradient(q); }, p);
    check([&](const Point4& q) { return gp.total(q); }, [&](const Point4& q) { return gp.total_gradient(q); }, p);
  }
}

TEST_CASE("kill term is Psi_euc up to a constant beyond its end radius") {
  const Mat3 Zp = normalize(Vec3(3, 2, 1).asDiagonal()).Zp;
  for (KillProfile k : {KillProfile::Printed, KillProfile::Log}) {
    const GluedPotential gp(Zp, GroupWeight::dihedral(2), 1e-4, {4, 14, 0.5, k});
    const Point4 p = 1.2 * gp.kill_end() * kRay;
    CHECK(gp.kill_fraction(1.2 * gp.kill_end()) == doctest::Approx(1.0));
    CHECK((gp.kill_gradient(p) - gp.psi_euc_gradient(p)).norm() < 1e-12 * gp.psi_euc_gradient(p).norm());
    CHECK(gp.kill_fraction(10) == 0.0);
  }
}

TEST_CASE("gram zero: the glued form is the Taub-NUT pullback far out") {
  const GluedPotential gp(Mat3::Zero(), GroupWeight::dihedral(2), 1, {});
  CHECK(gp.psi_euc(20 * kRay) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(std::abs(gp.psi_mixd(20 * kRay)) == 0.0);
  const GluedForm G = gp.glued(40 * kRay, Scheme{2e-4, 4});
  CHECK(G.min_eig > 0.5);
  CHECK((G.omega + G.omega.transpose()).norm() < 1e-10 * std::max(1.0, G.omega.norm()));
}

TEST_CASE("the mixed-term sign: only the corrected sign makes g approach f^b") {
  const Mat3 Zp = normalize(Vec3(3, 2, 1).asDiagonal()).Zp;
  const GroupWeight w = GroupWeight::dihedral(2);
  GluedPotential minus(Zp, w, 1, {}), plus(Zp, w, 1, {});
  plus.set_mixed_sign(+1);
  std::vector<std::pair<double, double>> sm, sp;
  for (double r : geometric_grid(16, 50, 4)) {
    const Point4 p = r * kRay;
    const GluedForm A = minus.glued(p, Scheme{2e-4, 4}), B = plus.glued(p, Scheme{2e-4, 4});
    const double R = minus.taubnut().coords(p).R;
    sm.push_back({R, norm_tensor(A.g - A.reference, inverse_spd(A.reference))});
    sp.push_back({R, norm_tensor(B.g - B.reference, inverse_spd(B.reference))});
  }
  CHECK(fit_power_law(sm).exponent < -1.7);
  CHECK(fit_power_law(sp).exponent > -1.7);
}

TEST_CASE("shell remainder scales with beta only for the log profile") {
  const Mat3 Zp = normalize(Vec3(3, 2, 1).asDiagonal()).Zp;
  const GroupWeight w = GroupWeight::dihedral(2);
  const auto sup = [&](double beta, KillProfile k) {
    const GluedPotential gp(Zp, w, 1e-4, {4, 14, beta, k});
    double s = 0;
    for (int i = 1; i < 60; ++i) {
      const double r = 14 + (gp.kill_end() - 14) * i / 60.0;
      s = std::max(s, gp.shell_remainder(r * kRay, Scheme{2e-4, 4}).norm());
    }
    return s;
  };
  CHECK(sup(1, KillProfile::Log) / sup(0.5, KillProfile::Log) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::abs(sup(1, KillProfile::Printed) / sup(0.5, KillProfile::Printed) - 2) > 0.2);
}
