#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_values.hpp"

#include "ilab/beth.hpp"
#include "ilab/euclidean.hpp"
#include "ilab/rng.hpp"
#include "ilab/so3.hpp"

using namespace ilab;

TEST_CASE("volume defect against the oracle") {
  for (const auto& c : oracle::kBeth) {
    const BethMap b(c.a, c.kappa);
    const Point4 p(c.p[0], c.p[1], c.p[2], c.p[3]);
    CHECK(std::abs(b.volume_defect(p) - c.defect) < 1e-14 * std::max(1e-300, std::abs(c.defect)) + 1e-300);
    CHECK(std::abs(b.jacobian(p).determinant() - 1 - c.defect) < 1e-13);
  }
}

TEST_CASE("coefficient from the normalized gram") {
  const Mat3 Zp = normalize(Vec3(3, 2, 1).asDiagonal()).Zp;
  const GroupWeight w = GroupWeight::dihedral(2);
  CHECK(BethMap::coefficient(Zp, w) == doctest::Approx(w.norm()).epsilon(1e-12));
  CHECK(BethMap::default_kappa(0.01) == 1.0);
  CHECK(BethMap::default_kappa(2) == 160.0);
}

TEST_CASE("injectivity threshold 16 kappa > 9 a") {
  CHECK(BethMap::injective(1, 1));
  CHECK_FALSE(BethMap::injective(16, 9));
  // below the threshold the radial profile s (1 + a / (kappa + s^4)) has a negative slope somewhere
  const double a = 2, kappa = 0.9 * 9 * a / 16;
  double prev = 0, min_slope = INFINITY;
  for (int i = 1; i < 4000; ++i) {
    const double s = i * 1e-3;
    const double v = s * (1 + a / (kappa + std::pow(s, 4)));
    min_slope = std::min(min_slope, v - prev);
    prev = v;
  }
  CHECK(min_slope < 0);
  CHECK_THROWS_AS(BethMap(a, kappa), LabError);
}

TEST_CASE("inverse and jacobian") {
  Rng rng(61);
  const BethMap b(0.5, 40);
  for (int n = 0; n < 50; ++n) {
    const Point4 p = rng.log_uniform(1e-2, 1e2) * rng.direction4();
    CHECK((b.inverse(b.apply(p)) - p).norm() < 1e-13 * std::max(1.0, p.norm()));
    Mat4 J;
    for (int i = 0; i < 4; ++i) J.col(i) = fd::partial([&](const Point4& q) { return Vec4(b.apply(q)); }, p, i, 1e-4, 4);
    CHECK((J - b.jacobian(p)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("the map commutes with U(2)") {
  const BethMap b(0.3, 10);
  Rng rng(62);
  const Point4 p = rng.point_in_shell(0.5, 3);
  for (const Mat4& L : DihedralGroup(3).real_elements()) CHECK((b.apply(L * p) - L * b.apply(p)).norm() < 1e-14);
  for (int j = 1; j <= 3; ++j) CHECK((b.apply(I(j) * p) - I(j) * b.apply(p)).norm() < 1e-14);
}

TEST_CASE("first-order volume defect is 4 kappa / (kappa + r^4)^2") {
  Rng rng(63);
  const double h = 1e-9;
  for (int n = 0; n < 20; ++n) {
    const Point4 p = rng.point_in_shell(0.5, 5);
    const double r4 = std::pow(p.squaredNorm(), 2), kappa = 3;
    CHECK(BethMap(h, kappa).volume_defect(p) / h == doctest::Approx(4 * kappa / std::pow(kappa + r4, 2)).epsilon(1e-6));
  }
  const Point4 far = 30 * Point4(0.5, 0.5, 0.5, 0.5);
  CHECK(BethMap(h, 1).volume_defect(far) / h < 1e-8);
}

TEST_CASE("pulled-back Taub-NUT coordinates") {
  Rng rng(64);
  const BethMap b(0.4, 20);
  for (double m : {0.1, 1.0}) {
    for (int n = 0; n < 20; ++n) {
      const Point4 p = rng.point_in_shell(0.5, 6);
      const auto P = pulled_back_coords(b, p, m);
      const auto c = solve_lebrun(p, m);
      const double a2 = P.alpha * P.alpha;
      CHECK(std::abs(P.composed.y2 - a2 * c.y2) < 1e-12 * std::max(1.0, c.R));
      CHECK(std::abs(P.composed.y3 - a2 * c.y3) < 1e-12 * std::max(1.0, c.R));
      CHECK(std::abs(P.composed.u - P.shifted.u) < 1e-10 * std::max(1.0, P.composed.u));
      CHECK(std::abs(P.composed.v - P.shifted.v) < 1e-10 * std::max(1.0, P.composed.v));
    }
  }
}

TEST_CASE("mass derivative of y1") {
  Rng rng(65);
  for (int n = 0; n < 20; ++n) {
    const Point4 p = rng.point_in_shell(0.5, 4);
    const double mu = rng.log_uniform(0.1, 10), h = 1e-5 * mu;
    const double fd = (solve_lebrun(p, mu + h).y1 - solve_lebrun(p, mu - h).y1) / (2 * h);
    const double an = y1_mass_derivative(p, mu);
    CHECK(std::abs(fd - an) < 1e-6 * std::max(1e-3, std::abs(an)));
    // |y1| shrinks as the mass grows
    CHECK(an * solve_lebrun(p, mu).y1 <= 0);
  }
}

TEST_CASE("pulled-back metric and frame forms") {
  Rng rng(66);
  const BethMap b(0.4, 20);
  const TaubNut tn(1);
  for (int n = 0; n < 20; ++n) {
    const Point4 p = rng.point_in_shell(0.5, 5);
    const Mat4 fb = fb_metric(b, tn, p);
    CHECK((fb - b.pullback_tensor(tn.metric(b.apply(p)), p)).norm() < 1e-12 * fb.norm());
    const auto F = fb_frame_forms(b, tn, p);
    CHECK(F.eta.dot(TaubNut::xi(p)) == doctest::Approx(1.0).epsilon(1e-12));
    if (!F.axis_fallback) CHECK((F.eta - F.eta_closed).norm() < 1e-9 * std::max(1.0, F.eta.norm()));
    const auto E = exact_couplings(b, tn, p), C = closed_couplings(b, tn, p);
    CHECK(std::abs(E.dalpha_zeta - C.dalpha_zeta) < 1e-9);
    CHECK(std::abs(E.dy1_mI1xi - C.dy1_mI1xi) < 1e-9);
    CHECK(std::abs(E.dy1_zeta - C.dy1_zeta) < 1e-9);
    CHECK(std::abs(E.eta_zeta - C.eta_zeta) < 1e-9);
    CHECK(std::abs(E.eta_I1zeta - C.eta_I1zeta) < 1e-9);
  }
}

TEST_CASE("volume defect decays like r^-8") {
  const BethMap b(0.5, 40);
  std::vector<std::pair<double, double>> s;
  const Point4 d = Point4(0.9, -0.4, 0.7, 0.5).normalized();
  for (double r : geometric_grid(10, 100, 8)) s.push_back({r, std::abs(b.volume_defect(r * d))});
  CHECK(fit_power_law(s).exponent == doctest::Approx(-8.0).epsilon(0.3 / 8));
}
