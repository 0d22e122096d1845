#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_values.hpp"

#include "ilab/euclidean.hpp"
#include "ilab/rng.hpp"
#include "ilab/taubnut.hpp"

#include <numbers>

using namespace ilab;

namespace {

Point4 to_point(const double (&p)[4]) { return {p[0], p[1], p[2], p[3]}; }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("LeBrun coordinates against the high-precision oracle") {
  for (const auto& c : oracle::kLeBrun) {
    CAPTURE(c.m);
    const TaubNut tn(c.m);
    const Point4 p = to_point(c.p);
    const auto s = tn.coords(p);
    CHECK(rel(s.u, c.u) < 1e-14);
    CHECK(rel(s.v, c.v) < 1e-14);
    CHECK(std::abs(s.y1 - c.y1) < 1e-14 * std::max(1.0, c.R));
    CHECK(rel(s.y2, c.y2) < 1e-15);
    CHECK(rel(s.y3, c.y3) < 1e-15);
    CHECK(rel(s.R, c.R) < 1e-14);
    CHECK(rel(tn.potential(p), c.phi) < 1e-14);
    CHECK(rel(tn.potential_alt(p), c.phi) < 1e-14);
    CHECK(lebrun_residual(p, c.m, s) < 1e-14);
  }
}

TEST_CASE("the point z1 = z2 = 1") {
  for (double m : {0.01, 1.0, 100.0}) {
    const auto c = solve_lebrun(Point4(1, 0, 1, 0), m);
    CHECK(c.u == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.v == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(c.y1) < 1e-15);
    CHECK(c.R == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(c.y2) < 1e-15);
    CHECK(c.y3 == doctest::Approx(-1.0).epsilon(1e-15));
  }
  const TaubNut tn(1);
  const Point4 p(1, 0, 1, 0);
  CHECK(tn.coords(p).V == doctest::Approx(2.5));
  CHECK(tn.fibre_length(p) == doctest::Approx(2 * std::numbers::pi * std::sqrt(2.0 / 5.0)).epsilon(1e-14));
  CHECK(tn.potential(p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("origin") {
  const TaubNut tn(2);
  const auto c = tn.coords(Point4::Zero());
  CHECK(c.u == 0.0);
  CHECK(c.v == 0.0);
  CHECK(c.R == 0.0);
  CHECK(tn.potential(Point4::Zero()) == 0.0);
  CHECK((tn.metric(Point4::Zero()) - Mat4::Identity()).norm() == 0.0);
  CHECK_THROWS_AS(tn.frames(Point4::Zero()), LabError);
  CHECK_THROWS_AS(tn.eta(Point4::Zero()), LabError);
  const auto J = tn.companion_structures(Point4::Zero());
  CHECK((J[0] - I2()).norm() < 1e-15);
  CHECK((J[1] - I3()).norm() < 1e-15);
}

TEST_CASE("metric against the Hessian of the potential") {
  for (const auto& c : oracle::kMetric) {
    CAPTURE(c.m);
    const Mat4 f = TaubNut(c.m).metric(to_point(c.p));
    const Mat4 ref = Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(c.f);
    CHECK((f - ref).cwiseAbs().maxCoeff() < 1e-12 * ref.norm());
  }
}

TEST_CASE("solver converges over the full parameter range") {
  Rng rng(31);
  for (int n = 0; n < 2000; ++n) {
    const double m = rng.log_uniform(1e-3, 1e3);
    const Point4 p = rng.log_uniform(1e-6, 1e6) * rng.direction4();
    const auto c = solve_lebrun(p, m);
    CHECK(lebrun_residual(p, m, c) < 1e-12);
    CHECK(c.R <= 2 * p.squaredNorm() * (1 + 1e-14));
  }
  CHECK_THROWS_AS(solve_lebrun(Point4(1, 0, 0, 0), 0.0), LabError);
  CHECK_THROWS_AS(solve_lebrun(Point4(1, 0, 0, 0), -1.0), LabError);
}

TEST_CASE("axis points") {
  for (double m : {0.1, 1.0, 10.0}) {
    const auto a = solve_lebrun(Point4(2, 1, 0, 0), m);
    CHECK(a.v == 0.0);
    CHECK(a.y1 == doctest::Approx(a.R));
    CHECK(lebrun_residual(Point4(2, 1, 0, 0), m, a) < 1e-14);
    const auto b = solve_lebrun(Point4(0, 0, 0.5, -3), m);
    CHECK(b.u == 0.0);
    CHECK(-b.y1 == doctest::Approx(b.R));
  }
}

TEST_CASE("scaling: f_m(s p) = f_{m s^2}(p)") {
  Rng rng(32);
  for (int n = 0; n < 20; ++n) {
    const Point4 p = rng.point_in_shell(0.3, 3);
    const double s = rng.uniform(0.5, 3), m = rng.log_uniform(0.1, 10);
    const Mat4 a = TaubNut(m).metric(s * p), b = TaubNut(m * s * s).metric(p);
    CHECK((a - b).norm() < 1e-12 * b.norm());
  }
}

TEST_CASE("point_from_y inverts the chart") {
  Rng rng(33);
  for (int n = 0; n < 50; ++n) {
    const double m = rng.log_uniform(0.1, 10);
    const Vec3 y(rng.uniform(-1, 1), rng.uniform(-3, 3), rng.uniform(-3, 3));
    const auto c = solve_lebrun(point_from_y(y, m), m);
    CHECK((Vec3(c.y1, c.y2, c.y3) - y).norm() < 1e-12 * std::max(1.0, y.norm()));
  }
}

TEST_CASE("frame properties") {
  Rng rng(34);
  for (double m : {0.1, 1.0, 10.0}) {
    const TaubNut tn(m);
    for (int n = 0; n < 20; ++n) {
      const Point4 p = rng.point_in_shell(0.5, 5);
      const Mat4 f = tn.metric(p);
      const auto F = tn.frames(p);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          CHECK(std::abs(F.coframe[a].dot(F.e[b]) - (a == b)) < 1e-9);
          CHECK(std::abs(F.e[a].dot(f * F.e[b]) - (a == b)) < 1e-9);
        }
      const Vec4 xi = TaubNut::xi(p);
      const auto dy = tn.dy(p);
      CHECK(tn.eta(p).dot(xi) == doctest::Approx(1.0).epsilon(1e-12));
      for (const Vec4& d : dy) CHECK(std::abs(d.dot(xi)) < 1e-12 * std::max(1.0, d.norm() * xi.norm()));

      const auto J = tn.companion_structures(p);
      const Mat4 Id = Mat4::Identity();
      CHECK((J[0] * J[0] + Id).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((J[1] * J[1] + Id).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((I1() * J[0] * J[1] + Id).cwiseAbs().maxCoeff() < 1e-9);
      // f is hermitian for J2, J3 and I1
      for (const Mat4& K : {J[0], J[1], I1()}) CHECK((K.transpose() * f * K - f).norm() < 1e-9 * f.norm());
      CHECK(std::abs(f.fullPivLu().determinant() - 1) < 1e-10);
    }
  }
}

TEST_CASE("J2 maps V dy2 to eta") {
  const TaubNut tn(1);
  const Point4 p(0.7, -0.3, 0.4, 1.1);
  const auto c = tn.coords(p);
  const auto J = tn.companion_structures(p);
  CHECK((act_covector(J[0], c.V * tn.dy(p)[1]) - tn.eta(p)).norm() < 1e-12);
}

TEST_CASE("dihedral invariance") {
  const TaubNut tn(0.7);
  Rng rng(35);
  for (int k : {2, 3, 5}) {
    for (const Mat4& L : DihedralGroup(k).real_elements()) {
      const Point4 p = rng.point_in_shell(0.5, 3);
      const Mat4 f = tn.metric(p);
      CHECK((pullback_tensor(L, tn.metric(L * p)) - f).norm() < 1e-12 * f.norm());
    }
  }
}

TEST_CASE("fibre length tends to pi sqrt(2/m)") {
  for (double m : {0.1, 1.0, 10.0}) {
    const TaubNut tn(m);
    const Point4 p = point_from_y(Vec3(0, 1e4 / m, 0), m);
    CHECK(tn.fibre_length(p) / (std::numbers::pi * std::sqrt(2 / m)) == doctest::Approx(1.0).epsilon(1e-2));
  }
}

TEST_CASE("metric is bounded by r^-2 e and r^2 e outside the unit ball") {
  Rng rng(36);
  const TaubNut tn(1);
  double C = 0;
  for (int n = 0; n < 200; ++n) {
    const Point4 p = rng.log_uniform(1, 100) * rng.direction4();
    const double r2 = p.squaredNorm();
    const Eigen::SelfAdjointEigenSolver<Mat4> es(tn.metric(p));
    C = std::max({C, es.eigenvalues()[3] / r2, 1 / (es.eigenvalues()[0] * r2)});
  }
  CHECK(C < 10);
}
