#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ilab/calculus.hpp"
#include "ilab/euclidean.hpp"
#include "ilab/rng.hpp"

using namespace ilab;

namespace {

// Round S^4 of radius 1 by stereographic projection: g = 4 / (1 + |x|^2)^2 e.
Mat4 sphere_metric(const Point4& x) { return 4.0 / std::pow(1 + x.squaredNorm(), 2) * Mat4::Identity(); }

}  // namespace

TEST_CASE("order-4 partials are exact on quartics") {
  const auto f = [](const Point4& p) { return p[0] * p[0] * p[0] * p[1] + 2 * p[2] * p[3]; };
  const Point4 p(0.3, -1.2, 0.7, 2.0);
  const Vec4 g = gradient(f, p, Scheme{1e-2, 4});
  CHECK(g[0] == doctest::Approx(3 * 0.09 * -1.2).epsilon(1e-10));
  CHECK(g[1] == doctest::Approx(0.027).epsilon(1e-10));
  CHECK(g[2] == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(fd::partial2(f, p, 0, 0, 1e-2, 4) == doctest::Approx(6 * 0.3 * -1.2).epsilon(1e-9));
  CHECK(fd::partial2(f, p, 2, 3, 1e-2, 4) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("non-finite stencil values are rejected") {
  const auto f = [](const Point4& p) { return 1.0 / p[0]; };
  CHECK_THROWS_AS(gradient(f, Point4::Zero()), LabError);
}

TEST_CASE("d of an exact 1-form vanishes and d of a 2-form d beta vanishes") {
  const CovectorField df = [](const Point4& p) -> Vec4 {
    return {2 * p[0] * p[1], p[0] * p[0] + p[3], std::cos(p[2]), p[1]};
  };
  const Point4 p(0.4, 0.1, -0.6, 1.1);
  CHECK(exterior_d1(df, p).cwiseAbs().maxCoeff() < 1e-10);
  const CovectorField beta = [](const Point4& q) -> Vec4 { return {q[1] * q[2], std::sin(q[0]), q[3] * q[3], q[0] * q[1]}; };
  const TensorField db = [&](const Point4& q) { return exterior_d1(beta, q, Scheme{1e-3, 4}); };
  CHECK(exterior_d2(db, p, Scheme{1e-2, 4}).norm() < 1e-7);
}

TEST_CASE("positive Laplacian") {
  const ScalarField r2 = [](const Point4& p) { return p.squaredNorm(); };
  CHECK(laplacian_e(r2, Point4(0.2, 0.3, 0.4, 0.5)) == doctest::Approx(-8.0).epsilon(1e-9));
  const ScalarField lin = [](const Point4& p) { return p[0]; };
  const Point4 x = Point4(1, 2, -1, 0.5).normalized();
  CHECK(laplacian_s3(lin, x) == doctest::Approx(3 * x[0]).epsilon(1e-8));
}

TEST_CASE("divergence of f e is -df") {
  const TensorField h = [](const Point4& p) { return Mat4(p[0] * Mat4::Identity()); };
  const Vec4 d = divergence_e(h, Point4(0.5, 0.5, 0.5, 0.5));
  CHECK((d - Vec4(-1, 0, 0, 0)).norm() < 1e-10);
  const TensorField e = [](const Point4&) { return Mat4(Mat4::Identity()); };
  CHECK((divergence(h, e, Point4(0.5, 0.5, 0.5, 0.5)) - d).norm() < 1e-10);
}

TEST_CASE("flat metric has zero curvature") {
  const TensorField e = [](const Point4&) { return Mat4(Mat4::Identity()); };
  const Curvature c = curvature(e, Point4(0.3, 0.1, 0.2, 0.4));
  CHECK(c.rm_norm == 0.0);
  CHECK(c.ricci_norm == 0.0);
}

TEST_CASE("round S^4 has sectional curvature 1") {
  Rng rng(21);
  for (int n = 0; n < 5; ++n) {
    const Point4 p = rng.point_in_shell(0.1, 1.5);
    const Estimate rm = richardson([&](const Scheme& s) { return curvature(sphere_metric, p, s).rm_norm; }, Scheme{1e-3, 4});
    const Curvature c = curvature(sphere_metric, p, Scheme{5e-4, 4});
    // |Rm|^2 = 2 n (n - 1) K^2, Ric = 3 g, scal = 12
    CHECK(rm.value == doctest::Approx(std::sqrt(24.0)).epsilon(1e-7));
    CHECK(rm.error < 1e-6);
    CHECK(c.ricci_norm == doctest::Approx(6.0).epsilon(1e-7));
    CHECK(c.scalar == doctest::Approx(12.0).epsilon(1e-7));
    CHECK(c.bianchi < 1e-7);
  }
}

TEST_CASE("Christoffel symbols of a conformally flat metric") {
  // g = e^{2u} e with u = x1: Gamma^a_{bc} = d_b u delta_ac + d_c u delta_ab - d_a u delta_bc
  const TensorField g = [](const Point4& p) { return Mat4(std::exp(2 * p[0]) * Mat4::Identity()); };
  const Christoffel G = levi_civita(g, Point4(0.1, 0.2, 0.3, 0.4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const double exact = (b == 0) * (a == c) + (c == 0) * (a == b) - (a == 0) * (b == c);
        CHECK(std::abs(G.up[a](b, c) - exact) < 1e-9);
      }
}

TEST_CASE("norms raise indices with the inverse metric") {
  const Mat4 g = 4 * Mat4::Identity();
  const Mat4 gi = inverse_spd(g);
  CHECK(norm_covector(Vec4(2, 0, 0, 0), gi) == doctest::Approx(1.0));
  CHECK(norm_tensor(g, gi) == doctest::Approx(2.0));
  CHECK(trace(g, gi) == doctest::Approx(4.0));
}

TEST_CASE("hodge star with a scaled metric") {
  const Mat4 W = wedge(Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0));
  CHECK((hodge(W, Mat4::Identity()) - hodge_e(W)).cwiseAbs().maxCoeff() < 1e-15);
  // conformally invariant on 2-forms in dimension 4
  CHECK((hodge(W, 9 * Mat4::Identity()) - hodge_e(W)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("power-law fit") {
  std::vector<std::pair<double, double>> s;
  for (double r : geometric_grid(10, 1000, 7)) s.push_back({r, 5 * std::pow(r, -3)});
  const DecayFit f = fit_power_law(s);
  CHECK(f.exponent == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(5.0).epsilon(1e-10));
  s[3].second = NAN;
  CHECK_THROWS_AS(fit_power_law(s), LabError);
  CHECK_THROWS_AS(fit_power_law({{1.0, 1.0}}), LabError);
}

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(10, 1000, 3);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == doctest::Approx(10));
  CHECK(g[1] == doctest::Approx(100));
  CHECK(g[2] == doctest::Approx(1000));
}

TEST_CASE("Richardson error shrinks with the step") {
  const auto q = [](const Scheme& s) {
    const ScalarField f = [](const Point4& p) { return std::exp(p[0]) * std::sin(p[1]); };
    return laplacian_e(f, Point4(0.3, 0.2, 0, 0), s);
  };
  const Estimate a = richardson(q, Scheme{1e-1, 2});
  const Estimate b = richardson(q, Scheme{5e-2, 2});
  CHECK(b.error < a.error / 3);
}
