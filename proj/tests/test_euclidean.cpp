#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ilab/calculus.hpp"
#include "ilab/euclidean.hpp"
#include "ilab/rng.hpp"

using namespace ilab;

namespace {

double max_abs(const Mat4& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("standard structures are quaternionic and orthogonal") {
  const Mat4 Id = Mat4::Identity();
  for (int j = 1; j <= 3; ++j) {
    CHECK(max_abs(I(j) * I(j) + Id) == 0.0);
    CHECK(max_abs(I(j).transpose() * I(j) - Id) == 0.0);
  }
  CHECK(max_abs(I1() * I2() * I3() + Id) == 0.0);
  CHECK(max_abs(I1() * I2() - I3()) == 0.0);
}

TEST_CASE("I1 is multiplication by i on (z1, z2)") {
  const Point4 p(1, 2, 3, 4);
  const Point4 q = I1() * p;
  const cplx i(0, 1);
  CHECK(std::abs(z1_of(q) - i * z1_of(p)) == 0.0);
  CHECK(std::abs(z2_of(q) - i * z2_of(p)) == 0.0);
}

TEST_CASE("Kaehler forms") {
  for (int j = 1; j <= 3; ++j) {
    CHECK(max_abs(omega_e(j) - I(j).transpose()) == 0.0);
    CHECK(wedge22(omega_e(j), omega_e(j)) == doctest::Approx(2.0).epsilon(1e-15));
    for (int k = j + 1; k <= 3; ++k) CHECK(std::abs(wedge22(omega_e(j), omega_e(k))) < 1e-15);
    CHECK(max_abs(hodge_e(omega_e(j)) - omega_e(j)) < 1e-15);
  }
}

TEST_CASE("coframe at (1,0,0,0)") {
  const Point4 p(1, 0, 0, 0);
  CHECK((rdr(p) - Vec4(1, 0, 0, 0)).norm() == 0.0);
  for (int j = 1; j <= 3; ++j) CHECK(alpha(j, p).norm() == doctest::Approx(1.0));
}

TEST_CASE("quaternionic coframe is orthonormal after dividing by r") {
  Rng rng(11);
  for (int n = 0; n < 50; ++n) {
    const Point4 p = rng.point_in_shell(0.1, 10);
    const double r = p.norm();
    Mat4 B;
    B.row(0) = rdr(p).transpose() / r;
    for (int j = 1; j <= 3; ++j) B.row(j) = alpha(j, p).transpose() / r;
    CHECK(max_abs(B * B.transpose() - Mat4::Identity()) < 1e-14);
  }
}

TEST_CASE("alpha_j = I_j rdr as covectors") {
  Rng rng(12);
  for (int n = 0; n < 20; ++n) {
    const Point4 p = rng.point_in_shell(0.5, 3);
    for (int j = 1; j <= 3; ++j) {
      const Vec4 a = alpha(j, p);
      const Vec4 b = act_covector(I(j), rdr(p));
      CHECK(std::min((a - b).norm(), (a + b).norm()) < 1e-14);
    }
  }
}

TEST_CASE("theta_j = dd^c_{I_j}(r^-2) / 4") {
  Rng rng(13);
  const CovectorField d_inv_r2 = [](const Point4& q) -> Vec4 { return -2.0 * q / std::pow(q.squaredNorm(), 2); };
  for (int n = 0; n < 10; ++n) {
    const Point4 p = rng.point_in_shell(0.8, 2);
    for (int j = 1; j <= 3; ++j) {
      const Mat4 num = 0.25 * ddc_from_gradient(d_inv_r2, constant_endo(I(j)), p, Scheme{2e-4, 4});
      CHECK(max_abs(num - theta(j, p)) < 1e-10);
    }
  }
}

TEST_CASE("theta_j is anti-self-dual and orthogonal to omega_j") {
  Rng rng(14);
  for (int n = 0; n < 20; ++n) {
    const Point4 p = rng.point_in_shell(0.5, 4);
    for (int j = 1; j <= 3; ++j) {
      const Mat4 t = theta(j, p);
      CHECK(max_abs(hodge_e(t) + t) < 1e-14 * std::max(1.0, max_abs(t)));
      CHECK(std::abs(wedge22(t, omega_e(j))) < 1e-14 * std::max(1.0, max_abs(t)));
    }
  }
}

TEST_CASE("d alpha_3 is proportional to omega_3") {
  Rng rng(15);
  for (int n = 0; n < 10; ++n) {
    const Point4 p = rng.point_in_shell(0.5, 3);
    const Mat4 da = exterior_d1([](const Point4& q) { return alpha(3, q); }, p);
    const double c = wedge22(da, omega_e(3)) / 2;
    CHECK(std::abs(std::abs(c) - 2.0) < 1e-9);
    CHECK(max_abs(da - c * omega_e(3)) < 1e-9);
  }
}

TEST_CASE("theta has a pole at the origin") {
  CHECK_THROWS_AS(base_forms(Point4::Zero()), LabError);
  CHECK_NOTHROW(base_forms(Point4::Zero(), false));
}

TEST_CASE("binary dihedral group") {
  for (int k : {2, 3, 5}) {
    const DihedralGroup G(k);
    const auto els = G.real_elements();
    REQUIRE(static_cast<int>(els.size()) == G.order());
    for (const Mat4& A : els) {
      CHECK(max_abs(A.transpose() * A - Mat4::Identity()) < 1e-14);
      CHECK(std::abs(A.determinant() - 1) < 1e-14);
      CHECK(max_abs(A * I1() - I1() * A) < 1e-14);
    }
    // closed under products
    for (const Mat4& A : els)
      for (const Mat4& B : els) {
        double best = INFINITY;
        for (const Mat4& C : els) best = std::min(best, max_abs(A * B - C));
        CHECK(best < 1e-12);
      }
  }
  CHECK_THROWS_AS(DihedralGroup(1), LabError);
}

TEST_CASE("pullback by a group element preserves e") {
  const auto els = DihedralGroup(3).real_elements();
  for (const Mat4& A : els) CHECK(max_abs(pullback_tensor(A, Mat4::Identity()) - Mat4::Identity()) < 1e-14);
}
