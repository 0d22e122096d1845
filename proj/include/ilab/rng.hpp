#pragma once

#include "ilab/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ilab {

// mt19937_64 is fully specified by the standard; the distributions below are
// written out so that draws are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u;
    do u = uniform();
    while (u == 0.0);
    const double v = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u));
    spare_ = rad * std::sin(2 * std::numbers::pi * v);
    has_spare_ = true;
    return rad * std::cos(2 * std::numbers::pi * v);
  }

  Vec4 direction4() {
    Vec4 d;
    do d = Vec4(normal(), normal(), normal(), normal());
    while (d.norm() < 1e-8);
    return d.normalized();
  }

  Point4 point_in_shell(double rlo, double rhi) { return uniform(rlo, rhi) * direction4(); }

  Mat3 rotation() {
    const Vec4 q = direction4();
    return Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
  }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace ilab
