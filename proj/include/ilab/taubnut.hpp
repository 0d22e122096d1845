#pragma once

#include "ilab/calculus.hpp"
#include "ilab/types.hpp"

namespace ilab {

struct TaubNutCoords {
  double u = 0, v = 0;
  double y1 = 0, y2 = 0, y3 = 0;
  double R = 0;
  double V = 0;  // +inf at R = 0
  int iterations = 0;
};

// Relative residual of |z1| = e^{m(u^2-v^2)} u, |z2| = e^{m(v^2-u^2)} v.
double lebrun_residual(const Point4& p, double m, const TaubNutCoords& c);

// Unique nonnegative (u, v).  The two equations reduce to ab = |z1 z2|^2 with
// a = u^2, b = v^2, and 4 m y1 + asinh(y1 / |z1 z2|) = log(|z1| / |z2|).
TaubNutCoords solve_lebrun(const Point4& p, double m);

// Inverse chart: a point with prescribed (y1, y2, y3) and arg z1 = 0.
Point4 point_from_y(const Vec3& y, double m);

struct TaubNutFrame {
  std::array<Vec4, 4> e;       // e0..e3
  std::array<Vec4, 4> coframe;  // V^{-1/2} eta, V^{1/2} dy1, V^{1/2} dy2, V^{1/2} dy3
};

class TaubNut {
 public:
  explicit TaubNut(double m);
  double m() const { return m_; }

  TaubNutCoords coords(const Point4& p) const { return solve_lebrun(p, m_); }

  // phi_m = (u^2 + v^2 + m (u^4 + v^4)) / 4 and the equivalent (R + m (R^2 + y1^2)) / 2.
  double potential(const Point4& p) const;
  double potential_alt(const Point4& p) const;
  Vec4 potential_gradient(const Point4& p) const;

  // dy_j by implicit differentiation; dy1 = (e^{-4my1} d|z1|^2 - e^{4my1} d|z2|^2) / (2 (1 + 4mR)).
  std::array<Vec4, 3> dy(const Point4& p) const;
  std::array<Vec4, 3> dy(const Point4& p, const TaubNutCoords& c) const;
  Vec4 eta(const Point4& p) const;
  Mat4 metric(const Point4& p) const;

  // Generator of (e^{it} z1, e^{-it} z2) and the horizontal lift of d/dy2.
  static Vec4 xi(const Point4& p);
  Vec4 zeta_frame(const Point4& p) const;
  TaubNutFrame frames(const Point4& p) const;

  // f(J_j ., .) = omega_j^e.
  std::array<Mat4, 2> companion_structures(const Point4& p) const;

  double fibre_length(const Point4& p) const;

  // Coordinates w = (y1, y2, y3, t) with t = arg z1; singular on z1 = 0.
  // The metric there is well conditioned at large R, unlike the x-coordinates.
  Chart fibration_chart() const;
  // Rows dy1, dy2, dy3, dt at p.
  Mat4 fibration_coframe(const Point4& p) const;
  // f_m in the fibration chart, assembled from the pulled-back orthonormal coframe.
  Mat4 metric_in_chart(const Vec4& w) const;

 private:
  double m_;
};

}  // namespace ilab
