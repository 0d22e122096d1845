#pragma once

#include "ilab/parallel.hpp"
#include "ilab/report.hpp"
#include "ilab/suites.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace ilab::detail {

// Stencil for first- and second-derivative identities; the config may override the step.
inline Scheme fd_scheme(const SuiteConfig& cfg, double step) { return {cfg.fd_step.value_or(step), 4}; }

inline std::string tag(const std::string& name, double m) { return name + " [m=" + format_double(m) + "]"; }

// Evaluates fn on n indices in parallel and returns the values in index order.
template <class T, class F>
std::vector<T> collect(int n, F&& fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  parallel_for(n, [&](int i) { out[static_cast<std::size_t>(i)] = fn(i); });
  return out;
}

inline double max_of(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::isnan(x) || std::isnan(m) ? NAN : std::max(m, x);
  return m;
}

inline Report new_report(const std::string& suite, const SuiteConfig& cfg) {
  Report r;
  r.suite = suite;
  r.config = cfg.to_json();
  r.seed = cfg.seed;
  return r;
}

// Fits the curve and records an exponent check (value <= bound, or lo <= value <= hi).
inline void add_decay(Report& rep, Curve c, const std::string& check, const std::string& anchor, double bound,
                      double lo = -INFINITY) {
  CheckRecord rec = std::isfinite(lo) ? check_range(check, anchor, c.exponent, lo, bound)
                                      : check_at_most(check, anchor, c.exponent, bound);
  char buf[96];
  std::snprintf(buf, sizeof buf, " in [%.4g, %.4g], %zu samples", c.radius.front(), c.radius.back(), c.radius.size());
  rec.note = "decay fit over " + c.abscissa + buf;
  rep.add(std::move(rec));
  rep.curves.push_back(std::move(c));
}

}  // namespace ilab::detail

namespace ilab::detail {

// Decay curves shared by the suites and fit-decay.  Empty radii select defaults.
Curve rm_taubnut_curve(double m, std::vector<double> radii);
Curve frame_derivative_curve(double m, std::vector<double> radii);
Curve h_zeta_curve(const Mat3& Z, int k, std::vector<double> radii);
Curve theta_f_curve(double m, std::vector<double> radii);
Curve psi_c_curve(double m, std::vector<double> radii);
Curve volume_defect_curve(double a, double kappa, std::vector<double> radii);
Curve fb_minus_f_curve(double a, double kappa, double m, std::vector<double> radii);
Curve ddc_phi_b_curve(const Mat3& Zp, int k, double m, std::vector<double> radii);

// Generic ray used by every radial sweep.
Point4 ray_direction();
Mat3 default_gram();  // diag(3, 2, 1)

}  // namespace ilab::detail
