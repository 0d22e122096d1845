#pragma once

#include "ilab/calculus.hpp"
#include "ilab/types.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ilab {

using json = nlohmann::ordered_json;

enum class CheckKind {
  Within,  // |value - target| <= tolerance
  AtMost,  // value <= tolerance (exponents, residual norms)
  Range,   // target <= value <= tolerance
};

struct CheckRecord {
  std::string name;
  std::string anchor;  // the statement being checked
  CheckKind kind = CheckKind::AtMost;
  double value = 0;
  double target = 0;
  double tolerance = 0;
  double error_bar = 0;
  bool pass = false;
  std::string note;
};

CheckRecord check_within(std::string name, std::string anchor, double value, double target, double tol);
CheckRecord check_at_most(std::string name, std::string anchor, double value, double bound);
CheckRecord check_range(std::string name, std::string anchor, double value, double lo, double hi);

struct Curve {
  std::string name;
  std::string abscissa = "R";
  std::vector<double> radius;
  std::vector<double> value;
  double exponent = NAN;
  double intercept = NAN;  // log of the prefactor

  double fitted(double r) const { return std::exp(intercept) * std::pow(r, exponent); }
};

// Least-squares fit over the finite, positive samples.
Curve make_curve(std::string name, const std::vector<std::pair<double, double>>& samples, std::string abscissa = "R");

struct Report {
  std::string suite;
  json config = json::object();
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::vector<Curve> curves;
  std::vector<std::string> notes;
  json extra = json::object();

  CheckRecord& add(CheckRecord c) { return checks.emplace_back(std::move(c)); }
  bool all_pass() const;
  std::string config_hash() const;
  json to_json() const;
  static Report from_json(const json& j);
};

// SHA-1 of "blob <len>\0<config dump>", as git hashes a file with that content.
std::string git_style_hash(const std::string& content);

struct PlotManifest {
  json manifest;
  std::vector<std::string> files;
  std::vector<std::string> warnings;
};

// One CSV per curve (radius,value,fitted_model) and manifest.json in dir.
PlotManifest emit_plots(const Report& r, const std::string& dir);

// Text helpers shared by the CLI and the config loader.
std::vector<double> parse_radii(const std::string& spec);  // lo:hi:n, geometric
Mat3 parse_gram(const std::string& csv);                   // 9 entries, row-major
std::string format_double(double v);

}  // namespace ilab
