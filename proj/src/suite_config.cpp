#include "ilab/suites.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ilab {

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw LabError(ErrorKind::ConfigError, "key '" + key + "': " + why);
}

double as_number(const std::string& key, const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = v.get<std::string>();
      const double x = std::stod(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  fail(key, "expected a number, got " + v.dump());
}

std::vector<double> as_number_list(const std::string& key, const json& v) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(as_number(key, x));
  } else if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(as_number(key, json(tok)));
  } else {
    out.push_back(as_number(key, v));
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

Mat3 as_gram(const std::string& key, const json& v) {
  try {
    if (v.is_string()) return parse_gram(v.get<std::string>());
    std::string csv;
    for (const auto& x : v) csv += (csv.empty() ? "" : ",") + format_double(as_number(key, x));
    return parse_gram(csv);
  } catch (const LabError& e) {
    fail(key, e.detail());
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<std::string>& decay_fields() {
  static const std::vector<std::string> f = {"rm_taubnut", "h_zeta",        "theta_f",  "psi_c",
                                             "volume_defect", "fb_minus_f", "ddc_phi_b"};
  return f;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s = {"verify-taubnut", "verify-asymptotics", "normalize-so3",
                                             "beth-check",     "glue-check",         "fit-decay"};
  return s;
}

void apply_config_value(SuiteConfig& cfg, const std::string& key, const json& v) {
  if (key == "m" || key == "masses") {
    cfg.masses = as_number_list(key, v);
    for (double m : cfg.masses)
      if (!(m > 0)) fail(key, "masses must be positive");
  } else if (key == "gram") {
    cfg.grams.clear();
    if (v.is_array() && !v.empty() && v[0].is_array()) {
      for (const auto& g : v) cfg.grams.push_back(as_gram(key, g));
    } else if (v.is_array() && !v.empty() && v[0].is_string()) {
      for (const auto& g : v) cfg.grams.push_back(as_gram(key, g));
    } else {
      cfg.grams.push_back(as_gram(key, v));
    }
  } else if (key == "k") {
    const double k = as_number(key, v);
    if (k != std::floor(k) || k < 2 || k > 64) fail(key, "dihedral order must be an integer in [2, 64]");
    cfg.k = static_cast<int>(k);
  } else if (key == "radii") {
    try {
      cfg.radii = v.is_string() ? parse_radii(v.get<std::string>()) : as_number_list(key, v);
    } catch (const LabError& e) {
      fail(key, e.detail());
    }
    for (double r : cfg.radii)
      if (!(r > 0)) fail(key, "radii must be positive");
  } else if (key == "seed") {
    const double s = as_number(key, v);
    if (s < 0 || s != std::floor(s)) fail(key, "seed must be a nonnegative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "tol_scale" || key == "tol-scale") {
    cfg.tol_scale = as_number(key, v);
    if (!(cfg.tol_scale > 0)) fail(key, "must be positive");
  } else if (key == "points") {
    const double n = as_number(key, v);
    if (n < 1 || n > 1e6 || n != std::floor(n)) fail(key, "must be an integer in [1, 1e6]");
    cfg.points = static_cast<int>(n);
  } else if (key == "lebrun_samples") {
    const double n = as_number(key, v);
    if (n < 1 || n > 1e8 || n != std::floor(n)) fail(key, "must be an integer in [1, 1e8]");
    cfg.lebrun_samples = static_cast<int>(n);
  } else if (key == "field") {
    if (!v.is_string()) fail(key, "expected a string");
    const std::string f = v.get<std::string>();
    const auto& all = decay_fields();
    if (std::find(all.begin(), all.end(), f) == all.end()) fail(key, "unknown field '" + f + "'");
    cfg.field = f;
  } else if (key == "a") {
    const double a = as_number(key, v);
    if (!(a >= 0)) fail(key, "must be nonnegative");
    cfg.a = a;
  } else if (key == "kappa") {
    const double k = as_number(key, v);
    if (!(k > 0)) fail(key, "must be positive");
    cfg.kappa = k;
  } else if (key == "fd_step") {
    const double h = as_number(key, v);
    if (!(h > 0 && h < 0.1)) fail(key, "must lie in (0, 0.1)");
    cfg.fd_step = h;
  } else {
    fail(key, "unknown key");
  }
}

SuiteConfig parse_config(const std::string& text, const std::string& origin) {
  SuiteConfig cfg;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      throw LabError(ErrorKind::ConfigError, origin + ": " + e.what());
    }
    for (const auto& [key, value] : j.items()) {
      try {
        apply_config_value(cfg, key, value);
      } catch (const LabError& e) {
        throw LabError(ErrorKind::ConfigError, origin + ": " + e.detail());
      }
    }
    return cfg;
  }
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw LabError(ErrorKind::ConfigError, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    try {
      apply_config_value(cfg, key, value);
    } catch (const LabError& e) {
      throw LabError(ErrorKind::ConfigError, where + ": " + e.detail());
    }
  }
  return cfg;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LabError(ErrorKind::ConfigError, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

json SuiteConfig::to_json() const {
  json j;
  j["masses"] = masses;
  json g = json::array();
  for (const Mat3& Z : grams) {
    json row = json::array();
    for (int i = 0; i < 9; ++i) row.push_back(Z(i / 3, i % 3));
    g.push_back(row);
  }
  j["grams"] = g;
  j["k"] = k;
  j["radii"] = radii;
  j["seed"] = seed;
  j["tol_scale"] = tol_scale;
  j["points"] = points;
  j["lebrun_samples"] = lebrun_samples;
  j["field"] = field;
  j["a"] = a ? json(*a) : json(nullptr);
  j["kappa"] = kappa ? json(*kappa) : json(nullptr);
  j["fd_step"] = fd_step ? json(*fd_step) : json(nullptr);
  return j;
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "verify-taubnut") return run_verify_taubnut(cfg);
  if (name == "verify-asymptotics") return run_verify_asymptotics(cfg);
  if (name == "normalize-so3") return run_normalize_so3(cfg);
  if (name == "beth-check") return run_beth_check(cfg);
  if (name == "glue-check") return run_glue_check(cfg);
  if (name == "fit-decay") return run_fit_decay(cfg);
  throw LabError(ErrorKind::ConfigError, "unknown suite '" + name + "'");
}

}  // namespace ilab
