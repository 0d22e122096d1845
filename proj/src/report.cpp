#include "ilab/report.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ilab {

namespace {

const char* kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::Within: return "within";
    case CheckKind::AtMost: return "at_most";
    case CheckKind::Range: return "range";
  }
  return "?";
}

CheckKind kind_from(const std::string& s) {
  if (s == "within") return CheckKind::Within;
  if (s == "range") return CheckKind::Range;
  return CheckKind::AtMost;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double unnum(const json& j) { return j.is_number() ? j.get<double>() : NAN; }

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

CheckRecord make(std::string name, std::string anchor, CheckKind kind, double value, double target, double tol) {
  CheckRecord c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.kind = kind;
  c.value = value;
  c.target = target;
  c.tolerance = tol;
  return c;
}

}  // namespace

CheckRecord check_within(std::string name, std::string anchor, double value, double target, double tol) {
  CheckRecord c = make(std::move(name), std::move(anchor), CheckKind::Within, value, target, tol);
  c.pass = std::abs(value - target) <= tol;
  return c;
}

CheckRecord check_at_most(std::string name, std::string anchor, double value, double bound) {
  CheckRecord c = make(std::move(name), std::move(anchor), CheckKind::AtMost, value, 0, bound);
  c.pass = value <= bound;
  return c;
}

CheckRecord check_range(std::string name, std::string anchor, double value, double lo, double hi) {
  CheckRecord c = make(std::move(name), std::move(anchor), CheckKind::Range, value, lo, hi);
  c.pass = value >= lo && value <= hi;
  return c;
}

Curve make_curve(std::string name, const std::vector<std::pair<double, double>>& samples, std::string abscissa) {
  Curve c;
  c.name = std::move(name);
  c.abscissa = std::move(abscissa);
  std::vector<std::pair<double, double>> good;
  for (const auto& [r, v] : samples) {
    c.radius.push_back(r);
    c.value.push_back(v);
    if (std::isfinite(r) && std::isfinite(v) && r > 0 && v > 0) good.push_back({r, v});
  }
  if (good.size() >= 2) {
    const DecayFit f = fit_power_law(good);
    c.exponent = f.exponent;
    c.intercept = f.intercept;
  }
  return c;
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string git_style_hash(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + '\0' + content;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw LabError(ErrorKind::IoError, "sha1 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string Report::config_hash() const { return git_style_hash(config.dump()); }

json Report::to_json() const {
  json j;
  j["suite"] = suite;
  j["config_hash"] = config_hash();
  j["seed"] = seed;
  j["config"] = config;
  j["pass"] = all_pass();
  json cs = json::array();
  for (const auto& c : checks) {
    json r;
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["kind"] = kind_name(c.kind);
    r["value"] = num(c.value);
    r["target"] = num(c.target);
    r["tolerance"] = num(c.tolerance);
    r["error_bar"] = num(c.error_bar);
    r["pass"] = c.pass;
    if (!c.note.empty()) r["note"] = c.note;
    cs.push_back(r);
  }
  j["checks"] = cs;
  json cv = json::array();
  for (const auto& c : curves) {
    json r;
    r["name"] = c.name;
    r["abscissa"] = c.abscissa;
    r["exponent"] = num(c.exponent);
    r["intercept"] = num(c.intercept);
    json pts = json::array();
    for (std::size_t i = 0; i < c.radius.size(); ++i) pts.push_back({num(c.radius[i]), num(c.value[i])});
    r["points"] = pts;
    cv.push_back(r);
  }
  j["curves"] = cv;
  if (!extra.empty()) j["details"] = extra;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

Report Report::from_json(const json& j) {
  Report r;
  try {
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("config")) r.config = j["config"];
    for (const auto& c : j.value("checks", json::array())) {
      CheckRecord k;
      k.name = c.at("name").get<std::string>();
      k.anchor = c.value("anchor", "");
      k.kind = kind_from(c.value("kind", "at_most"));
      k.value = unnum(c.at("value"));
      k.target = unnum(c.value("target", json(nullptr)));
      k.tolerance = unnum(c.value("tolerance", json(nullptr)));
      k.error_bar = unnum(c.value("error_bar", json(nullptr)));
      k.pass = c.value("pass", false);
      k.note = c.value("note", "");
      r.checks.push_back(k);
    }
    for (const auto& c : j.value("curves", json::array())) {
      Curve k;
      k.name = c.at("name").get<std::string>();
      k.abscissa = c.value("abscissa", "R");
      k.exponent = unnum(c.value("exponent", json(nullptr)));
      k.intercept = unnum(c.value("intercept", json(nullptr)));
      for (const auto& p : c.at("points")) {
        k.radius.push_back(unnum(p.at(0)));
        k.value.push_back(unnum(p.at(1)));
      }
      r.curves.push_back(k);
    }
    for (const auto& n : j.value("notes", json::array())) r.notes.push_back(n.get<std::string>());
    if (j.contains("details")) r.extra = j["details"];
  } catch (const json::exception& e) {
    throw LabError(ErrorKind::ConfigError, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

PlotManifest emit_plots(const Report& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw LabError(ErrorKind::IoError, "cannot create " + dir + ": " + ec.message());
  PlotManifest out;
  json files = json::array();
  for (const Curve& c : r.curves) {
    const std::string fname = safe_name(r.suite) + "__" + safe_name(c.name) + ".csv";
    std::ofstream f(fs::path(dir) / fname);
    if (!f) throw LabError(ErrorKind::IoError, "cannot write " + fname);
    f << "radius,value,fitted_model\n";
    json nan_rows = json::array();
    for (std::size_t i = 0; i < c.radius.size(); ++i) {
      const double fit = std::isfinite(c.exponent) ? c.fitted(c.radius[i]) : NAN;
      if (!std::isfinite(c.radius[i]) || !std::isfinite(c.value[i])) nan_rows.push_back(i);
      f << format_double(c.radius[i]) << ',' << format_double(c.value[i]) << ',' << format_double(fit) << '\n';
    }
    if (!f) throw LabError(ErrorKind::IoError, "write failed for " + fname);
    json e;
    e["curve"] = c.name;
    e["file"] = fname;
    e["abscissa"] = c.abscissa;
    e["rows"] = c.radius.size();
    e["exponent"] = num(c.exponent);
    e["nan_rows"] = nan_rows;
    files.push_back(e);
    out.files.push_back(fname);
  }
  if (r.curves.empty()) out.warnings.push_back("report '" + r.suite + "' has no curves; manifest only");
  out.manifest["suite"] = r.suite;
  out.manifest["config_hash"] = r.config_hash();
  out.manifest["files"] = files;
  out.manifest["warnings"] = out.warnings;
  std::ofstream m(fs::path(dir) / "manifest.json");
  if (!m) throw LabError(ErrorKind::IoError, "cannot write manifest.json");
  m << out.manifest.dump(2) << '\n';
  return out;
}

std::vector<double> parse_radii(const std::string& spec) {
  double lo = 0, hi = 0;
  int n = 0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &extra) != 3)
    throw LabError(ErrorKind::ConfigError, "radii must look like lo:hi:n, got '" + spec + "'");
  if (!(lo > 0) || !(hi > lo) || n < 2)
    throw LabError(ErrorKind::ConfigError, "radii need 0 < lo < hi and n >= 2, got '" + spec + "'");
  return geometric_grid(lo, hi, n);
}

Mat3 parse_gram(const std::string& csv) {
  std::vector<double> v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double x;
    const char* b = tok.data();
    while (*b == ' ') ++b;
    const auto res = std::from_chars(b, tok.data() + tok.size(), x);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      throw LabError(ErrorKind::ConfigError, "gram entry '" + tok + "' is not a number");
    v.push_back(x);
  }
  if (v.size() != 9) throw LabError(ErrorKind::ConfigError, "gram needs 9 entries, got " + std::to_string(v.size()));
  Mat3 Z;
  for (int i = 0; i < 9; ++i) Z(i / 3, i % 3) = v[i];
  if ((Z - Z.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, Z.cwiseAbs().maxCoeff()))
    throw LabError(ErrorKind::ConfigError, "gram matrix must be symmetric");
  const Eigen::SelfAdjointEigenSolver<Mat3> es(Z, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()[0] < -1e-12 * std::max(1.0, es.eigenvalues()[2]))
    throw LabError(ErrorKind::ConfigError, "gram matrix must be positive semidefinite");
  return Z;
}

}  // namespace ilab
