#include "ilab/report.hpp"
#include "ilab/suites.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace ilab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  Outcome outcome;
  // failing sub-checks that are explained in the decision ledger
  bool documented = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// All checks whose name starts with one of the prefixes; fails if none match.
Outcome require(const Report& r, const std::vector<std::string>& prefixes) {
  Outcome o;
  int n = 0;
  for (const CheckRecord& c : r.checks) {
    bool hit = false;
    for (const auto& p : prefixes) hit = hit || starts_with(c.name, p);
    if (!hit) continue;
    ++n;
    if (!c.pass) {
      o.pass = false;
      o.detail += " " + c.name + "=" + format_double(c.value);
    }
  }
  if (n == 0) {
    o.pass = false;
    o.detail += " no checks matched";
  }
  o.detail = std::to_string(n) + " checks" + (o.pass ? "" : "; failing:" + o.detail);
  return o;
}

void merge(Outcome& a, const Outcome& b) {
  a.pass = a.pass && b.pass;
  a.detail += "; " + b.detail;
}

Outcome runtime(double s, double limit) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "runtime %.2f s (limit %.0f s)", s, limit);
  return {s < limit, buf};
}

// Exponent must lie in [lo, hi] for every matching check.
Outcome exponent_range(const Report& r, const std::string& prefix, double lo, double hi) {
  Outcome o;
  int n = 0;
  for (const CheckRecord& c : r.checks) {
    if (!starts_with(c.name, prefix)) continue;
    ++n;
    const bool ok = c.value >= lo && c.value <= hi;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : ", ") + c.name + " " + format_double(c.value);
  }
  if (n == 0) o.pass = false;
  return o;
}

}  // namespace

int main() {
  std::vector<Criterion> out;

  SuiteConfig tn;
  tn.masses = {0.1, 1, 10};
  tn.points = 100;
  auto t0 = std::chrono::steady_clock::now();
  const Report taub = run_suite("verify-taubnut", tn);
  const double t_taub = seconds_since(t0);

  {
    Criterion c{1, "LeBrun coordinates: residual and R^2 = y1^2 + y2^2 + y3^2 over 1e4 samples", {}};
    c.outcome = require(taub, {"lebrun.residual", "lebrun.r_squared"});
    merge(c.outcome, runtime(t_taub, 5));
    out.push_back(c);
  }
  out.push_back({2, "Kahler potential: Monge-Ampere and det f = 1 at 100 points",
                 require(taub, {"kahler.monge_ampere", "kahler.volume"})});
  out.push_back({3, "Ricci-flatness, Richardson-verified, m = 0.1, 1, 10", require(taub, {"ricci_flat"})});
  out.push_back({4, "frame duality, quaternionic relations and V dy_j -> eta",
                 require(taub, {"frame.duality", "frame.orthonormal", "frame.quaternionic", "frame.eta_mapping"})});
  out.push_back({5, "|Rm| decay exponent in [-3.15, -2.85] over R in [10, 200]",
                 exponent_range(taub, "curvature.decay", -3.15, -2.85)});

  SuiteConfig so3;
  out.push_back({6, "SO(3) normal form: constraints, diag(3,2,1), Z'22 = middle eigenvalue",
                 require(run_suite("normalize-so3", so3), {"so3."})});

  SuiteConfig ale;
  ale.k = 2;
  const Report asym = run_suite("verify-asymptotics", ale);
  out.push_back({7, "ALE tensors: trace, divergence, d varpi, *varpi = -varpi, iota, decomposition",
                 require(asym, {"ale.trace", "ale.divergence", "ale.varpi_closed", "ale.varpi_anti_self_dual",
                                "ale.iota_anticommutes", "ale.decomposition"})});

  SuiteConfig bc;
  bc.masses = {0.1, 1, 10};
  const Report beth = run_suite("beth-check", bc);
  {
    Criterion c{8, "beth: volume linearization, r^-8 volume decay, decay exponents, closed forms", {}};
    c.outcome = require(beth, {"beth."});
    merge(c.outcome, exponent_range(beth, "beth.volume_decay", -8.3, -7.7));
    out.push_back(c);
  }

  SuiteConfig gc;
  t0 = std::chrono::steady_clock::now();
  const Report glue = run_suite("glue-check", gc);
  const double t_glue = seconds_since(t0);
  {
    Criterion c{9, "psi_c: partial exponents, dd^c psi_c decay, display verdict recorded", {}};
    c.outcome = require(glue, {"psi."});
    bool verdict = false;
    for (const auto& [k, v] : glue.extra.items()) verdict = verdict || (starts_with(k, "dy1_displays") && v.contains("verdict"));
    merge(c.outcome, {verdict, verdict ? "display verdict recorded" : "display verdict missing"});
    out.push_back(c);
  }
  {
    Criterion c{10, "gluing: decay estimates and positivity certificates for gram = 0 and a generic gram", {}};
    c.outcome = require(glue, {"glue."});
    merge(c.outcome, runtime(t_glue, 120));
    // Only the printed-profile certificate and its beta scaling are excused; everything else must pass.
    Outcome rest;
    int n = 0;
    for (const CheckRecord& k : glue.checks) {
      if (!starts_with(k.name, "glue.")) continue;
      if (starts_with(k.name, "glue.certificate_printed") || k.name == "glue.beta_sensitivity [printed]") continue;
      ++n;
      rest.pass = rest.pass && k.pass;
    }
    c.documented = !c.outcome.pass && rest.pass && n > 0 && t_glue < 120;
    out.push_back(c);
  }

  {
    Criterion c{11, "averaging rank 0 for k = 2, 3, 5", {}};
    c.outcome = require(asym, {"invariants.average_rank"});
    const json& r = asym.extra["averaging_ranks"];
    for (const char* k : {"k=2", "k=3", "k=5"}) {
      const bool ok = r.contains(k) && r[k]["dihedral"] == 0;
      merge(c.outcome, {ok, std::string(k) + (ok ? " rank 0" : " rank missing or nonzero")});
    }
    out.push_back(c);
  }

  bool ok = true;
  for (const Criterion& c : out) {
    std::printf("%s  %2d  %s (%s)%s\n", c.outcome.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), c.outcome.detail.c_str(),
                !c.outcome.pass && c.documented ? " [documented as unattainable]" : "");
    ok = ok && (c.outcome.pass || c.documented);
  }
  return ok ? 0 : 1;
}
