#include "ilab/report.hpp"
#include "ilab/suites.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

namespace {

using namespace ilab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct SuiteFlags {
  std::optional<std::string> config, m, gram, k, radii, seed, tol_scale, points, field, a, kappa, fd_step;
  std::string out;
};

void add_common(CLI::App* sub, SuiteFlags& f) {
  sub->add_option("--config", f.config, "JSON or key = value file; flags override it");
  sub->add_option("--m", f.m, "mass parameter(s), comma-separated");
  sub->add_option("--gram", f.gram, "gram matrix, 9 comma-separated entries, row-major");
  sub->add_option("--k", f.k, "order of the binary dihedral group D_k");
  sub->add_option("--radii", f.radii, "geometric grid lo:hi:n");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--tol-scale", f.tol_scale, "multiplier for absolute tolerances");
  sub->add_option("--points", f.points, "random sample points per check");
  sub->add_option("--fd-step", f.fd_step, "relative finite-difference step");
  sub->add_option("--out", f.out, "directory for the report JSON and curve CSVs");
}

SuiteConfig build_config(const SuiteFlags& f) {
  SuiteConfig cfg = f.config ? load_config(*f.config) : SuiteConfig{};
  const std::pair<const char*, const std::optional<std::string>*> keys[] = {
      {"m", &f.m},         {"gram", &f.gram},     {"k", &f.k},         {"radii", &f.radii},
      {"seed", &f.seed},   {"tol_scale", &f.tol_scale}, {"points", &f.points}, {"field", &f.field},
      {"a", &f.a},         {"kappa", &f.kappa},   {"fd_step", &f.fd_step}};
  for (const auto& [key, value] : keys) {
    if (*value) apply_config_value(cfg, key, json(**value));
  }
  return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw LabError(ErrorKind::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw LabError(ErrorKind::IoError, "write failed for " + path.string());
}

int emit(const Report& rep, const std::string& out) {
  const std::string doc = rep.to_json().dump(2) + "\n";
  if (out.empty()) {
    std::cout << doc;
  } else {
    std::filesystem::create_directories(out);
    write_file(std::filesystem::path(out) / (rep.suite + ".json"), doc);
    const PlotManifest pm = emit_plots(rep, out);
    for (const auto& w : pm.warnings) std::cerr << "warning: " << w << "\n";
  }
  int failed = 0;
  for (const auto& c : rep.checks) {
    if (!c.pass) {
      ++failed;
      std::cerr << "FAIL " << c.name << ": value " << format_double(c.value) << "\n";
    }
  }
  std::cerr << rep.suite << ": " << rep.checks.size() - failed << "/" << rep.checks.size() << " checks pass\n";
  return failed == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification suites for Taub-NUT, ALE asymptotics and the gluing construction"};
  app.require_subcommand(1);

  std::map<std::string, SuiteFlags> flags;
  std::map<std::string, CLI::App*> subs;
  const std::map<std::string, std::string> blurbs = {
      {"verify-taubnut", "LeBrun coordinates, Kahler potential, Ricci-flatness, frames, curvature decay"},
      {"verify-asymptotics", "h_zeta, varpi_1, iota_1 and the D_k averaging of degree-2 harmonics"},
      {"normalize-so3", "SO(3) normal form of gram matrices"},
      {"beth-check", "the diffeomorphism beth and the pulled-back Taub-NUT data"},
      {"glue-check", "psi_c, the glued potential, decay estimates and positivity certificates"},
      {"fit-decay", "power-law fit of one field over a radial grid"},
  };
  for (const auto& name : suite_names()) {
    const auto it = blurbs.find(name);
    CLI::App* sub = app.add_subcommand(name, it == blurbs.end() ? "" : it->second);
    SuiteFlags& f = flags[name];
    add_common(sub, f);
    if (name == "fit-decay") sub->add_option("--field", f.field, "quantity to fit")->required();
    if (name == "beth-check") {
      sub->add_option("--a", f.a, "beth coefficient (default from the normalized gram)");
      sub->add_option("--kappa", f.kappa, "beth regularizer (default max(1, 80a))");
    }
    subs[name] = sub;
  }
  std::string report_path, plot_dir;
  CLI::App* plots = app.add_subcommand("emit-plots", "write curve CSVs and a manifest from a report JSON");
  plots->add_option("--report", report_path, "report JSON produced by a suite")->required();
  plots->add_option("--out", plot_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (plots->parsed()) {
      std::ifstream in(report_path);
      if (!in) throw LabError(ErrorKind::ConfigError, "cannot read report " + report_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw LabError(ErrorKind::ConfigError, report_path + ": " + e.what());
      }
      const PlotManifest pm = emit_plots(Report::from_json(j), plot_dir);
      for (const auto& w : pm.warnings) std::cerr << "warning: " << w << "\n";
      std::cerr << pm.files.size() << " curve files written to " << plot_dir << "\n";
      return kExitPass;
    }
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      const SuiteConfig cfg = build_config(flags[name]);
      return emit(run_suite(name, cfg), flags[name].out);
    }
  } catch (const LabError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigError ? kExitUsage : kExitFail;
  }
  std::cerr << app.help();
  return kExitUsage;
}
