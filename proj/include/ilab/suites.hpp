#pragma once

#include "ilab/report.hpp"
#include "ilab/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ilab {

struct SuiteConfig {
  std::vector<double> masses = {1.0};
  std::vector<Mat3> grams;           // empty: suite defaults
  int k = 2;                         // binary dihedral group D_k
  std::vector<double> radii;         // empty: suite defaults
  std::uint64_t seed = 1;
  double tol_scale = 1.0;            // multiplies absolute tolerances, never exponent bounds
  int points = 50;
  int lebrun_samples = 10000;
  std::string field = "rm_taubnut";  // fit-decay
  std::optional<double> a, kappa;    // beth-check overrides
  std::optional<double> fd_step;

  json to_json() const;
};

// JSON object, or one "key = value" per line with # comments.
SuiteConfig parse_config(const std::string& text, const std::string& origin = "config");
SuiteConfig load_config(const std::string& path);
// Applies one key to cfg; throws ConfigError naming the key.
void apply_config_value(SuiteConfig& cfg, const std::string& key, const json& value);

const std::vector<std::string>& suite_names();
const std::vector<std::string>& decay_fields();

Report run_verify_taubnut(const SuiteConfig& cfg);
Report run_verify_asymptotics(const SuiteConfig& cfg);
Report run_normalize_so3(const SuiteConfig& cfg);
Report run_beth_check(const SuiteConfig& cfg);
Report run_glue_check(const SuiteConfig& cfg);
Report run_fit_decay(const SuiteConfig& cfg);
Report run_psi_check(const SuiteConfig& cfg);

// Dispatch by subcommand name; ConfigError for an unknown name.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace ilab
