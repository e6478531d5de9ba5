#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tgreg {

// Flat run configuration. Every field's default is the value below; the same
// names are used as `key = value` lines in config files and as --key flags.
struct RunConfig {
  // problem
  std::size_t side = 64;
  double sigma = 4.0;
  std::size_t band = 16;
  std::string image = "sparse";  // sparse | dense
  std::size_t source_count = 20;
  std::uint64_t seed = 1;
  double rho = 0.1;

  // solver
  std::string method = "tg";  // tg | landweber | nu | ista | fista
  std::string rule = "none";  // none | lambda | alpha | topk | mincombo | maxcombo
  double lambda = 1e-3;
  double alpha = 10.0;
  std::size_t k = 0;          // 0: ten percent of the pixel count
  double nu = 1.0;
  double spectral_bound = 0.8;
  std::string step = "exact";  // exact | fixed
  double tau = 0.0;            // 0: derived from the operator norm
  double xmin = 0.0;           // -inf disables the bound
  double ista_lambda = 1e-3;
  double sparsity_tol = 0.0;

  // stopping
  std::string stop = "dp";  // dp | maxiter | never
  double delta = 0.0;       // 0: the realized noise norm
  double eta = 1.01;
  int max_iters = 500;
  double delta_est = 0.0;   // 0: the realized noise norm
  int mdp_count = 4;
  double mdp_spacing = 0.5;
  double mdp_eta = 1.0;
  std::string select = "none";  // none | base | sparsest
  double select_within = 0.5;

  // compare grid
  std::string compare_methods = "ista,fista,tg";
  std::string compare_rules = "none,lambda,alpha10,alpha40,topk,mincombo,maxcombo";
  std::string compare_constraints = "0";
  int threads = 0;  // 0: hardware concurrency

  // outputs
  std::string out_image;
  std::string out_csv;
  std::string out_dir;
};

// Names of every accepted key, in declaration order.
const std::vector<std::string>& config_keys();

// Assigns one key from its textual value. Throws ConfigError naming the key
// for unknown keys or unparsable values.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

// Cross-field and range checks (alpha in [0, 100], eta > 1 for dp, ...).
void validate_config(const RunConfig& cfg);

// Parses `key = value` lines; '#' starts a comment. Duplicate keys: the last
// occurrence wins and a warning is appended to `warnings` when given.
// The result is validated.
RunConfig parse_config(std::string_view text, std::vector<std::string>* warnings = nullptr);

// Comma-separated list helper used by the compare grid.
std::vector<std::string> split_list(std::string_view text);

}  // namespace tgreg
