#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tgreg/config.hpp"
#include "tgreg/problems.hpp"
#include "tgreg/solvers.hpp"

namespace tgreg::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kSelftestFailed = 1,
  kConfigError = 2,
  kNumericFailure = 3,
};

struct OutputOptions {
  bool json_summary = false;  // one JSON object per run instead of the text line
};

struct SelftestOptions {
  bool inject_adjoint_fault = false;  // test hook: corrupt one operator's adjoint
};

// Solver dispatch shared by the commands.
DeblurSpec problem_spec(const RunConfig& cfg);
TruncationRule make_rule(const RunConfig& cfg, std::size_t n);
StoppingRule make_stopping(const RunConfig& cfg, double noise_delta);
RunReport run_method(const std::string& method, const DeblurProblem& problem,
                     const TruncationRule& rule, const RunConfig& cfg, const RunOptions& opts);

// Parses a compare-grid rule token: none, lambda[<v>], alpha[<v>], topk[<k>],
// mincombo, maxcombo. Missing values fall back to the config.
TruncationRule parse_rule_token(const std::string& token, const RunConfig& cfg, std::size_t n);

int cmd_deblur(const RunConfig& cfg, const OutputOptions& out_opts, std::ostream& out);
int cmd_compare(const RunConfig& cfg, const OutputOptions& out_opts, std::ostream& out);
int cmd_mdp(const RunConfig& cfg, const OutputOptions& out_opts, std::ostream& out);
int cmd_selftest(const SelftestOptions& opts, std::ostream& out);

// CSV produced by cmd_compare, exposed for tests.
std::string compare_csv(const RunConfig& cfg);

// Full command-line entry point; never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tgreg::cli
