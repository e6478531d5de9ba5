#include <cmath>
#include <string>

#include "tgreg/errors.hpp"
#include "tgreg/linops.hpp"
#include "tgreg_cli/commands.hpp"

namespace tgreg::cli {
namespace {

std::size_t resolve_k(std::size_t k, std::size_t n) {
  return k > 0 ? k : static_cast<std::size_t>(std::ceil(static_cast<double>(n) / 10.0));
}

double squared_norm(const LinearOperator& op) {
  const double s = operator_norm_estimate(op, 2000, 1e-12, 0);
  return s * s;
}

}  // namespace

DeblurSpec problem_spec(const RunConfig& cfg) {
  DeblurSpec spec;
  spec.side = cfg.side;
  spec.sigma = cfg.sigma;
  spec.band = cfg.band;
  spec.image = cfg.image == "dense" ? ImageKind::kDense : ImageKind::kSparse;
  spec.source_count = cfg.source_count;
  spec.seed = cfg.seed;
  spec.rho = cfg.rho;
  return spec;
}

TruncationRule make_rule(const RunConfig& cfg, std::size_t n) {
  return parse_rule_token(cfg.rule, cfg, n);
}

TruncationRule parse_rule_token(const std::string& token, const RunConfig& cfg, std::size_t n) {
  auto suffix_value = [&](const std::string& prefix, double fallback) {
    if (token.size() == prefix.size()) return fallback;
    const std::string tail = token.substr(prefix.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tail.size()) throw ConfigError("compare_rules", "bad rule token '" + token + "'");
    return v;
  };
  auto starts = [&](const char* p) { return token.rfind(p, 0) == 0; };

  if (token == "none") return NoTruncation{};
  if (starts("lambda")) return FixedLambda{suffix_value("lambda", cfg.lambda)};
  if (starts("alpha")) return AlphaPercent{suffix_value("alpha", cfg.alpha)};
  if (starts("topk")) {
    const double k = suffix_value("topk", static_cast<double>(cfg.k));
    return TopK{resolve_k(static_cast<std::size_t>(k), n)};
  }
  if (token == "mincombo") return MinCombo{resolve_k(cfg.k, n), cfg.alpha};
  if (token == "maxcombo") return MaxCombo{resolve_k(cfg.k, n), cfg.alpha};
  throw ConfigError("rule", "unknown truncation rule '" + token + "'");
}

StoppingRule make_stopping(const RunConfig& cfg, double noise_delta) {
  if (cfg.stop == "dp") return Discrepancy{cfg.delta > 0.0 ? cfg.delta : noise_delta, cfg.eta, cfg.max_iters};
  if (cfg.stop == "never") return Never{cfg.max_iters};
  return MaxIter{cfg.max_iters};
}

RunReport run_method(const std::string& method, const DeblurProblem& problem,
                     const TruncationRule& rule, const RunConfig& cfg, const RunOptions& opts) {
  const auto& op = problem.op;
  const auto& b = problem.b_noisy;
  if (method == "tg") {
    StepRule step = ExactLineSearch{};
    if (cfg.step == "fixed") step = FixedStep{cfg.tau > 0.0 ? cfg.tau : 1.0 / squared_norm(op)};
    return tg_descent(op, b, rule, step, opts);
  }
  if (method == "landweber") {
    const double tau = cfg.tau > 0.0 ? cfg.tau : 1.0 / squared_norm(op);
    return tg_descent(op, b, rule, FixedStep{tau}, opts);
  }
  if (method == "nu") return nu_descent(op, b, cfg.nu, rule, opts, cfg.spectral_bound);
  const double tau = cfg.tau > 0.0 ? cfg.tau : 0.5 / squared_norm(op);
  if (method == "ista") return ista(op, b, cfg.ista_lambda, tau, opts, rule);
  if (method == "fista") return fista(op, b, cfg.ista_lambda, tau, opts, rule);
  throw ConfigError("method", "unknown method '" + method + "'");
}

}  // namespace tgreg::cli
