#include "tgreg/stopping.hpp"

#include <cmath>
#include <string>

#include "tgreg/errors.hpp"

namespace tgreg {

void validate(const StoppingRule& rule) {
  if (iteration_cap(rule) <= 0) throw ConfigError("max_iters", "iteration cap must be positive");
  if (const auto* dp = std::get_if<Discrepancy>(&rule)) {
    if (!(dp->delta > 0.0)) throw ConfigError("delta", "discrepancy delta must be positive");
    if (!(dp->eta > 1.0)) throw ConfigError("eta", "discrepancy principle requires eta > 1");
  }
}

int iteration_cap(const StoppingRule& rule) {
  return std::visit([](const auto& r) { return r.max_iters; }, rule);
}

bool dp_should_stop(double residual_norm, double delta, double eta) {
  if (!(eta > 1.0)) throw ConfigError("eta", "discrepancy principle requires eta > 1");
  return residual_norm <= eta * delta;
}

void validate(const MdpConfig& cfg) {
  if (!(cfg.delta_est > 0.0)) throw ConfigError("delta_est", "must be positive");
  if (cfg.count < 1) throw ConfigError("mdp_count", "must be >= 1");
  if (!(cfg.spacing > 0.0)) throw ConfigError("mdp_spacing", "must be positive");
  if (!(cfg.eta >= 1.0)) throw ConfigError("mdp_eta", "must be >= 1");
}

std::vector<double> mdp_thresholds(double delta_est, double b_noisy_norm, int count,
                                   double spacing) {
  if (!(b_noisy_norm > 0.0)) throw InvalidInput("mdp_thresholds: data norm must be positive");
  if (!(delta_est > 0.0)) throw ConfigError("delta_est", "must be positive");
  if (count < 1) throw ConfigError("mdp_count", "must be >= 1");
  if (!(spacing > 0.0)) throw ConfigError("mdp_spacing", "must be positive");

  const double first = std::ceil(100.0 * delta_est / b_noisy_norm);
  std::vector<double> levels;
  for (int i = 0; i < count; ++i) {
    const double g = first - static_cast<double>(i) * spacing;
    if (g > 0.0) levels.push_back(g);
  }
  if (levels.empty()) throw ConfigError("mdp_spacing", "all gamma levels are non-positive");
  return levels;
}

MdpCapture::MdpCapture(std::vector<double> levels, double eta)
    : levels_(std::move(levels)), eta_(eta) {
  for (std::size_t i = 1; i < levels_.size(); ++i)
    if (!(levels_[i] < levels_[i - 1]))
      throw InvalidInput("MdpCapture: levels must be strictly decreasing");
}

void MdpCapture::observe(int m, double rel_residual_pct, std::optional<double> rel_error_pct,
                         std::size_t sparsity, ConstView x) {
  // Levels decrease, so any level crossed now implies all larger ones are too.
  while (next_ < levels_.size() && rel_residual_pct <= eta_ * levels_[next_]) {
    snapshots_.push_back(Snapshot{levels_[next_], m, rel_residual_pct, rel_error_pct, sparsity,
                                  Vector(x.begin(), x.end())});
    ++next_;
  }
}

std::vector<Snapshot> mdp_capture(const std::vector<StreamEntry>& stream,
                                  const std::vector<double>& levels, double eta) {
  MdpCapture capture(levels, eta);
  for (std::size_t i = 0; i < stream.size() && !capture.complete(); ++i) {
    const auto& e = stream[i];
    capture.observe(static_cast<int>(i), e.rel_residual_pct, e.rel_error_pct, e.sparsity, e.x);
  }
  return capture.release();
}

const Snapshot& mdp_select(const std::vector<Snapshot>& snapshots, const SelectPolicy& policy) {
  if (snapshots.empty()) throw InvalidInput("mdp_select: no snapshots");

  std::size_t base = 0;
  for (std::size_t i = 1; i < snapshots.size(); ++i)
    if (snapshots[i].gamma > snapshots[base].gamma) base = i;
  if (std::holds_alternative<SelectBase>(policy)) return snapshots[base];

  const double within = std::get<SelectSparsestWithin>(policy).delta_pct;
  const double ref = snapshots[base].rel_residual_pct;
  std::size_t best = base;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    const auto& s = snapshots[i];
    if (std::abs(s.rel_residual_pct - ref) > within) continue;
    const auto& b = snapshots[best];
    if (s.sparsity > b.sparsity || (s.sparsity == b.sparsity && s.m < b.m)) best = i;
  }
  return snapshots[best];
}

}  // namespace tgreg
