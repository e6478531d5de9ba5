#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "tgreg/vector_ops.hpp"

namespace tgreg {

// Every stopping rule carries a hard iteration cap.
struct MaxIter {
  int max_iters = 100;
};
// Morozov's discrepancy principle: stop at the first m with ||A x_m - b|| <= eta * delta.
struct Discrepancy {
  double delta = 0.0;
  double eta = 1.01;
  int max_iters = 1000;
};
// Run to the cap; used with snapshot capture.
struct Never {
  int max_iters = 100;
};

using StoppingRule = std::variant<MaxIter, Discrepancy, Never>;

// Throws ConfigError for a non-positive cap, delta <= 0 or eta <= 1.
void validate(const StoppingRule& rule);
int iteration_cap(const StoppingRule& rule);

// residual_norm <= eta * delta. Throws ConfigError when eta <= 1.
bool dp_should_stop(double residual_norm, double delta, double eta);

// Parameters of the modified discrepancy principle (gamma ladder).
struct MdpConfig {
  double delta_est = 0.0;  // estimate of the data-error norm
  int count = 4;           // number of gamma levels
  double spacing = 0.5;    // percentage points between levels
  double eta = 1.0;
};

void validate(const MdpConfig& cfg);

// gamma_1 = ceil(100 * delta_est / ||b_delta||) percent, gamma_{i+1} = gamma_i - spacing.
// Non-positive levels are dropped; throws ConfigError when none remain.
std::vector<double> mdp_thresholds(double delta_est, double b_noisy_norm, int count,
                                   double spacing);

struct Snapshot {
  double gamma = 0.0;              // percent level
  int m = 0;                       // first iteration meeting the level
  double rel_residual_pct = 0.0;   // 100 ||A x_m - b_delta|| / ||b_delta||
  std::optional<double> rel_error_pct;
  std::size_t sparsity = 0;        // exact zeros in x_m
  Vector x;
};

// Records, for each level, the first observed iterate whose relative residual
// percentage is <= eta * gamma. Observing never alters the caller's iterates.
class MdpCapture {
 public:
  // `levels` must be strictly decreasing.
  MdpCapture(std::vector<double> levels, double eta);

  void observe(int m, double rel_residual_pct, std::optional<double> rel_error_pct,
               std::size_t sparsity, ConstView x);

  bool complete() const { return next_ == levels_.size(); }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  std::vector<Snapshot> release() { return std::move(snapshots_); }

 private:
  std::vector<double> levels_;
  double eta_;
  std::size_t next_ = 0;
  std::vector<Snapshot> snapshots_;
};

// One element of an iteration stream, for offline capture.
struct StreamEntry {
  double rel_residual_pct = 0.0;
  std::optional<double> rel_error_pct;
  std::size_t sparsity = 0;
  Vector x;
};

// Offline form of MdpCapture: entry i of `stream` is iteration m = i.
std::vector<Snapshot> mdp_capture(const std::vector<StreamEntry>& stream,
                                  const std::vector<double>& levels, double eta);

struct SelectBase {};
struct SelectSparsestWithin {
  double delta_pct = 0.5;
};
using SelectPolicy = std::variant<SelectBase, SelectSparsestWithin>;

// Base = the highest-gamma snapshot. SparsestWithin picks the maximum sparsity
// among snapshots whose residual percentage is within delta_pct of the base's;
// ties go to the smaller m. Throws InvalidInput for an empty list.
const Snapshot& mdp_select(const std::vector<Snapshot>& snapshots, const SelectPolicy& policy);

}  // namespace tgreg
