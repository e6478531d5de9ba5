#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "tgreg/vector_ops.hpp"

namespace tgreg {

// Gradient truncation strategies. Each maps a gradient d to a masked copy h
// with h_i in {0, d_i}.
struct NoTruncation {};
// Keep d_i iff |d_i| > lambda.
struct FixedLambda {
  double lambda = 0.0;
};
// Per-iteration threshold lambda_m = (alpha / 100) * ||d||_inf.
struct AlphaPercent {
  double alpha = 0.0;
};
// Keep the k entries of largest magnitude.
struct TopK {
  std::size_t k = 0;
};
// Sparser of the AlphaPercent and TopK candidates.
struct MinCombo {
  std::size_t k = 0;
  double alpha = 0.0;
};
// Denser of the AlphaPercent and TopK candidates.
struct MaxCombo {
  std::size_t k = 0;
  double alpha = 0.0;
};

using TruncationRule = std::variant<NoTruncation, FixedLambda, AlphaPercent, TopK, MinCombo, MaxCombo>;

// Throws InvalidInput when lambda < 0 or alpha is outside [0, 100].
void validate(const TruncationRule& rule);

// Short label such as "alpha(40)" for reports.
std::string describe(const TruncationRule& rule);

Vector truncate_fixed(ConstView d, double lambda);
double lambda_from_alpha(ConstView d, double alpha);

// Ties in magnitude are broken towards the lower index.
Vector truncate_topk(ConstView d, std::size_t k);

Vector truncate_min_combo(ConstView d, std::size_t k, double alpha);
Vector truncate_max_combo(ConstView d, std::size_t k, double alpha);

Vector apply_rule(ConstView d, const TruncationRule& rule);

// Shrinkage S_theta(x)_i = sgn(x_i) max(|x_i| - theta, 0).
Vector soft_threshold(ConstView x, double theta);

}  // namespace tgreg
