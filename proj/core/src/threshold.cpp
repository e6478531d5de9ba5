#include "tgreg/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tgreg/errors.hpp"

namespace tgreg {
namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw InvalidInput("truncation threshold lambda must be >= 0");
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 100.0))
    throw InvalidInput("truncation percentage alpha must lie in [0, 100]");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void validate(const TruncationRule& rule) {
  std::visit(Overloaded{
                 [](const NoTruncation&) {},
                 [](const FixedLambda& r) { check_lambda(r.lambda); },
                 [](const AlphaPercent& r) { check_alpha(r.alpha); },
                 [](const TopK&) {},
                 [](const MinCombo& r) { check_alpha(r.alpha); },
                 [](const MaxCombo& r) { check_alpha(r.alpha); },
             },
             rule);
}

std::string describe(const TruncationRule& rule) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const NoTruncation&) { os << "none"; },
                 [&](const FixedLambda& r) { os << "lambda(" << r.lambda << ")"; },
                 [&](const AlphaPercent& r) { os << "alpha(" << r.alpha << ")"; },
                 [&](const TopK& r) { os << "topk(" << r.k << ")"; },
                 [&](const MinCombo& r) { os << "mincombo(" << r.k << "," << r.alpha << ")"; },
                 [&](const MaxCombo& r) { os << "maxcombo(" << r.k << "," << r.alpha << ")"; },
             },
             rule);
  return os.str();
}

Vector truncate_fixed(ConstView d, double lambda) {
  check_lambda(lambda);
  Vector h(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (std::abs(d[i]) > lambda) h[i] = d[i];
  return h;
}

double lambda_from_alpha(ConstView d, double alpha) {
  check_alpha(alpha);
  return alpha / 100.0 * norm_inf(d);
}

Vector truncate_topk(ConstView d, std::size_t k) {
  const std::size_t n = d.size();
  if (k >= n) return Vector(d.begin(), d.end());
  Vector h(n, 0.0);
  if (k == 0) return h;

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Strict total order: larger magnitude first, then lower index.
  auto before = [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(d[a]);
    const double mb = std::abs(d[b]);
    return ma > mb || (ma == mb && a < b);
  };
  std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k - 1), idx.end(),
                   before);
  for (std::size_t j = 0; j < k; ++j) h[idx[j]] = d[idx[j]];
  return h;
}

Vector truncate_min_combo(ConstView d, std::size_t k, double alpha) {
  Vector by_lambda = truncate_fixed(d, lambda_from_alpha(d, alpha));
  Vector by_k = truncate_topk(d, k);
  return support_size(by_lambda) <= support_size(by_k) ? by_lambda : by_k;
}

Vector truncate_max_combo(ConstView d, std::size_t k, double alpha) {
  Vector by_lambda = truncate_fixed(d, lambda_from_alpha(d, alpha));
  Vector by_k = truncate_topk(d, k);
  return support_size(by_lambda) <= support_size(by_k) ? by_k : by_lambda;
}

Vector apply_rule(ConstView d, const TruncationRule& rule) {
  return std::visit(
      Overloaded{
          [&](const NoTruncation&) { return Vector(d.begin(), d.end()); },
          [&](const FixedLambda& r) { return truncate_fixed(d, r.lambda); },
          [&](const AlphaPercent& r) { return truncate_fixed(d, lambda_from_alpha(d, r.alpha)); },
          [&](const TopK& r) { return truncate_topk(d, r.k); },
          [&](const MinCombo& r) { return truncate_min_combo(d, r.k, r.alpha); },
          [&](const MaxCombo& r) { return truncate_max_combo(d, r.k, r.alpha); },
      },
      rule);
}

Vector soft_threshold(ConstView x, double theta) {
  if (!(theta >= 0.0)) throw InvalidInput("soft_threshold: theta must be >= 0");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]) - theta;
    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
  }
  return out;
}

}  // namespace tgreg
