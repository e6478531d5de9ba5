#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>

#include "tgreg/linops.hpp"
#include "tgreg/random.hpp"
#include "tgreg/solvers.hpp"
#include "tgreg/threshold.hpp"
#include "tgreg_cli/commands.hpp"

namespace tgreg::cli {
namespace {

struct Check {
  std::string name;
  std::function<bool(std::string&)> run;
};

DenseOperator random_dense(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  return DenseOperator(rows, cols, rng.normal_vector(rows * cols));
}

// Naive reference: sort all indices by (|d| desc, index asc) and keep a prefix.
Vector naive_topk(const Vector& d, std::size_t k) {
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(d[a]) > std::abs(d[b]); });
  Vector h(d.size(), 0.0);
  for (std::size_t j = 0; j < std::min(k, d.size()); ++j) h[idx[j]] = d[idx[j]];
  return h;
}

Vector naive_lambda(const Vector& d, double lambda) {
  Vector h(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (std::abs(d[i]) > lambda) h[i] = d[i];
  return h;
}

std::size_t nnz(const Vector& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

bool adjoint_suite(bool inject_fault, std::string& detail) {
  const auto blur = make_gaussian_blur(16, 2.0, 8);
  const auto dense = random_dense(12, 9, 5);
  double worst = std::max(adjoint_check(blur, 50, 1), adjoint_check(dense, 50, 2));
  if (inject_fault) {
    FunctionOperator broken(
        blur.dim_in(), blur.dim_out(),
        [&](ConstView v, MutView out) {
          const Vector y = blur.apply(v);
          std::copy(y.begin(), y.end(), out.begin());
        },
        [&](ConstView w, MutView out) {
          const Vector y = blur.apply(w);
          std::copy(y.begin(), y.end(), out.begin());
          out[0] += 0.5 * w[w.size() - 1];
        });
    worst = std::max(worst, adjoint_check(broken, 50, 3));
  }
  detail = "max discrepancy " + std::to_string(worst);
  return worst <= 1e-10;
}

bool truncation_suite(std::string& detail) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(64);
    Vector d = rng.normal_vector(n);
    for (auto& v : d)
      if (rng.uniform() < 0.2) v = 0.0;
    const std::size_t k = rng.below(n + 2);
    const double alpha = 100.0 * rng.uniform();
    const double lambda = 1.5 * rng.uniform();
    const double lam_m = alpha / 100.0 * norm_inf(d);

    const Vector by_l = naive_lambda(d, lam_m);
    const Vector by_k = naive_topk(d, k);
    const Vector mn = nnz(by_l) <= nnz(by_k) ? by_l : by_k;
    const Vector mx = nnz(by_l) <= nnz(by_k) ? by_k : by_l;
    if (truncate_fixed(d, lambda) != naive_lambda(d, lambda) ||
        apply_rule(d, AlphaPercent{alpha}) != by_l || truncate_topk(d, k) != by_k ||
        truncate_min_combo(d, k, alpha) != mn || truncate_max_combo(d, k, alpha) != mx) {
      detail = "mismatch on trial " + std::to_string(t);
      return false;
    }
  }
  detail = "200 random vectors";
  return true;
}

bool gradient_suite(std::string& detail) {
  const auto op = random_dense(10, 8, 21);
  Rng rng(22);
  const Vector x = rng.normal_vector(8);
  const Vector b = rng.normal_vector(10);
  const Vector g = gradient(op, x, b);
  auto objective = [&](const Vector& v) {
    const Vector r = subtract(op.apply(v), b);
    return dot(r, r);
  };
  double worst = 0.0;
  constexpr double eps = 1e-6;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp[i] += eps;
    xm[i] -= eps;
    const double fd = (objective(xp) - objective(xm)) / (2.0 * eps);
    worst = std::max(worst, std::abs(fd - 2.0 * g[i]) / std::max(1.0, std::abs(fd)));
  }
  detail = "max relative error " + std::to_string(worst);
  return worst <= 1e-4;
}

bool ista_equivalence_suite(std::string& detail) {
  const auto op = random_dense(12, 10, 31);
  Rng rng(32);
  const Vector b = rng.normal_vector(12);
  const double norm = operator_norm_estimate(op);
  const double tau = 0.45 / (norm * norm);

  RunOptions opts;
  opts.stopping = MaxIter{50};
  std::vector<Vector> ista_iterates, tg_iterates;
  opts.observer = [&](const IterationState& s) { ista_iterates.emplace_back(s.x.begin(), s.x.end()); };
  const RunReport a = ista(op, b, 0.0, tau, opts);
  opts.observer = [&](const IterationState& s) { tg_iterates.emplace_back(s.x.begin(), s.x.end()); };
  const RunReport c = tg_descent(op, b, NoTruncation{}, FixedStep{2.0 * tau}, opts);
  ista_iterates.push_back(a.final_x);
  tg_iterates.push_back(c.final_x);

  if (ista_iterates.size() != tg_iterates.size()) {
    detail = "iteration counts differ";
    return false;
  }
  double worst = 0.0;
  for (std::size_t m = 0; m < ista_iterates.size(); ++m)
    worst = std::max(worst, norm_inf(subtract(ista_iterates[m], tg_iterates[m])));
  detail = "max deviation " + std::to_string(worst);
  return worst <= 1e-12;
}

}  // namespace

int cmd_selftest(const SelftestOptions& opts, std::ostream& out) {
  const std::vector<Check> checks = {
      {"adjoint", [&](std::string& d) { return adjoint_suite(opts.inject_adjoint_fault, d); }},
      {"truncation", truncation_suite},
      {"gradient", gradient_suite},
      {"ista_equivalence", ista_equivalence_suite},
  };
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out << (ok ? "[PASS] " : "[FAIL] ") << c.name << " (" << detail << ")\n";
    if (!ok) failed.push_back(c.name);
  }
  if (failed.empty()) {
    out << "selftest: all checks passed\n";
    return kOk;
  }
  out << "selftest: failing checks:";
  for (const auto& f : failed) out << ' ' << f;
  out << '\n';
  return kSelftestFailed;
}

}  // namespace tgreg::cli
