#include "tgreg/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "tgreg/errors.hpp"
#include "tgreg/problems.hpp"

namespace tgreg {
namespace {

constexpr int kNormIters = 2000;
constexpr double kNormTol = 1e-12;

void check_dims(const LinearOperator& op, ConstView b, const RunOptions& opts) {
  if (b.size() != op.dim_out()) throw InvalidInput("data length does not match operator range");
  if (!opts.x0.empty() && opts.x0.size() != op.dim_in())
    throw InvalidInput("x0 length does not match operator domain");
  if (!opts.truth.empty() && opts.truth.size() != op.dim_in())
    throw InvalidInput("truth length does not match operator domain");
}

Vector initial_iterate(const LinearOperator& op, const RunOptions& opts) {
  if (opts.x0.empty()) return Vector(op.dim_in(), 0.0);
  return Vector(opts.x0.begin(), opts.x0.end());
}

Vector residual_of(const LinearOperator& op, ConstView x, ConstView b) {
  Vector r = op.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

void project_in_place(MutView x, const BoundConstraint& c) {
  if (c.xmin == -std::numeric_limits<double>::infinity()) return;
  for (auto& v : x) v = std::max(v, c.xmin);
}

// Shared bookkeeping: history, stopping checks and snapshot capture. Each
// visited iterate is recorded exactly once.
class Recorder {
 public:
  Recorder(ConstView b, const RunOptions& opts) : opts_(opts), b_norm_(norm2(b)) {
    validate(opts.stopping);
    cap_ = iteration_cap(opts.stopping);
    if (opts.mdp) {
      validate(*opts.mdp);
      if (!(b_norm_ > 0.0)) throw InvalidInput("snapshot capture needs non-zero data");
      capture_.emplace(mdp_thresholds(opts.mdp->delta_est, b_norm_, opts.mdp->count,
                                      opts.mdp->spacing),
                       opts.mdp->eta);
    }
  }

  // Records iterate m; returns a stop reason when the run must end here.
  std::optional<StopReason> record(int m, ConstView x, ConstView residual) {
    IterationSummary s;
    s.m = m;
    s.objective = dot(residual, residual);
    if (!std::isfinite(s.objective) || !all_finite(x))
      throw NumericError("non-finite iterate at m = " + std::to_string(m));
    s.residual_norm = std::sqrt(s.objective);
    s.rel_residual_pct = b_norm_ > 0.0 ? residual_relative_percent(s.residual_norm, b_norm_) : 0.0;
    s.sparsity = sparsity_count(x, opts_.sparsity_tol);
    if (!opts_.truth.empty()) s.rel_error = relative_error(x, opts_.truth);
    history_.push_back(s);

    if (capture_) {
      std::optional<double> err_pct;
      if (s.rel_error) err_pct = 100.0 * *s.rel_error;
      capture_->observe(m, s.rel_residual_pct, err_pct, s.sparsity, x);
    }

    if (const auto* dp = std::get_if<Discrepancy>(&opts_.stopping))
      if (dp_should_stop(s.residual_norm, dp->delta, dp->eta)) return StopReason::kDiscrepancyMet;
    if (capture_ && opts_.stop_when_snapshots_complete && capture_->complete())
      return StopReason::kSnapshotsComplete;
    if (m >= cap_) return StopReason::kMaxIters;
    return std::nullopt;
  }

  RunReport finish(Vector x, StopReason reason, int updates) {
    RunReport rep;
    rep.history = std::move(history_);
    rep.final_x = std::move(x);
    rep.stop_reason = reason;
    rep.iterations = updates;
    if (capture_) rep.snapshots = capture_->release();
    return rep;
  }

 private:
  const RunOptions& opts_;
  double b_norm_;
  int cap_ = 0;
  std::vector<IterationSummary> history_;
  std::optional<MdpCapture> capture_;
};

double squared_norm_estimate(const LinearOperator& op) {
  const double n = operator_norm_estimate(op, kNormIters, kNormTol, 0);
  return n * n;
}

void check_fixed_step(const LinearOperator& op, double tau, const char* key) {
  if (!(tau > 0.0)) throw ConfigError(key, "step must be positive");
  const double bound = 2.0 / squared_norm_estimate(op);
  if (!(tau < bound))
    throw ConfigError(key, "step " + std::to_string(tau) + " violates the Landweber bound " +
                               std::to_string(bound));
}

void notify(const RunOptions& opts, int m, ConstView x, ConstView r, ConstView d, ConstView free,
            ConstView h, double step) {
  if (!opts.observer) return;
  opts.observer(IterationState{m, x, r, d, free, h, dot(r, r), step});
}

Vector unblocked(ConstView x, ConstView d, const RunOptions& opts) {
  Vector out(d.begin(), d.end());
  const double xmin = opts.constraint.xmin;
  if (!opts.mask_blocked || xmin == -std::numeric_limits<double>::infinity()) return out;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (x[i] <= xmin && out[i] > 0.0) out[i] = 0.0;
  return out;
}

enum class Momentum { kNone, kFista };

RunReport shrinkage_run(const LinearOperator& op, ConstView b, double lambda, double tau,
                        const RunOptions& opts, const TruncationRule& grad_rule,
                        Momentum momentum) {
  check_dims(op, b, opts);
  validate(grad_rule);
  if (!(lambda >= 0.0)) throw ConfigError("ista_lambda", "must be >= 0");
  check_fixed_step(op, 2.0 * tau, "tau");
  Recorder rec(b, opts);

  const double step = 2.0 * tau;
  const double theta = lambda * tau;
  Vector x = initial_iterate(op, opts);
  Vector y = x;
  double t = 1.0;

  bool stalled = false;
  for (int m = 0;; ++m) {
    Vector r = residual_of(op, x, b);
    if (auto stop = rec.record(m, x, r)) return rec.finish(std::move(x), *stop, m);
    if (stalled) return rec.finish(std::move(x), StopReason::kStalled, m);

    // Gradient at the extrapolated point (y == x without momentum).
    const Vector ry = momentum == Momentum::kFista ? residual_of(op, y, b) : r;
    const Vector d = op.apply_adjoint(ry);
    const Vector h = apply_rule(d, grad_rule);
    notify(opts, m, x, r, d, d, h, step);

    Vector z(y.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = y[i] - step * h[i];
    Vector x_next = soft_threshold(z, theta);
    project_in_place(x_next, opts.constraint);

    if (momentum == Momentum::kFista) {
      const double t_next = fista_next_t(t);
      const double beta = (t - 1.0) / t_next;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = x_next[i] + beta * (x_next[i] - x[i]);
      t = t_next;
    } else {
      y = x_next;
    }

    // A fixed point of the shrinkage map: the next iterate repeats this one.
    stalled = opts.stop_on_stall && x_next == x && (momentum == Momentum::kNone || y == x);
    x = std::move(x_next);
  }
}

}  // namespace

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kDiscrepancyMet: return "discrepancy_met";
    case StopReason::kMaxIters: return "max_iters";
    case StopReason::kStalled: return "stalled";
    case StopReason::kSnapshotsComplete: return "threshold_snapshot_complete";
  }
  return "unknown";
}

Vector gradient(const LinearOperator& op, ConstView x, ConstView b) {
  if (b.size() != op.dim_out()) throw InvalidInput("gradient: data length mismatch");
  return op.apply_adjoint(residual_of(op, x, b));
}

double step_length(const LinearOperator& op, ConstView h, ConstView residual) {
  const Vector ah = op.apply(h);
  const double denom = dot(ah, ah);
  if (denom == 0.0) return 0.0;
  return dot(ah, residual) / denom;
}

Vector project_lower_bound(ConstView x, const BoundConstraint& c) {
  Vector out(x.begin(), x.end());
  project_in_place(out, c);
  return out;
}

RunReport tg_descent(const LinearOperator& op, ConstView b, const TruncationRule& rule,
                     const StepRule& step, const RunOptions& opts) {
  if (const auto* nu = std::get_if<NuAccelerated>(&step)) return nu_descent(op, b, nu->nu, rule, opts);

  check_dims(op, b, opts);
  validate(rule);
  const auto* fixed = std::get_if<FixedStep>(&step);
  if (fixed) check_fixed_step(op, fixed->tau, "tau");
  Recorder rec(b, opts);

  Vector x = initial_iterate(op, opts);
  for (int m = 0;; ++m) {
    const Vector r = residual_of(op, x, b);
    if (auto stop = rec.record(m, x, r)) return rec.finish(std::move(x), *stop, m);

    const Vector d = op.apply_adjoint(r);
    const Vector free = unblocked(x, d, opts);
    const Vector h = apply_rule(free, rule);
    const bool zero_direction = support_size(h) == 0;
    if (zero_direction && opts.stop_on_stall) return rec.finish(std::move(x), StopReason::kStalled, m);

    double tau = 0.0;
    if (fixed) {
      tau = fixed->tau;
    } else if (!zero_direction) {
      tau = step_length(op, h, r);
    }
    notify(opts, m, x, r, d, free, h, tau);

    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= tau * h[i];
    project_in_place(x, opts.constraint);
  }
}

RunReport ista(const LinearOperator& op, ConstView b, double lambda, double tau,
               const RunOptions& opts, const TruncationRule& grad_rule) {
  return shrinkage_run(op, b, lambda, tau, opts, grad_rule, Momentum::kNone);
}

RunReport fista(const LinearOperator& op, ConstView b, double lambda, double tau,
                const RunOptions& opts, const TruncationRule& grad_rule) {
  return shrinkage_run(op, b, lambda, tau, opts, grad_rule, Momentum::kFista);
}

double fista_next_t(double t) { return (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0; }

std::pair<double, double> nu_coefficients(double nu, int m) {
  if (!(nu > 0.0)) throw InvalidInput("nu_coefficients: nu must be positive");
  if (m < 1) throw InvalidInput("nu_coefficients: m must be >= 1");
  if (m == 1) return {0.0, (4.0 * nu + 2.0) / (4.0 * nu + 1.0)};
  const double k = static_cast<double>(m);
  const double mu = (k - 1.0) * (2.0 * k - 3.0) * (2.0 * k + 2.0 * nu - 1.0) /
                    ((k + 2.0 * nu - 1.0) * (2.0 * k + 4.0 * nu - 1.0) * (2.0 * k + 2.0 * nu - 3.0));
  const double tau = 4.0 * (2.0 * k + 2.0 * nu - 1.0) * (k + nu - 1.0) /
                     ((k + 2.0 * nu - 1.0) * (2.0 * k + 2.0 * nu - 1.0));
  return {mu, tau};
}

RunReport nu_descent(const LinearOperator& op, ConstView b, double nu, const TruncationRule& rule,
                     const RunOptions& opts, double spectral_bound) {
  check_dims(op, b, opts);
  validate(rule);
  if (!(nu > 0.0)) throw ConfigError("nu", "must be positive");
  if (!(spectral_bound > 0.0 && spectral_bound <= 1.0))
    throw ConfigError("spectral_bound", "must lie in (0, 1]");
  const double norm_sq = squared_norm_estimate(op);
  if (!(norm_sq > 0.0)) throw NumericError("nu_descent: operator norm estimate is zero");
  const double scale = spectral_bound / norm_sq;
  Recorder rec(b, opts);

  Vector x = initial_iterate(op, opts);
  Vector x_prev = x;
  for (int m = 0;; ++m) {
    const Vector r = residual_of(op, x, b);
    if (auto stop = rec.record(m, x, r)) return rec.finish(std::move(x), *stop, m);

    const Vector d = op.apply_adjoint(r);
    const Vector free = unblocked(x, d, opts);
    const Vector h = apply_rule(free, rule);
    if (opts.stop_on_stall && support_size(h) == 0 && x == x_prev)
      return rec.finish(std::move(x), StopReason::kStalled, m);

    const auto [mu, tau_m] = nu_coefficients(nu, m + 1);
    const double tau = scale * tau_m;
    notify(opts, m, x, r, d, free, h, tau);

    Vector x_next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      x_next[i] = x[i] + mu * (x[i] - x_prev[i]) - tau * h[i];
    project_in_place(x_next, opts.constraint);
    x_prev = std::move(x);
    x = std::move(x_next);
  }
}

}  // namespace tgreg
