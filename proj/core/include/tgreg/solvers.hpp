#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tgreg/linops.hpp"
#include "tgreg/stopping.hpp"
#include "tgreg/threshold.hpp"
#include "tgreg/vector_ops.hpp"

namespace tgreg {

// Step-length policies for the update x <- x - tau * h.
struct ExactLineSearch {};
// Constant tau; must satisfy 0 < tau < 2 / ||A||^2.
struct FixedStep {
  double tau = 0.0;
};
// nu-method three-term recursion (delegates to nu_descent).
struct NuAccelerated {
  double nu = 1.0;
};

using StepRule = std::variant<ExactLineSearch, FixedStep, NuAccelerated>;

// Elementwise lower bound x_i >= xmin; -inf disables it.
struct BoundConstraint {
  double xmin = -std::numeric_limits<double>::infinity();

  static BoundConstraint none() { return {}; }
  static BoundConstraint nonnegative() { return {0.0}; }
};

// Solver state handed to observers once per performed update, before the
// iterate moves. `direction` is the truncated gradient actually used.
struct IterationState {
  int m = 0;
  ConstView x;
  ConstView residual;   // A x_m - b
  ConstView grad;       // A*(A x_m - b)
  ConstView free_grad;  // grad with bound-blocked entries zeroed; the rule's input
  ConstView direction;  // masked copy of free_grad
  double objective = 0.0;  // ||residual||^2
  double step = 0.0;
};

using IterationObserver = std::function<void(const IterationState&)>;

enum class StopReason { kDiscrepancyMet, kMaxIters, kStalled, kSnapshotsComplete };

std::string to_string(StopReason reason);

struct IterationSummary {
  int m = 0;
  double objective = 0.0;
  double residual_norm = 0.0;
  double rel_residual_pct = 0.0;
  std::size_t sparsity = 0;
  std::optional<double> rel_error;
};

struct RunReport {
  std::vector<IterationSummary> history;  // one entry per visited iterate, m = 0, 1, ...
  Vector final_x;
  StopReason stop_reason = StopReason::kMaxIters;
  int iterations = 0;  // number of updates performed
  std::vector<Snapshot> snapshots;
};

struct RunOptions {
  BoundConstraint constraint;
  StoppingRule stopping = MaxIter{100};
  std::optional<MdpConfig> mdp;
  ConstView truth;  // empty: no error tracking
  ConstView x0;     // empty: zero vector
  double sparsity_tol = 0.0;
  // When false the loop keeps running on a zero direction (the iterate stays put).
  bool stop_on_stall = true;
  bool stop_when_snapshots_complete = false;
  // Zero gradient entries that would push a coordinate sitting on the bound
  // further out (x_i <= xmin, d_i > 0) before truncating. Without this the
  // projection can cancel every step of a truncated direction.
  bool mask_blocked = true;
  IterationObserver observer;
};

// A*(A x - b), without the factor 2 of d/dx ||Ax - b||^2.
Vector gradient(const LinearOperator& op, ConstView x, ConstView b);

// Minimizer of tau -> ||r - tau A h||^2: <A h, r> / ||A h||^2, or 0 when A h = 0.
double step_length(const LinearOperator& op, ConstView h, ConstView residual);

Vector project_lower_bound(ConstView x, const BoundConstraint& c);

// Truncated-gradient descent: x_{m+1} = P(x_m - tau_m * rule(A*(A x_m - b))),
// the rule seeing only the unblocked gradient entries (see RunOptions::mask_blocked).
// Stops on the stopping rule, its cap, or when the truncated direction vanishes.
// Throws ConfigError for a FixedStep outside the Landweber bound.
RunReport tg_descent(const LinearOperator& op, ConstView b, const TruncationRule& rule,
                     const StepRule& step, const RunOptions& opts);

// x_{m+1} = P(S_{lambda tau}(x_m + 2 tau A*(b - A x_m))). `grad_rule` truncates
// the forward-step gradient; the default leaves it untouched.
// Requires 0 < 2 tau < 2 / ||A||^2.
RunReport ista(const LinearOperator& op, ConstView b, double lambda, double tau,
               const RunOptions& opts, const TruncationRule& grad_rule = NoTruncation{});

// Beck-Teboulle acceleration of ista: t_1 = 1, t_{m+1} = (1 + sqrt(1 + 4 t_m^2)) / 2,
// y = x_m + ((t_m - 1) / t_{m+1}) (x_m - x_{m-1}).
RunReport fista(const LinearOperator& op, ConstView b, double lambda, double tau,
                const RunOptions& opts, const TruncationRule& grad_rule = NoTruncation{});

// FISTA momentum sequence step.
double fista_next_t(double t);

// (mu_m, tau_m) of the nu-method for m >= 1. mu_1 = 0, tau_1 = (4nu+2)/(4nu+1);
// for m > 1 the closed forms
//   mu_m  = (m-1)(2m-3)(2m+2nu-1) / ((m+2nu-1)(2m+4nu-1)(2m+2nu-3))
//   tau_m = 4 (2m+2nu-1)(m+nu-1) / ((m+2nu-1)(2m+2nu-1)).
std::pair<double, double> nu_coefficients(double nu, int m);

// Three-term recursion
//   x_{m+1} = P(x_m + mu_m (x_m - x_{m-1}) - (spectral_bound / ||A||^2) tau_m h_m)
// with h_m = rule(A*(A x_m - b)), blocked entries masked as in tg_descent. The
// operator is normalized so the spectrum of A*A lies in [0, spectral_bound]; the
// tau_m above are stable there for spectral_bound <= 0.8 but not on the whole
// unit interval.
RunReport nu_descent(const LinearOperator& op, ConstView b, double nu, const TruncationRule& rule,
                     const RunOptions& opts, double spectral_bound = 0.8);

}  // namespace tgreg
