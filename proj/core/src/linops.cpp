#include "tgreg/linops.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tgreg/errors.hpp"
#include "tgreg/random.hpp"

namespace tgreg {

Vector LinearOperator::apply(ConstView v) const {
  if (v.size() != dim_in())
    throw InvalidInput("apply: expected input of length " + std::to_string(dim_in()) +
                       ", got " + std::to_string(v.size()));
  Vector out(dim_out(), 0.0);
  forward(v, out);
  return out;
}

Vector LinearOperator::apply_adjoint(ConstView w) const {
  if (w.size() != dim_out())
    throw InvalidInput("apply_adjoint: expected input of length " + std::to_string(dim_out()) +
                       ", got " + std::to_string(w.size()));
  Vector out(dim_in(), 0.0);
  adjoint(w, out);
  return out;
}

// ---------------------------------------------------------------------------
// DenseOperator

DenseOperator::DenseOperator(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw InvalidInput("DenseOperator: empty shape");
  if (entries_.size() != rows * cols)
    throw InvalidInput("DenseOperator: entry count does not match shape");
}

DenseOperator DenseOperator::identity(std::size_t n) {
  Vector e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return DenseOperator(n, n, std::move(e));
}

void DenseOperator::forward(ConstView v, MutView out) const {
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = entries_.data() + r * cols_;
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += row[c] * v[c];
    out[r] = s;
  }
}

void DenseOperator::adjoint(ConstView w, MutView out) const {
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = entries_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) out[c] += row[c] * w[r];
  }
}

// ---------------------------------------------------------------------------
// GaussianBlurOperator

GaussianBlurOperator make_gaussian_blur(std::size_t side, double sigma, std::size_t band) {
  if (side == 0) throw InvalidInput("make_gaussian_blur: side must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw InvalidInput("make_gaussian_blur: sigma must be positive");
  if (band == 0 || band > side)
    throw InvalidInput("make_gaussian_blur: band must satisfy 1 <= band <= side");

  const double scale = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  Vector stencil(band);
  for (std::size_t j = 0; j < band; ++j) {
    const double jj = static_cast<double>(j);
    stencil[j] = scale * std::exp(-(jj * jj) / (2.0 * sigma * sigma));
  }
  return GaussianBlurOperator(side, sigma, std::move(stencil));
}

void GaussianBlurOperator::convolve_lines(ConstView in, MutView out, bool along_rows) const {
  const std::size_t n = side_;
  const std::size_t band = stencil_.size();
  const std::size_t stride = along_rows ? 1 : n;
  const std::size_t line_step = along_rows ? n : 1;
  const double* z = stencil_.data();

  for (std::size_t line = 0; line < n; ++line) {
    const double* src = in.data() + line * line_step;
    double* dst = out.data() + line * line_step;
    for (std::size_t i = 0; i < n; ++i) {
      // Fixed order: centre, then offsets 1..band-1 left before right.
      double s = z[0] * src[i * stride];
      const std::size_t reach = std::min(band - 1, std::max(i, n - 1 - i));
      for (std::size_t j = 1; j <= reach; ++j) {
        double pair = 0.0;
        if (j <= i) pair += src[(i - j) * stride];
        if (i + j < n) pair += src[(i + j) * stride];
        s += z[j] * pair;
      }
      dst[i * stride] = s;
    }
  }
}

void GaussianBlurOperator::forward(ConstView v, MutView out) const {
  Vector tmp(v.size());
  convolve_lines(v, tmp, /*along_rows=*/true);
  convolve_lines(tmp, out, /*along_rows=*/false);
}

// ---------------------------------------------------------------------------
// Diagnostics

double operator_norm_estimate(const LinearOperator& op, int max_iters, double tol,
                              std::uint64_t seed) {
  Rng rng(seed);
  Vector v = rng.normal_vector(op.dim_in());
  double nv = norm2(v);
  if (nv == 0.0) return 0.0;
  for (auto& x : v) x /= nv;

  double estimate = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    const Vector av = op.apply(v);
    // Rayleigh quotient <v, A*A v> = ||Av||^2 for unit v.
    const double next = norm2(av);
    Vector w = op.apply_adjoint(av);
    const double nw = norm2(w);
    const bool converged = it > 0 && std::abs(next - estimate) <= tol * next;
    estimate = next;
    if (converged || nw == 0.0) break;
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;
  }
  return estimate;
}

double adjoint_check(const LinearOperator& op, int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Vector v = rng.normal_vector(op.dim_in());
    const Vector w = rng.normal_vector(op.dim_out());
    const Vector av = op.apply(v);
    const Vector atw = op.apply_adjoint(w);
    const double lhs = dot(av, w);
    const double rhs = dot(v, atw);
    const double scale = norm2(av) * norm2(w) + norm2(v) * norm2(atw) + 1.0;
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace tgreg
