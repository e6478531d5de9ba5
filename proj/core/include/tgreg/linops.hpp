#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "tgreg/vector_ops.hpp"

namespace tgreg {

// A linear map A : R^dim_in -> R^dim_out together with its adjoint A*.
//
// Implementations must be deterministic and free of side effects; a
// constructed operator is immutable and may be applied concurrently.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual std::size_t dim_in() const = 0;
  virtual std::size_t dim_out() const = 0;

  // A v. Throws InvalidInput when v.size() != dim_in().
  Vector apply(ConstView v) const;
  // A* w. Throws InvalidInput when w.size() != dim_out().
  Vector apply_adjoint(ConstView w) const;

 protected:
  // Inputs have been size-checked; `out` is zero-initialized.
  virtual void forward(ConstView v, MutView out) const = 0;
  virtual void adjoint(ConstView w, MutView out) const = 0;
};

// Explicit m x n matrix stored row-major. Used for small instances and as an
// oracle for the matrix-free operators.
class DenseOperator final : public LinearOperator {
 public:
  DenseOperator(std::size_t rows, std::size_t cols, Vector entries);

  static DenseOperator identity(std::size_t n);

  std::size_t dim_in() const override { return cols_; }
  std::size_t dim_out() const override { return rows_; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const Vector& entries() const { return entries_; }

 protected:
  void forward(ConstView v, MutView out) const override;
  void adjoint(ConstView w, MutView out) const override;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Vector entries_;
};

// Matrix-free separable Gaussian blur on an N x N image (row-major).
//
// A = T (x) T where T is the N x N banded symmetric Toeplitz matrix with
// T(i, j) = z_|i-j| for |i-j| < band and 0 otherwise, and
//   z_j = exp(-j^2 / (2 sigma^2)) / (sigma sqrt(2 pi)).
// Values outside the grid are treated as zero. The stencil is not normalized
// to unit mass. A is symmetric, so forward and adjoint share one code path.
class GaussianBlurOperator final : public LinearOperator {
 public:
  std::size_t dim_in() const override { return side_ * side_; }
  std::size_t dim_out() const override { return side_ * side_; }

  std::size_t side() const { return side_; }
  double sigma() const { return sigma_; }
  std::size_t band() const { return stencil_.size(); }
  // z_0 .. z_{band-1}
  const Vector& stencil() const { return stencil_; }

 protected:
  void forward(ConstView v, MutView out) const override;
  void adjoint(ConstView w, MutView out) const override { forward(w, out); }

 private:
  friend GaussianBlurOperator make_gaussian_blur(std::size_t, double, std::size_t);
  GaussianBlurOperator(std::size_t side, double sigma, Vector stencil)
      : side_(side), sigma_(sigma), stencil_(std::move(stencil)) {}

  // One 1-D pass along rows (stride 1) or columns (stride side).
  void convolve_lines(ConstView in, MutView out, bool along_rows) const;

  std::size_t side_;
  double sigma_;
  Vector stencil_;
};

// Throws InvalidInput for side == 0, band == 0, band > side or sigma <= 0.
GaussianBlurOperator make_gaussian_blur(std::size_t side, double sigma, std::size_t band);

// Operator defined by a pair of callables. Handy for test doubles and for
// wrapping external code. The callables receive a zeroed output buffer.
class FunctionOperator final : public LinearOperator {
 public:
  using Applier = std::function<void(ConstView, MutView)>;

  FunctionOperator(std::size_t dim_in, std::size_t dim_out, Applier forward, Applier adjoint)
      : dim_in_(dim_in), dim_out_(dim_out), forward_(std::move(forward)),
        adjoint_(std::move(adjoint)) {}

  std::size_t dim_in() const override { return dim_in_; }
  std::size_t dim_out() const override { return dim_out_; }

 protected:
  void forward(ConstView v, MutView out) const override { forward_(v, out); }
  void adjoint(ConstView w, MutView out) const override { adjoint_(w, out); }

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  Applier forward_;
  Applier adjoint_;
};

// Power-method estimate of ||A||_2 = sqrt(lambda_max(A* A)).
//
// Starts from a seeded Gaussian vector and iterates v <- A*A v / ||A*A v||.
// Stops once two successive estimates differ relatively by less than `tol`,
// or after `max_iters` iterations (returning the last estimate).
double operator_norm_estimate(const LinearOperator& op, int max_iters = 1000,
                              double tol = 1e-10, std::uint64_t seed = 0);

// Max over `trials` seeded random pairs (v, w) of
//   |<Av, w> - <v, A*w>| / (||Av|| ||w|| + ||v|| ||A*w|| + 1).
double adjoint_check(const LinearOperator& op, int trials = 100, std::uint64_t seed = 0);

}  // namespace tgreg
