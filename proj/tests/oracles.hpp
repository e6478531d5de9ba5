#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the library code it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = std::vector<double>;

inline Eigen::MatrixXd blur_1d(std::size_t n, double sigma, std::size_t band) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  const double c = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      if (k < band) t(i, j) = c * std::exp(-double(k * k) / (2.0 * sigma * sigma));
    }
  return t;
}

// Row-major image vectorization: A = T (x) T.
inline Eigen::MatrixXd blur_dense(std::size_t n, double sigma, std::size_t band) {
  const Eigen::MatrixXd t = blur_1d(n, sigma, band);
  Eigen::MatrixXd a(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.block(i * n, j * n, n, n) = t(i, j) * t;
  return a;
}

inline double spectral_norm(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

inline Eigen::VectorXd to_eigen(const Vec& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Vec from_eigen(const Eigen::VectorXd& v) { return Vec(v.data(), v.data() + v.size()); }

// Sort-based truncation rules.
inline Vec keep_above(const Vec& d, double lambda) {
  Vec out(d.size(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (std::fabs(d[i]) > lambda) out[i] = d[i];
  return out;
}

inline double alpha_level(const Vec& d, double alpha) {
  double m = 0.0;
  for (double v : d) m = std::max(m, std::fabs(v));
  return alpha / 100.0 * m;
}

inline Vec keep_largest(const Vec& d, std::size_t k) {
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return std::fabs(d[a]) > std::fabs(d[b]); });
  Vec out(d.size(), 0.0);
  for (std::size_t i = 0; i < std::min(k, d.size()); ++i) out[idx[i]] = d[idx[i]];
  return out;
}

inline std::size_t nnz(const Vec& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

inline Vec min_combo(const Vec& d, std::size_t k, double alpha) {
  Vec a = keep_above(d, alpha_level(d, alpha));
  Vec b = keep_largest(d, k);
  return nnz(a) <= nnz(b) ? a : b;
}

inline Vec max_combo(const Vec& d, std::size_t k, double alpha) {
  Vec a = keep_above(d, alpha_level(d, alpha));
  Vec b = keep_largest(d, k);
  return nnz(a) <= nnz(b) ? b : a;
}

// Random vectors with repeated magnitudes, exact zeros and sign flips so the
// tie and boundary paths get exercised.
inline Vec random_gradient(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 9);
  Vec d(n);
  for (auto& v : d) {
    const int p = pick(gen);
    if (p == 0) v = 0.0;
    else if (p == 1) v = 0.5;
    else if (p == 2) v = -0.5;
    else v = u(gen);
  }
  return d;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd a(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = nd(gen);
  return a;
}

inline Vec row_major(const Eigen::MatrixXd& a) {
  Vec out;
  out.reserve(static_cast<std::size_t>(a.size()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.push_back(a(i, j));
  return out;
}

inline Vec random_vector(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(n);
  for (auto& x : v) x = nd(gen);
  return v;
}

// F(x) = ||A x - b||^2
inline double objective(const Eigen::MatrixXd& a, const Vec& x, const Vec& b) {
  return (a * to_eigen(x) - to_eigen(b)).squaredNorm();
}

// Central differences of F, step eps.
inline Vec fd_gradient(const Eigen::MatrixXd& a, const Vec& x, const Vec& b, double eps = 1e-6) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp[i] += eps;
    xm[i] -= eps;
    g[i] = (objective(a, xp, b) - objective(a, xm, b)) / (2.0 * eps);
  }
  return g;
}

}  // namespace oracle
