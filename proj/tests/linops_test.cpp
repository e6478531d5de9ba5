#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tgreg/errors.hpp"
#include "tgreg/linops.hpp"

using namespace tgreg;

namespace {

const double kUnitSigma = 1.0 / std::sqrt(2.0 * M_PI);

DenseOperator from_eigen(const Eigen::MatrixXd& a) {
  return DenseOperator(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()),
                       oracle::row_major(a));
}

}  // namespace

TEST(DenseOperator, AppliesAndTransposes) {
  DenseOperator diag(2, 2, {2, 0, 0, 1});
  EXPECT_EQ(diag.apply(Vector{1, 1}), (Vector{2, 1}));

  DenseOperator a(2, 2, {1, 2, 3, 4});
  EXPECT_EQ(a.apply_adjoint(Vector{1, 0}), (Vector{1, 2}));
}

TEST(DenseOperator, RejectsWrongLengths) {
  DenseOperator a(2, 3, Vector(6, 1.0));
  EXPECT_THROW(a.apply(Vector{1, 2}), InvalidInput);
  EXPECT_THROW(a.apply_adjoint(Vector{1, 2, 3}), InvalidInput);
  EXPECT_THROW(DenseOperator(2, 2, Vector(3)), InvalidInput);
}

TEST(GaussianBlur, IdentityStencil) {
  auto op = make_gaussian_blur(5, kUnitSigma, 1);
  EXPECT_DOUBLE_EQ(op.stencil()[0], 1.0);
  std::mt19937_64 gen(3);
  Vector v = oracle::random_vector(gen, 25);
  Vector out = op.apply(v);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(out[i], v[i], 1e-15);

  auto one = make_gaussian_blur(1, kUnitSigma, 1);
  EXPECT_EQ(one.apply(Vector{0.25}), Vector{0.25});
}

TEST(GaussianBlur, StencilFormula) {
  auto op = make_gaussian_blur(4, 1.0, 2);
  ASSERT_EQ(op.stencil().size(), 2u);
  EXPECT_NEAR(op.stencil()[0], kUnitSigma, 1e-15);
  EXPECT_NEAR(op.stencil()[1], kUnitSigma * std::exp(-0.5), 1e-15);
}

TEST(GaussianBlur, RejectsBadArguments) {
  EXPECT_THROW(make_gaussian_blur(4, 1.0, 5), InvalidInput);
  EXPECT_THROW(make_gaussian_blur(4, 0.0, 2), InvalidInput);
  EXPECT_THROW(make_gaussian_blur(4, -1.0, 2), InvalidInput);
  EXPECT_THROW(make_gaussian_blur(0, 1.0, 1), InvalidInput);
  EXPECT_THROW(make_gaussian_blur(4, 1.0, 0), InvalidInput);
}

TEST(GaussianBlur, MatchesKroneckerOracle) {
  for (auto [side, sigma, band] : {std::tuple{16u, 2.0, 8u}, {9u, 1.3, 9u}, {12u, 3.0, 4u}}) {
    auto op = make_gaussian_blur(side, sigma, band);
    const Eigen::MatrixXd a = oracle::blur_dense(side, sigma, band);
    // One-hot images pick out the columns.
    for (std::size_t j = 0; j < side * side; j += 7) {
      Vector e(side * side, 0.0);
      e[j] = 1.0;
      const Vector col = op.apply(e);
      for (std::size_t i = 0; i < col.size(); ++i)
        ASSERT_NEAR(col[i], a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), 1e-12);
    }
    std::mt19937_64 gen(side);
    const Vector v = oracle::random_vector(gen, side * side);
    const Vector got = op.apply(v);
    const Eigen::VectorXd want = a * oracle::to_eigen(v);
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want(static_cast<Eigen::Index>(i)), 1e-12);
  }
}

TEST(GaussianBlur, SymmetricBitwise) {
  auto op = make_gaussian_blur(20, 2.5, 10);
  std::mt19937_64 gen(11);
  for (int t = 0; t < 5; ++t) {
    const Vector v = oracle::random_vector(gen, 400);
    EXPECT_EQ(op.apply(v), op.apply_adjoint(v));
  }
}

TEST(OperatorNorm, Diagonal) {
  DenseOperator diag(2, 2, {2, 0, 0, 1});
  EXPECT_NEAR(operator_norm_estimate(diag), 2.0, 1e-8);
  EXPECT_NEAR(operator_norm_estimate(make_gaussian_blur(6, kUnitSigma, 1)), 1.0, 1e-8);
}

TEST(OperatorNorm, MatchesSvdOracle) {
  std::mt19937_64 gen(8);
  const Eigen::MatrixXd a = oracle::random_matrix(gen, 8, 8);
  EXPECT_NEAR(operator_norm_estimate(from_eigen(a), 5000, 1e-14), oracle::spectral_norm(a), 1e-6);

  // ||T (x) T|| = ||T||^2 = 0.8900642865059744 (numpy, 16 x 16, sigma 2, band 8).
  auto blur = make_gaussian_blur(16, 2.0, 8);
  const double est = operator_norm_estimate(blur, 5000, 1e-14);
  EXPECT_NEAR(est, 0.8900642865059744, 1e-6);
  EXPECT_NEAR(est, oracle::spectral_norm(oracle::blur_dense(16, 2.0, 8)), 1e-6);
}

TEST(OperatorNorm, DeterministicPerSeed) {
  auto blur = make_gaussian_blur(16, 2.0, 8);
  EXPECT_EQ(operator_norm_estimate(blur, 7, 1e-14, 5), operator_norm_estimate(blur, 7, 1e-14, 5));
}

TEST(AdjointCheck, CleanOperatorsPass) {
  std::mt19937_64 gen(12);
  EXPECT_LE(adjoint_check(from_eigen(oracle::random_matrix(gen, 12, 9))), 1e-10);
  EXPECT_LE(adjoint_check(make_gaussian_blur(16, 2.0, 8)), 1e-10);
  EXPECT_LE(adjoint_check(make_gaussian_blur(64, 4.0, 16)), 1e-10);
}

TEST(AdjointCheck, DetectsCorruptedAdjoint) {
  auto blur = make_gaussian_blur(8, 1.5, 4);
  FunctionOperator bad(
      64, 64, [&](ConstView v, MutView out) { auto r = blur.apply(v); std::copy(r.begin(), r.end(), out.begin()); },
      [&](ConstView w, MutView out) {
        auto r = blur.apply_adjoint(w);
        std::copy(r.begin(), r.end(), out.begin());
        out[3] += 0.5 * w[0];
      });
  EXPECT_GT(adjoint_check(bad), 1e-3);
}

TEST(AdjointCheck, DenseIdentityHolds) {
  std::mt19937_64 gen(21);
  const Eigen::MatrixXd a = oracle::random_matrix(gen, 12, 9);
  auto op = from_eigen(a);
  for (int t = 0; t < 100; ++t) {
    const Vector v = oracle::random_vector(gen, 9);
    const Vector w = oracle::random_vector(gen, 12);
    const double lhs = oracle::to_eigen(op.apply(v)).dot(oracle::to_eigen(w));
    const double rhs = oracle::to_eigen(v).dot(oracle::to_eigen(op.apply_adjoint(w)));
    EXPECT_NEAR(lhs, rhs, 1e-10 * (1.0 + std::fabs(lhs)));
  }
}
