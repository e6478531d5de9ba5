#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "tgreg/errors.hpp"
#include "tgreg/stopping.hpp"

using namespace tgreg;

namespace {

std::vector<StreamEntry> stream_of(std::initializer_list<double> pcts) {
  std::vector<StreamEntry> s;
  std::size_t i = 0;
  for (double p : pcts) s.push_back({p, std::nullopt, i++, Vector{p}});
  return s;
}

Snapshot snap(double gamma, int m, double res, std::size_t sparsity) {
  Snapshot s;
  s.gamma = gamma;
  s.m = m;
  s.rel_residual_pct = res;
  s.sparsity = sparsity;
  return s;
}

}  // namespace

TEST(DpShouldStop, InclusiveBoundary) {
  EXPECT_TRUE(dp_should_stop(1.9, 1.0, 2.0));
  EXPECT_FALSE(dp_should_stop(2.1, 1.0, 2.0));
  EXPECT_TRUE(dp_should_stop(2.0, 1.0, 2.0));
  EXPECT_THROW(dp_should_stop(1.0, 1.0, 1.0), ConfigError);
}

TEST(DpShouldStop, PercentFormIsEquivalent) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int t = 0; t < 1000; ++t) {
    const double r = u(gen), delta = u(gen), bn = u(gen), eta = 1.0 + u(gen) / 10.0;
    EXPECT_EQ(dp_should_stop(r, delta, eta), 100.0 * r / bn <= eta * (100.0 * delta / bn))
        << r << " " << delta << " " << bn << " " << eta;
  }
}

TEST(StoppingRule, Validation) {
  EXPECT_NO_THROW(validate(StoppingRule{Discrepancy{1.0, 1.01, 10}}));
  EXPECT_THROW(validate(StoppingRule{Discrepancy{1.0, 1.0, 10}}), ConfigError);
  EXPECT_THROW(validate(StoppingRule{Discrepancy{0.0, 1.5, 10}}), ConfigError);
  EXPECT_THROW(validate(StoppingRule{MaxIter{0}}), ConfigError);
  EXPECT_EQ(iteration_cap(StoppingRule{Never{42}}), 42);
}

TEST(MdpThresholds, Ladder) {
  EXPECT_EQ(mdp_thresholds(0.034242, 1.0, 4, 0.5), (std::vector<double>{4, 3.5, 3, 2.5}));
  EXPECT_EQ(mdp_thresholds(0.098591, 0.098591 / 0.034242, 4, 0.5), (std::vector<double>{4, 3.5, 3, 2.5}));
  EXPECT_EQ(mdp_thresholds(3.0, 100.0, 2, 0.5), (std::vector<double>{3, 2.5}));
  EXPECT_EQ(mdp_thresholds(0.002, 1.0, 3, 0.5), (std::vector<double>{1, 0.5}));
  EXPECT_EQ(mdp_thresholds(0.002, 1.0, 3, 2.0), (std::vector<double>{1}));
}

TEST(MdpThresholds, StrictlyDecreasingPositive) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.001, 0.2);
  for (int t = 0; t < 500; ++t) {
    auto lv = mdp_thresholds(u(gen), 1.0, 8, 0.5);
    ASSERT_FALSE(lv.empty());
    for (std::size_t i = 0; i < lv.size(); ++i) {
      EXPECT_GT(lv[i], 0.0);
      if (i > 0) {
        EXPECT_LT(lv[i], lv[i - 1]);
      }
    }
  }
}

TEST(MdpCapture, FirstCrossings) {
  auto s = mdp_capture(stream_of({5.0, 3.9, 3.2, 2.9}), {4, 3.5, 3}, 1.0);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].m, 1);
  EXPECT_EQ(s[1].m, 2);
  EXPECT_EQ(s[2].m, 3);
  EXPECT_EQ(s[2].x, Vector{2.9});

  auto partial = mdp_capture(stream_of({5.0, 3.9, 3.2, 3.1}), {4, 3.5, 3}, 1.0);
  ASSERT_EQ(partial.size(), 2u);
  EXPECT_EQ(partial[1].gamma, 3.5);

  auto bumpy = mdp_capture(stream_of({5, 3.4, 3.6, 2.9}), {3.5}, 1.0);
  ASSERT_EQ(bumpy.size(), 1u);
  EXPECT_EQ(bumpy[0].m, 1);
}

TEST(MdpCapture, OneIterateCanMeetSeveralLevels) {
  auto s = mdp_capture(stream_of({5.0, 2.0}), {4, 3.5, 3}, 1.0);
  ASSERT_EQ(s.size(), 3u);
  for (const auto& x : s) EXPECT_EQ(x.m, 1);
}

TEST(MdpCapture, IndicesNonDecreasingForAnyStream) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  for (int t = 0; t < 300; ++t) {
    std::vector<StreamEntry> stream;
    for (int m = 0; m < 30; ++m) stream.push_back({u(gen), std::nullopt, 0, {}});
    auto s = mdp_capture(stream, {5, 4.5, 4, 3.5, 3}, 1.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_LE(s[i].rel_residual_pct, s[i].gamma);
      for (int m = 0; m < s[i].m; ++m) EXPECT_GT(stream[m].rel_residual_pct, s[i].gamma);
      if (i > 0) {
        EXPECT_GE(s[i].m, s[i - 1].m);
      }
    }
  }
}

TEST(MdpCapture, EtaScalesLevels) {
  auto s = mdp_capture(stream_of({5.0, 4.3}), {4}, 1.1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].m, 1);
  EXPECT_THROW(MdpCapture({3, 4}, 1.0), InvalidInput);
}

TEST(MdpSelect, Policies) {
  std::vector<Snapshot> one{snap(4, 3, 3.9, 7)};
  EXPECT_EQ(mdp_select(one, SelectBase{}).m, 3);

  std::vector<Snapshot> three{snap(4, 3, 3.9, 10), snap(3.5, 5, 3.45, 50), snap(3, 9, 2.95, 40)};
  EXPECT_EQ(mdp_select(three, SelectBase{}).gamma, 4);
  EXPECT_EQ(mdp_select(three, SelectSparsestWithin{1.0}).sparsity, 50u);
  EXPECT_EQ(mdp_select(three, SelectSparsestWithin{0.1}).sparsity, 10u);

  std::vector<Snapshot> tie{snap(4, 3, 3.9, 10), snap(3.5, 5, 3.45, 50), snap(3, 9, 2.95, 50)};
  EXPECT_EQ(mdp_select(tie, SelectSparsestWithin{2.0}).m, 5);
  EXPECT_THROW(mdp_select({}, SelectBase{}), InvalidInput);
}

TEST(MdpConfig, Validation) {
  EXPECT_NO_THROW(validate(MdpConfig{0.1, 4, 0.5, 1.0}));
  EXPECT_THROW(validate(MdpConfig{0.0, 4, 0.5, 1.0}), ConfigError);
  EXPECT_THROW(validate(MdpConfig{0.1, 0, 0.5, 1.0}), ConfigError);
  EXPECT_THROW(validate(MdpConfig{0.1, 4, 0.0, 1.0}), ConfigError);
  EXPECT_THROW(validate(MdpConfig{0.1, 4, 0.5, 0.9}), ConfigError);
}
