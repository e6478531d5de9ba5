#include <cmath>

#include <gtest/gtest.h>

#include "tgreg/config.hpp"
#include "tgreg/errors.hpp"

using namespace tgreg;

TEST(Config, EmptyTextGivesDefaults) {
  const RunConfig c = parse_config("");
  const RunConfig d;
  EXPECT_EQ(c.side, d.side);
  EXPECT_EQ(c.sigma, 4.0);
  EXPECT_EQ(c.method, "tg");
  EXPECT_EQ(c.eta, 1.01);
  EXPECT_EQ(c.mdp_eta, 1.0);
  EXPECT_EQ(c.mdp_spacing, 0.5);
}

TEST(Config, ParsesValuesAndComments) {
  const RunConfig c = parse_config("# experiment\nsigma = 10\n  rule=alpha   # trailing\nalpha = 40\n\nxmin = -1e-100\n");
  EXPECT_EQ(c.sigma, 10.0);
  EXPECT_EQ(c.rule, "alpha");
  EXPECT_EQ(c.alpha, 40.0);
  EXPECT_EQ(c.xmin, -1e-100);
}

TEST(Config, RejectsWithKey) {
  auto key_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(key_of("alpha = 140"), "alpha");
  EXPECT_EQ(key_of("colour = red"), "colour");
  EXPECT_EQ(key_of("Sigma = 2"), "Sigma");
  EXPECT_EQ(key_of("sigma = abc"), "sigma");
  EXPECT_EQ(key_of("side = -3"), "side");
  EXPECT_EQ(key_of("eta = 1.0"), "eta");
  EXPECT_EQ(key_of("band = 100"), "band");
  EXPECT_EQ(key_of("method = cg"), "method");
  EXPECT_EQ(key_of("stop = maxiter\neta = 1.0"), "<none>");
  EXPECT_THROW(parse_config("sigma 3"), ConfigError);
}

TEST(Config, DuplicatesWarnLastWins) {
  std::vector<std::string> warnings;
  const RunConfig c = parse_config("sigma = 2\nalpha = 5\nsigma = 3\n", &warnings);
  EXPECT_EQ(c.sigma, 3.0);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("sigma"), std::string::npos);
}

TEST(Config, OrderIndependentForDistinctKeys) {
  const RunConfig a = parse_config("sigma = 2\nalpha = 5\nrule = topk\nk = 9\n");
  const RunConfig b = parse_config("k = 9\nrule = topk\nalpha = 5\nsigma = 2\n");
  EXPECT_EQ(a.sigma, b.sigma);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.rule, b.rule);
  EXPECT_EQ(a.k, b.k);
}

TEST(Config, EveryKeyIsSettable) {
  const auto& keys = config_keys();
  EXPECT_GE(keys.size(), 30u);
  for (const auto& k : keys) {
    RunConfig c;
    try {
      set_config_value(c, k, "1");
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.key(), k);
      EXPECT_EQ(std::string(e.what()).find("unknown key"), std::string::npos) << k;
    }
  }
}

TEST(Config, SplitList) {
  EXPECT_EQ(split_list("a, b,,c "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(split_list("").empty());
}
