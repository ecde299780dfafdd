#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jumpsync/error.hpp"
#include "jumpsync/evalmetrics.hpp"

namespace jumpsync {
namespace {

TEST(DifferenceInErrors, Examples) {
  EXPECT_EQ(difference_in_errors({100, 120, 100, 120}), 0.0);
  EXPECT_EQ(difference_in_errors({102, 122, 100, 120}), 0.0);  // shared bias cancels
  EXPECT_EQ(difference_in_errors({101, 120, 100, 120}), 1.0);
  EXPECT_EQ(difference_in_errors({100, 123, 100, 120}), 3.0);
  EXPECT_EQ(difference_in_errors({98, 121, 100, 120}), 3.0);
}

TEST(DifferenceInErrors, InvariantUnderCommonShift) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> u(0, 500), s(-50, 50);
  for (int i = 0; i < 200; ++i) {
    const TrialEval t{u(rng), u(rng), u(rng), u(rng)};
    const int d = s(rng);
    EXPECT_EQ(difference_in_errors(t), difference_in_errors({t.detected_a + d, t.detected_b + d, t.truth_a, t.truth_b}));
    EXPECT_EQ(difference_in_errors(t), difference_in_errors({t.detected_a + d, t.detected_b, t.truth_a + d, t.truth_b}));
    EXPECT_GE(difference_in_errors(t), 0.0);
  }
}

TEST(Summarize, ZeroAndTwo) {
  const EvalSummary s = summarize({{10, 10, 10, 10}, {12, 10, 10, 10}});
  ASSERT_EQ(s.per_trial.size(), 2u);
  EXPECT_EQ(s.per_trial[0], 0.0);
  EXPECT_EQ(s.per_trial[1], 2.0);
  EXPECT_NEAR(s.mean, 1.0, 1e-12);
  EXPECT_NEAR(s.sd, std::sqrt(2.0), 1e-12);
}

TEST(Summarize, AllExact) {
  const EvalSummary s = summarize(std::vector<TrialEval>(10, TrialEval{50, 40, 50, 40}));
  EXPECT_EQ(s.mean, 0.0);
  EXPECT_EQ(s.sd, 0.0);
}

TEST(Summarize, MeanWithinRange) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> u(0, 100);
  for (int t = 0; t < 50; ++t) {
    std::vector<TrialEval> trials(2 + t % 7);
    for (auto& e : trials) e = {u(rng), u(rng), u(rng), u(rng)};
    const EvalSummary s = summarize(trials);
    const auto [lo, hi] = std::minmax_element(s.per_trial.begin(), s.per_trial.end());
    EXPECT_GE(s.mean, *lo - 1e-12);
    EXPECT_LE(s.mean, *hi + 1e-12);
    EXPECT_GE(s.sd, 0.0);
  }
}

TEST(Summarize, Errors) {
  EXPECT_THROW(summarize({}), ConfigError);
  EXPECT_THROW(summarize({{1, 1, 1, 1}}), ConfigError);
  EXPECT_THROW(summarize({{1, 1, 1, 1}, {-1, 1, 1, 1}}), ConfigError);
}

}  // namespace
}  // namespace jumpsync
