#pragma once

#include <vector>

namespace jumpsync {

struct TrialEval {
  int detected_a = 0;
  int detected_b = 0;
  int truth_a = 0;
  int truth_b = 0;
};

struct EvalSummary {
  std::vector<double> per_trial;
  double mean = 0.0;
  double sd = 0.0;
};

/// |(detected_a - truth_a) - (detected_b - truth_b)|: a bias shared by both
/// views does not desynchronize them, so it cancels.
double difference_in_errors(const TrialEval& t);

/// Mean and sample (n - 1) standard deviation. Needs at least two trials.
EvalSummary summarize(const std::vector<TrialEval>& trials);

}  // namespace jumpsync
