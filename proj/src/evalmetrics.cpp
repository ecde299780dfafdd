#include "jumpsync/evalmetrics.hpp"

#include <cmath>
#include <cstdlib>

#include "jumpsync/error.hpp"

namespace jumpsync {

double difference_in_errors(const TrialEval& t) {
  const long err_a = static_cast<long>(t.detected_a) - t.truth_a;
  const long err_b = static_cast<long>(t.detected_b) - t.truth_b;
  return static_cast<double>(std::labs(err_a - err_b));
}

EvalSummary summarize(const std::vector<TrialEval>& trials) {
  if (trials.size() < 2) throw ConfigError("summary needs at least two trials");
  EvalSummary s;
  s.per_trial.reserve(trials.size());
  for (const auto& t : trials) {
    if (t.detected_a < 0 || t.detected_b < 0 || t.truth_a < 0 || t.truth_b < 0) {
      throw ConfigError("trial frame indices must be non-negative");
    }
    s.per_trial.push_back(difference_in_errors(t));
  }
  const auto n = static_cast<double>(s.per_trial.size());
  double sum = 0.0;
  for (double v : s.per_trial) sum += v;
  s.mean = sum / n;
  double ss = 0.0;
  for (double v : s.per_trial) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / (n - 1.0));
  return s;
}

}  // namespace jumpsync
