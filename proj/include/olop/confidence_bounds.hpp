#pragma once

#include <cstdint>
#include <string_view>

namespace olop {

/// Divergence used to build the confidence region around an empirical mean.
///   kQuad:      d(p, q) = 2 (p - q)^2 on the real line (Chernoff-Hoeffding).
///   kBernoulli: Bernoulli Kullback-Leibler divergence on [0, 1].
enum class Divergence { kQuad, kBernoulli };

/// Exploration threshold schedules, all constant in the episode index and
/// anchored to the total number of episodes M.
///   kF1: ln M
///   kF2: 2 ln M + 2 ln ln M
///   kF4: 4 ln M
enum class ThresholdFn { kF1, kF2, kF4 };

std::string_view to_string(Divergence div);
std::string_view to_string(ThresholdFn fn);

/// Evaluates d(p, q). BER follows the conventions 0 log 0 = 0 log(0/0) = 0 and
/// x log(x/0) = +inf for x > 0.
/// Throws std::domain_error when p or q lies outside the divergence's interval.
double divergence(Divergence div, double p, double q);

/// Threshold value f(m). The schedules do not depend on m, which is only
/// validated (m >= 1). Throws std::domain_error for M < 1, or M < 2 with kF2.
double threshold(ThresholdFn fn, std::uint64_t total_episodes, std::uint64_t episode = 1);

struct BoundQuery {
  double reward_sum = 0.0;         // S, in [0, visit_count]
  std::uint64_t visit_count = 0;   // T
  double threshold = 0.0;          // f
};

/// Largest q in the interval with T d(S/T, q) <= f.
///
/// Unvisited queries return the top of the interval: 1 for BER, +inf for QUAD
/// (the QUAD interval is the whole real line and is never clamped). BER bounds
/// are solved by safeguarded Newton iterations to an absolute tolerance of
/// kBoundTolerance.
double upper_bound(Divergence div, const BoundQuery& query);

/// Smallest q in the interval with T d(S/T, q) <= f. Mirror of upper_bound;
/// unvisited queries return 0 for BER and -inf for QUAD.
double lower_bound(Divergence div, const BoundQuery& query);

inline constexpr double kBoundTolerance = 1e-10;
inline constexpr int kBoundMaxIterations = 50;

/// Divergence and threshold value frozen for one planning call.
struct BoundModel {
  Divergence divergence = Divergence::kBernoulli;
  double threshold = 0.0;

  double upper(double reward_sum, std::uint64_t visit_count) const {
    return upper_bound(divergence, {reward_sum, visit_count, threshold});
  }
  double lower(double reward_sum, std::uint64_t visit_count) const {
    return lower_bound(divergence, {reward_sum, visit_count, threshold});
  }
};

}  // namespace olop
