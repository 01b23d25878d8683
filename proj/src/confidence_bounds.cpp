#include "olop/confidence_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace olop {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// x log(x / y) with the 0 log 0 = 0 and x log(x / 0) = +inf conventions.
double xlogxy(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInf;
  return x * std::log(x / y);
}

double bernoulli_kl(double p, double q) { return xlogxy(p, q) + xlogxy(1.0 - p, 1.0 - q); }

// d/dq of bernoulli_kl(p, q) on the open interval (0, 1).
double bernoulli_kl_slope(double p, double q) { return (q - p) / (q * (1.0 - q)); }

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string("bernoulli divergence: ") + name + " = " +
                            std::to_string(x) + " outside [0, 1]");
  }
}

// Newton iterations on q -> kl(p, q) - level over [lo, hi], falling back to
// bisection whenever an iterate leaves the bracket. The function is convex and
// monotone on the bracket; `increasing` tells which side the root is on.
double solve_level(double p, double level, double lo, double hi, double start, bool increasing) {
  double x = start;
  for (int i = 0; i < kBoundMaxIterations; ++i) {
    const double excess = bernoulli_kl(p, x) - level;
    if (excess == 0.0) return x;
    // Keep [lo, hi] bracketing the root.
    if ((excess > 0.0) == increasing) {
      hi = x;
    } else {
      lo = x;
    }
    double next = 0.5 * (lo + hi);
    if (x > 0.0 && x < 1.0 && std::isfinite(excess)) {
      const double newton = x - excess / bernoulli_kl_slope(p, x);
      if (newton > lo && newton < hi) next = newton;
    }
    if (std::abs(next - x) < kBoundTolerance || hi - lo < kBoundTolerance) return next;
    x = next;
  }
  return x;
}

double bernoulli_upper(double p, double level) {
  if (p >= 1.0) return 1.0;
  if (p <= 0.0) return -std::expm1(-level);  // -ln(1 - q) = level
  // Pinsker: the root lies left of p + sqrt(level / 2).
  const double hi = std::min(1.0, p + std::sqrt(level / 2.0));
  const double start = hi < 1.0 ? hi : 0.5 * (p + hi);
  return solve_level(p, level, p, hi, start, /*increasing=*/true);
}

double bernoulli_lower(double p, double level) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return std::exp(-level);  // -ln q = level
  const double lo = std::max(0.0, p - std::sqrt(level / 2.0));
  const double start = lo > 0.0 ? lo : 0.5 * (lo + p);
  return solve_level(p, level, lo, p, start, /*increasing=*/false);
}

}  // namespace

std::string_view to_string(Divergence div) {
  return div == Divergence::kQuad ? "QUAD" : "BER";
}

std::string_view to_string(ThresholdFn fn) {
  switch (fn) {
    case ThresholdFn::kF1: return "F1";
    case ThresholdFn::kF2: return "F2";
    case ThresholdFn::kF4: return "F4";
  }
  return "?";
}

double divergence(Divergence div, double p, double q) {
  if (div == Divergence::kQuad) {
    if (!std::isfinite(p) || !std::isfinite(q)) {
      throw std::domain_error("quadratic divergence: arguments must be finite");
    }
    return 2.0 * (p - q) * (p - q);
  }
  check_unit(p, "p");
  check_unit(q, "q");
  return bernoulli_kl(p, q);
}

double threshold(ThresholdFn fn, std::uint64_t total_episodes, std::uint64_t episode) {
  if (total_episodes < 1) throw std::domain_error("threshold: M must be at least 1");
  if (episode < 1) throw std::domain_error("threshold: episode index must be at least 1");
  const double log_m = std::log(static_cast<double>(total_episodes));
  switch (fn) {
    case ThresholdFn::kF1:
      return log_m;
    case ThresholdFn::kF2:
      if (total_episodes < 2) throw std::domain_error("threshold: F2 needs M >= 2 (ln ln M)");
      return 2.0 * log_m + 2.0 * std::log(log_m);
    case ThresholdFn::kF4:
      return 4.0 * log_m;
  }
  throw std::domain_error("threshold: unknown schedule");
}

double upper_bound(Divergence div, const BoundQuery& query) {
  if (query.visit_count == 0) return div == Divergence::kQuad ? kInf : 1.0;
  const double count = static_cast<double>(query.visit_count);
  const double mean = query.reward_sum / count;
  if (div == Divergence::kQuad) return mean + std::sqrt(query.threshold / (2.0 * count));
  const double level = query.threshold / count;
  const double p = std::clamp(mean, 0.0, 1.0);
  if (level <= 0.0) return p;
  return bernoulli_upper(p, level);
}

double lower_bound(Divergence div, const BoundQuery& query) {
  if (query.visit_count == 0) return div == Divergence::kQuad ? -kInf : 0.0;
  const double count = static_cast<double>(query.visit_count);
  const double mean = query.reward_sum / count;
  if (div == Divergence::kQuad) return mean - std::sqrt(query.threshold / (2.0 * count));
  const double level = query.threshold / count;
  const double p = std::clamp(mean, 0.0, 1.0);
  if (level <= 0.0) return p;
  return bernoulli_lower(p, level);
}

}  // namespace olop
