#include "credit/objectives.hpp"

#include <cmath>

#include "credit/errors.hpp"

namespace credit {

namespace {

void require_p(double p) { detail::require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]"); }
void require_horizon(int horizon) { detail::require(horizon >= 1, "H must be positive"); }

int threshold_count(int horizon, double threshold) {
  detail::require(threshold > 0.0 && threshold <= 1.0, "threshold must lie in (0,1]");
  // Guard 0.8 * 100 style products that land a hair above an integer.
  return static_cast<int>(std::ceil(threshold * horizon - 1e-9));
}

double binomial_pmf(int horizon, int k, double p) {
  if (p == 0.0) {
    return k == 0 ? 1.0 : 0.0;
  }
  if (p == 1.0) {
    return k == horizon ? 1.0 : 0.0;
  }
  const double log_choose = std::lgamma(horizon + 1.0) - std::lgamma(k + 1.0) - std::lgamma(horizon - k + 1.0);
  return std::exp(log_choose + k * std::log(p) + (horizon - k) * std::log1p(-p));
}

double binomial_range(int horizon, double p, int lo, int hi) {
  double total = 0.0;
  for (int k = lo; k < hi; ++k) {
    total += binomial_pmf(horizon, k, p);
  }
  return total;
}

}  // namespace

double j_add(double p, int horizon) {
  require_p(p);
  require_horizon(horizon);
  return horizon * p;
}

double j_mult(double p, int horizon) {
  require_p(p);
  require_horizon(horizon);
  return std::pow(p, horizon);
}

double grad_attenuation(double p, int horizon) {
  require_p(p);
  require_horizon(horizon);
  return std::pow(p, horizon - 1);
}

double dj_add_dp(double p, int horizon) {
  require_p(p);
  require_horizon(horizon);
  return horizon;
}

double dj_mult_dp(double p, int horizon) { return horizon * grad_attenuation(p, horizon); }

InterpolatedObjective j_interp(double p, int horizon, double lambda) {
  detail::require(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0,1]");
  return {(1.0 - lambda) * j_add(p, horizon) + lambda * j_mult(p, horizon),
          (1.0 - lambda) * dj_add_dp(p, horizon) + lambda * dj_mult_dp(p, horizon)};
}

double mostly_correct_but_wrong_prob(double p, int horizon, double threshold) {
  require_p(p);
  require_horizon(horizon);
  const int lo = threshold_count(horizon, threshold);
  return binomial_range(horizon, p, lo, horizon);
}

double below_threshold_prob(double p, int horizon, double threshold) {
  require_p(p);
  require_horizon(horizon);
  return binomial_range(horizon, p, 0, threshold_count(horizon, threshold));
}

}  // namespace credit
