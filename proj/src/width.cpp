#include "credit/width.hpp"

#include <algorithm>
#include <cmath>

#include "credit/errors.hpp"

namespace credit {

namespace {

void require_width(int width) { detail::require(width >= 1, "W must be at least 1"); }
void require_rho(double rho) { detail::require(rho >= 0.0 && rho < 1.0, "rho must lie in [0,1)"); }
void require_value(double value) { detail::require(value >= 0.0 && value <= 1.0, "value must lie in [0,1]"); }

}  // namespace

double estimator_variance_iid(double value, int width) {
  require_value(value);
  require_width(width);
  return value * (1.0 - value) / static_cast<double>(width);
}

double hoeffding_halfwidth(int width, double delta) {
  require_width(width);
  detail::require(delta > 0.0 && delta <= 1.0, "delta must lie in (0,1]");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(width)));
}

double effective_width(int width, double rho) {
  require_width(width);
  require_rho(rho);
  const double w = static_cast<double>(width);
  return w / (1.0 + (w - 1.0) * rho);
}

double correlated_variance(double value, int width, double rho) {
  require_value(value);
  require_width(width);
  require_rho(rho);
  const double w = static_cast<double>(width);
  return value * (1.0 - value) / w * (1.0 + (w - 1.0) * rho);
}

double width_horizon(double n, int width, double rho, double delta2, double eta) {
  detail::require(n > 0.0, "n must be positive");
  detail::require(delta2 > 0.0, "delta2 must be positive");
  detail::require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  const double effective_samples = n * effective_width(width, rho);
  return std::max(0.0, std::log(effective_samples * delta2) / -std::log(eta));
}

double width_insufficiency_threshold(double n, double delta2, double rho, double eta) {
  detail::require(rho > 0.0 && rho <= 1.0, "rho must lie in (0,1]; with rho = 0 width is uncapped");
  detail::require(n > 0.0, "n must be positive");
  detail::require(delta2 > 0.0, "delta2 must be positive");
  detail::require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  return std::log(n * delta2 / rho) / -std::log(eta);
}

EquicorrelatedSampler::EquicorrelatedSampler(double value, double rho)
    : value_(value), rho_(rho), share_(std::sqrt(rho)) {
  require_value(value);
  require_rho(rho);
}

int EquicorrelatedSampler::sample(Engine& engine, std::span<int> out) const {
  const int common = bernoulli(engine, value_) ? 1 : 0;
  int successes = 0;
  for (int& r : out) {
    const bool shared = bernoulli(engine, share_);
    const int own = bernoulli(engine, value_) ? 1 : 0;
    r = shared ? common : own;
    successes += r;
  }
  return successes;
}

}  // namespace credit
