#ifndef CREDIT_WIDTH_HPP
#define CREDIT_WIDTH_HPP

#include <span>

#include "credit/random.hpp"

namespace credit {

/// V (1 - V) / W: variance of the mean of W independent Bernoulli(V) rollouts.
double estimator_variance_iid(double value, int width);

/// Hoeffding half-width sqrt(ln(2/delta) / (2W)).
double hoeffding_halfwidth(int width, double delta);

/// W / (1 + (W - 1) rho): independent rollouts worth W equicorrelated ones.
double effective_width(int width, double rho);

/// sigma^2 / W * (1 + (W - 1) rho).
double correlated_variance(double value, int width, double rho);

/// ln(n W_eff delta2) / ln(1/eta), floored at 0.
double width_horizon(double n, int width, double rho, double delta2, double eta);

/// ln(n delta2 / rho) / ln(1/eta): beyond this depth no width suffices.
double width_insufficiency_threshold(double n, double delta2, double rho, double eta);

/**
 * Equicorrelated Bernoulli(value) group sampler.
 *
 * Each member is R_j = I_j C + (1 - I_j) X_j with I_j ~ Bernoulli(sqrt(rho))
 * and C, X_j ~ Bernoulli(value), all independent, so every pair has
 * correlation exactly rho and every marginal has mean value.
 */
class EquicorrelatedSampler {
 public:
  EquicorrelatedSampler(double value, double rho);

  /// Fills `out` with one group; returns the number of successes.
  int sample(Engine& engine, std::span<int> out) const;

  double value() const noexcept { return value_; }
  double rho() const noexcept { return rho_; }

 private:
  double value_;
  double rho_;
  double share_;
};

}  // namespace credit

#endif  // CREDIT_WIDTH_HPP
