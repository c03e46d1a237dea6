#ifndef CREDIT_HORIZON_HPP
#define CREDIT_HORIZON_HPP

/**
 * \file
 * \brief Sample-complexity bounds for attributing an outcome to a step `gap`
 * transitions before it, and the critical horizon they imply.
 *
 * Everything is evaluated in log space. eta^gap for large gaps underflows to
 * zero in double precision; the corresponding sample bounds are reported as
 * +inf with `overflow` set instead of a meaningless finite number.
 */

namespace credit {

/// Sample budget n, initial divergence delta2, target error epsilon, per-step contraction eta.
struct HorizonParams {
  double n = 1.0;
  double delta2 = 1.0;
  double epsilon = 0.1;
  double eta = 0.5;

  /// Throws InvalidArgument naming the first violated range.
  void validate() const;
};

enum class Regime {
  /// eta^gap * delta2 <= 1: the bound is in its informative regime.
  kDecayed,
  /// eta^gap * delta2 > 1: the bound degenerates to O(1).
  kSeparated,
};

const char* to_string(Regime regime);

struct SampleBound {
  double value = 0.0;
  double log_value = 0.0;
  Regime regime = Regime::kDecayed;
  bool overflow = false;
};

/// n >= (1 - eps)^2 / (eta^gap delta2).
SampleBound sample_lb(const HorizonParams& params, int gap);

/// max{0, ln(n delta2 / (1 - eps)^2) / ln(1/eta)}. Not floored to an integer.
double critical_horizon(const HorizonParams& params);

/// max{0, ln(n delta2) / ln(1/eta)}: the epsilon-free approximation.
double critical_horizon_simplified(double n, double delta2, double eta);

/// Le Cam floor 1/2 (1 - sqrt(((1 + eta^gap delta2)^n - 1) / 2)), clamped to [0, 1/2].
double minimax_error_lb(const HorizonParams& params, int gap);

/// ln(1 + 2 (1 - 2 eps)^2) / (eta^gap delta2): below this many samples every test has error >= eps.
double sample_cap_for_error(const HorizonParams& params, int gap);

struct LumpabilityBound {
  double tv_bound = 0.0;
  /// (1 - 2 eps) / tv_bound; +inf when tv_bound is zero.
  double n_lb = 0.0;
};

/// TV between outcome laws when each step deviates from a lumpable chain by at most delta_step.
LumpabilityBound approx_lumpability_tv(double eta, double delta2, int gap, double delta_step, double epsilon);

/// Critical horizon shortened by ln(1/eta_g) / ln(1/eta) for a noisy terminal channel.
double noisy_outcome_adjust(const HorizonParams& params, double eta_g);

struct Achievability {
  double p1 = 0.0;
  /// chi2(Bern(p0) || Bern(p1)) = delta^2 (1/p1 + 1/(1 - p1)).
  double bernoulli_chi2 = 0.0;
  /// Samples after which the midpoint test has total error <= eps by Hoeffding.
  double n = 0.0;
  Regime regime = Regime::kDecayed;
  bool indistinguishable = false;
};

/// Bernoulli instance with p1 = p0 + sqrt(eta^gap delta2) and the matching upper bound 2 ln(2/eps) / delta^2.
Achievability achievability_n(double eta, double delta2, int gap, double p0, double epsilon = 0.1);

}  // namespace credit

#endif  // CREDIT_HORIZON_HPP
