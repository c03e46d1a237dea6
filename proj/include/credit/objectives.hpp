#ifndef CREDIT_OBJECTIVES_HPP
#define CREDIT_OBJECTIVES_HPP

// Step-quality vs. validity objectives under independent per-step success p.
// Derivatives are taken with respect to p.

namespace credit {

/// Expected number of correct steps, H p.
double j_add(double p, int horizon);

/// Probability that all H steps are correct, p^H.
double j_mult(double p, int horizon);

/// p^(H-1): the factor separating d J_mult / dp from d J_add / dp.
double grad_attenuation(double p, int horizon);

double dj_add_dp(double p, int horizon);
double dj_mult_dp(double p, int horizon);

struct InterpolatedObjective {
  double value = 0.0;
  double gradient = 0.0;
};

/// (1 - lambda) J_add + lambda J_mult and its derivative in p.
InterpolatedObjective j_interp(double p, int horizon, double lambda);

/// P[X >= ceil(threshold H), X < H] for X ~ Binomial(H, p).
double mostly_correct_but_wrong_prob(double p, int horizon, double threshold);

/// P[X < ceil(threshold H)] for X ~ Binomial(H, p).
double below_threshold_prob(double p, int horizon, double threshold);

}  // namespace credit

#endif  // CREDIT_OBJECTIVES_HPP
