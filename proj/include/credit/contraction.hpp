#ifndef CREDIT_CONTRACTION_HPP
#define CREDIT_CONTRACTION_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "credit/markov.hpp"

namespace credit {

/// Dobrushin coefficient: min over row pairs of their overlap sum_y min{K(y|z), K(y|z')}.
double dobrushin_alpha(const Kernel& kernel);

/// Upper bound 1 - alpha(K) on the chi-square contraction coefficient.
double dobrushin_bound(const Kernel& kernel);

/// Upper bound 1 - |Z| * min_entry, clamped to [0, 1]; vacuous (1) when some entry is zero.
double diversity_bound(const Kernel& kernel);

/// Exact contraction (1 - 2p)^2 of the binary symmetric kernel.
double two_state_exact(double p);

/// Exact coefficient for identical rows (0), the identity (1) and binary symmetric kernels, else nullopt.
std::optional<double> recognized_exact(const Kernel& kernel);

/// Smoothing weight used to give point-mass references full support.
inline constexpr double kEmpiricalSmoothing = 1e-6;

/**
 * Randomized lower bound on the chi-square contraction coefficient.
 *
 * Candidate references Q are the uniform distribution, the smoothed point
 * masses (1 - s) delta_j + s U and `trials` random interior points. For each
 * candidate the best ratio chi2(PK || QK) / chi2(P || Q) is taken over the
 * point masses P = delta_i and over the local perturbations P = Q + e v; the
 * latter supremum is the squared second singular value of
 * diag(sqrt(Q)) K diag(1 / sqrt(QK)). Every candidate value is attained by an
 * actual pair, so the maximum never exceeds the true coefficient.
 * Deterministic given `seed`.
 */
double empirical_eta_lower(const Kernel& kernel, int trials, std::uint64_t seed);

/// prod_{j=t}^{u-1} etas[j]; 1 when t == u.
double attenuation(std::span<const double> etas, int t, int u);

struct ContractionReport {
  double dobrushin_alpha = 0.0;
  double dobrushin_bound = 1.0;
  std::optional<double> diversity_bound;
  double empirical_lower = 0.0;
  std::optional<double> exact;
  double smoothing = kEmpiricalSmoothing;
  int trials = 0;

  /// Best upper bound minus the empirical lower bound.
  double gap() const;
};

ContractionReport contraction_report(const Kernel& kernel, int trials = 1000, std::uint64_t seed = 0);

}  // namespace credit

#endif  // CREDIT_CONTRACTION_HPP
