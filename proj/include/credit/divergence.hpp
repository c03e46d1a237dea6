#ifndef CREDIT_DIVERGENCE_HPP
#define CREDIT_DIVERGENCE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "credit/errors.hpp"
#include "credit/markov.hpp"

namespace credit {

/// Entries of both P and Q below this are treated as outside the support.
inline constexpr double kSupportDust = 1e-15;

/// chi^2(P || Q) = sum_i (P_i - Q_i)^2 / Q_i. Q is the reference.
template <typename Scalar>
Scalar chi2(const BasicProbVec<Scalar>& p, const BasicProbVec<Scalar>& q) {
  detail::require(p.size() == q.size(), "distributions must have the same dimension");
  Scalar total(0);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p[i];
    const Scalar qi = q[i];
    if (pi < Scalar(kSupportDust) && qi < Scalar(kSupportDust)) {
      continue;
    }
    if (qi <= Scalar(0)) {
      throw AbsoluteContinuityViolated(static_cast<int>(i));
    }
    const Scalar diff = pi - qi;
    total += diff * diff / qi;
  }
  return total;
}

/// Total variation distance, half the L1 distance.
template <typename Scalar>
Scalar tv(const BasicProbVec<Scalar>& p, const BasicProbVec<Scalar>& q) {
  detail::require(p.size() == q.size(), "distributions must have the same dimension");
  const Scalar half_l1 = (p.entries() - q.entries()).cwiseAbs().sum() / Scalar(2);
  return std::clamp(half_l1, Scalar(0), Scalar(1));
}

/// Minimum over tests of type-I plus type-II error, i.e. 1 - TV.
template <typename Scalar>
Scalar lecam_total_error(const BasicProbVec<Scalar>& p, const BasicProbVec<Scalar>& q) {
  return Scalar(1) - tv(p, q);
}

/// chi^2 of the n-fold product: (1 + chi2)^n - 1, evaluated as expm1(n log1p(chi2)).
inline double tensorize_chi2(double chi2_single, long long n) {
  detail::require(chi2_single >= 0.0, "chi2 must be non-negative");
  detail::require(n >= 1, "n must be positive");
  return std::expm1(static_cast<double>(n) * std::log1p(chi2_single));
}

/// Pinsker-type bound TV <= sqrt(chi2 / 2), clipped to 1.
inline double tv_upper_from_chi2(double chi2_value) {
  detail::require(chi2_value >= 0.0, "chi2 must be non-negative");
  return std::min(1.0, std::sqrt(chi2_value / 2.0));
}

/// chi^2 between two propagated distributions at each step from `start_step` to the horizon.
struct DecayCurve {
  struct Point {
    int step;
    double chi2;
  };

  int start_step = 0;
  int horizon = 0;
  std::vector<Point> values;
};

template <typename Scalar>
DecayCurve decay_curve(const BasicChainSpec<Scalar>& spec, const BasicProbVec<Scalar>& p_t, const BasicProbVec<Scalar>& q_t,
                       int t) {
  detail::require(t >= 0 && t <= spec.horizon(), "start step must lie in [0, H]");
  detail::require(p_t.size() == spec.states() && q_t.size() == spec.states(), "distributions must match the chain dimension");
  DecayCurve curve;
  curve.start_step = t;
  curve.horizon = spec.horizon();
  curve.values.reserve(static_cast<std::size_t>(spec.horizon() - t + 1));

  BasicProbVec<Scalar> p = p_t;
  BasicProbVec<Scalar> q = q_t;
  curve.values.push_back({t, static_cast<double>(chi2(p, q))});
  for (int u = t; u < spec.horizon(); ++u) {
    p = propagate(p, spec.kernel(u));
    q = propagate(q, spec.kernel(u));
    curve.values.push_back({u + 1, static_cast<double>(chi2(p, q))});
  }
  return curve;
}

/// Writes step,distance_to_end,chi2_measured,chi2_theory. The theory column is
/// eta^(u - start_step) * delta2 when `homogeneous_eta` is given and blank otherwise.
void write_decay_curve_csv(std::ostream& out, const DecayCurve& curve, std::optional<double> homogeneous_eta,
                           double delta2);

}  // namespace credit

#endif  // CREDIT_DIVERGENCE_HPP
