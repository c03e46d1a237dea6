#include "credit/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credit/errors.hpp"

namespace credit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ln(eta^gap * delta2)
double log_signal(double eta, double delta2, int gap) { return static_cast<double>(gap) * std::log(eta) + std::log(delta2); }

void require_gap(int gap) { detail::require(gap >= 0, "gap must be non-negative"); }

}  // namespace

void HorizonParams::validate() const {
  detail::require(std::isfinite(n) && n > 0.0, "n must be positive");
  detail::require(std::isfinite(delta2) && delta2 > 0.0, "delta2 must be positive");
  detail::require(epsilon > 0.0 && epsilon < 0.5, "epsilon must lie in (0,1/2)");
  detail::require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
}

const char* to_string(Regime regime) { return regime == Regime::kDecayed ? "DECAYED" : "SEPARATED"; }

SampleBound sample_lb(const HorizonParams& params, int gap) {
  params.validate();
  require_gap(gap);
  SampleBound bound;
  const double signal = log_signal(params.eta, params.delta2, gap);
  bound.regime = signal > 0.0 ? Regime::kSeparated : Regime::kDecayed;
  bound.log_value = 2.0 * std::log1p(-params.epsilon) - signal;
  bound.value = std::exp(bound.log_value);
  bound.overflow = std::isinf(bound.value);
  return bound;
}

double critical_horizon(const HorizonParams& params) {
  params.validate();
  const double budget = std::log(params.n * params.delta2) - 2.0 * std::log1p(-params.epsilon);
  return std::max(0.0, budget / -std::log(params.eta));
}

double critical_horizon_simplified(double n, double delta2, double eta) {
  detail::require(n > 0.0, "n must be positive");
  detail::require(delta2 > 0.0, "delta2 must be positive");
  detail::require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  return std::max(0.0, std::log(n * delta2) / -std::log(eta));
}

double minimax_error_lb(const HorizonParams& params, int gap) {
  params.validate();
  require_gap(gap);
  const double signal = std::exp(log_signal(params.eta, params.delta2, gap));
  const double product_chi2 = std::expm1(params.n * std::log1p(signal));
  const double floor = 0.5 * (1.0 - std::sqrt(product_chi2 / 2.0));
  return std::clamp(floor, 0.0, 0.5);
}

double sample_cap_for_error(const HorizonParams& params, int gap) {
  params.validate();
  require_gap(gap);
  const double slack = 1.0 - 2.0 * params.epsilon;
  return std::log1p(2.0 * slack * slack) * std::exp(-log_signal(params.eta, params.delta2, gap));
}

LumpabilityBound approx_lumpability_tv(double eta, double delta2, int gap, double delta_step, double epsilon) {
  detail::require(eta > 0.0 && eta <= 1.0, "eta must lie in (0,1]");
  detail::require(delta2 >= 0.0, "delta2 must be non-negative");
  detail::require(delta_step >= 0.0, "per-step discrepancy must be non-negative");
  detail::require(epsilon > 0.0 && epsilon < 0.5, "epsilon must lie in (0,1/2)");
  require_gap(gap);
  LumpabilityBound out;
  const double signal = delta2 > 0.0 ? std::exp(log_signal(eta, delta2, gap)) : 0.0;
  out.tv_bound = std::min(1.0, std::sqrt(signal / 2.0) + 2.0 * static_cast<double>(gap) * delta_step);
  out.n_lb = out.tv_bound > 0.0 ? (1.0 - 2.0 * epsilon) / out.tv_bound : kInf;
  return out;
}

double noisy_outcome_adjust(const HorizonParams& params, double eta_g) {
  detail::require(eta_g > 0.0 && eta_g <= 1.0, "eta_g must lie in (0,1]");
  const double shrink = std::log(eta_g) / std::log(params.eta);
  return std::max(0.0, critical_horizon(params) - shrink);
}

Achievability achievability_n(double eta, double delta2, int gap, double p0, double epsilon) {
  detail::require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  detail::require(delta2 >= 0.0, "delta2 must be non-negative");
  detail::require(p0 > 0.0 && p0 < 1.0, "p0 must lie in (0,1)");
  detail::require(epsilon > 0.0 && epsilon < 0.5, "epsilon must lie in (0,1/2)");
  require_gap(gap);

  Achievability out;
  const double hoeffding = 2.0 * std::log(2.0 / epsilon);
  if (delta2 == 0.0) {
    out.p1 = p0;
    out.indistinguishable = true;
    out.n = kInf;
    return out;
  }
  const double signal = std::exp(log_signal(eta, delta2, gap));
  if (signal > 1.0) {
    // Separated: a constant number of samples suffices.
    out.regime = Regime::kSeparated;
    out.p1 = std::numeric_limits<double>::quiet_NaN();
    out.bernoulli_chi2 = kInf;
    out.n = hoeffding;
    return out;
  }
  const double shift = std::sqrt(signal);
  out.p1 = p0 + shift;
  detail::require(out.p1 > 0.0 && out.p1 < 1.0, "p1 = p0 + shift must lie in (0,1)");
  out.bernoulli_chi2 = shift * shift * (1.0 / out.p1 + 1.0 / (1.0 - out.p1));
  if (shift == 0.0) {
    out.indistinguishable = true;
    out.n = kInf;
  } else {
    out.n = hoeffding / (shift * shift);
  }
  return out;
}

}  // namespace credit
