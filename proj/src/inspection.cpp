#include "credit/inspection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credit/errors.hpp"
#include "credit/horizon.hpp"

namespace credit {

namespace {

void require_sample_inputs(double delta2, double epsilon) {
  detail::require(delta2 > 0.0, "delta2 must be positive");
  detail::require(epsilon > 0.0 && epsilon < 0.5, "epsilon must lie in (0,1/2)");
}

// (1 - eps)^2 / (exp(-info) * delta2), evaluated in log space.
double sample_bound_from_info(double info_distance, double delta2, double epsilon) {
  return std::exp(2.0 * std::log1p(-epsilon) + info_distance - std::log(delta2));
}

}  // namespace

Schedule::Schedule(int horizon, std::vector<int> times) : horizon_(horizon), times_(std::move(times)) {
  detail::require(horizon_ >= 1, "horizon must be positive");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    detail::require(times_[i] >= 1 && times_[i] <= horizon_ - 1, "inspection times must lie in {1, ..., H-1}");
    detail::require(i == 0 || times_[i - 1] < times_[i], "inspection times must be strictly increasing");
  }
}

std::vector<int> Schedule::augmented() const {
  std::vector<int> points;
  points.reserve(times_.size() + 2);
  points.push_back(0);
  points.insert(points.end(), times_.begin(), times_.end());
  points.push_back(horizon_);
  return points;
}

int downstream_distance(const Schedule& schedule, int t) {
  detail::require(t >= 0 && t < schedule.horizon(), "step must lie in [0, H)");
  const auto& times = schedule.times();
  const auto next = std::upper_bound(times.begin(), times.end(), t);
  return (next == times.end() ? schedule.horizon() : *next) - t;
}

int maximal_gap(const Schedule& schedule) {
  const auto points = schedule.augmented();
  int gap = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    gap = std::max(gap, points[i] - points[i - 1]);
  }
  return gap;
}

std::vector<double> information_distances(std::span<const double> etas) {
  std::vector<double> w;
  w.reserve(etas.size());
  for (double eta : etas) {
    detail::require(eta > 0.0 && eta <= 1.0, "each eta must lie in (0,1]");
    w.push_back(-std::log(eta));
  }
  return w;
}

std::vector<Segment> segment_report(const Schedule& schedule, std::span<const double> etas, double delta2, double epsilon) {
  detail::require(static_cast<int>(etas.size()) == schedule.horizon(), "need one eta per step");
  require_sample_inputs(delta2, epsilon);
  const auto w = information_distances(etas);
  const auto points = schedule.augmented();
  std::vector<Segment> segments;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Segment s;
    s.start = points[i - 1];
    s.end = points[i];
    for (int t = s.start; t < s.end; ++t) {
      s.info_distance += w[static_cast<std::size_t>(t)];
    }
    s.attenuation = std::exp(-s.info_distance);
    s.worst_step_sample_lb = sample_bound_from_info(s.info_distance, delta2, epsilon);
    segments.push_back(s);
  }
  return segments;
}

Schedule uniform_schedule(int horizon, int m) {
  detail::require(horizon >= 1, "horizon must be positive");
  detail::require(m >= 0 && m <= horizon - 1, "m must lie in [0, H-1]");
  std::vector<int> times;
  times.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    times.push_back(static_cast<int>(static_cast<long long>(i) * horizon / (m + 1)));
  }
  return Schedule(horizon, std::move(times));
}

int min_gap_value(int horizon, int m) {
  detail::require(horizon >= 1, "horizon must be positive");
  detail::require(m >= 0, "m must be non-negative");
  return (horizon + m) / (m + 1);
}

int min_inspections(int horizon, double h_crit) {
  detail::require(horizon >= 1, "horizon must be positive");
  if (!(h_crit > 0.0)) {
    throw Infeasible("critical horizon is zero: no inspection schedule makes any step distinguishable");
  }
  const double segments = std::ceil(static_cast<double>(horizon) / h_crit);
  return std::max(0, static_cast<int>(segments) - 1);
}

double feasibility_threshold(double n, double delta2, double epsilon) {
  detail::require(n * delta2 > 0.0, "n * delta2 must be positive");
  detail::require(epsilon > 0.0 && epsilon < 0.5, "epsilon must lie in (0,1/2)");
  return std::log(n * delta2) - 2.0 * std::log1p(-epsilon);
}

Schedule greedy_schedule(std::span<const double> etas, double gamma, std::optional<double> inspection_fidelity) {
  detail::require(!etas.empty(), "need at least one step");
  detail::require(gamma > 0.0, "gamma must be positive");
  double budget = gamma;
  if (inspection_fidelity) {
    detail::require(*inspection_fidelity > 0.0 && *inspection_fidelity <= 1.0, "eta_g must lie in (0,1]");
    budget += std::log(*inspection_fidelity);
  }
  if (budget <= 0.0) {
    throw Infeasible("inspection fidelity penalty exhausts the per-segment budget");
  }

  const auto w = information_distances(etas);
  const double slack = kInfoTolerance * std::max(1.0, budget);
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (w[t] > budget + slack) {
      throw Infeasible("step " + std::to_string(t) + " alone exceeds the per-segment information budget",
                       static_cast<int>(t));
    }
  }

  std::vector<int> times;
  double used = 0.0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (used + w[t] > budget + slack) {
      times.push_back(static_cast<int>(t));
      used = 0.0;
    }
    used += w[t];
  }
  return Schedule(static_cast<int>(etas.size()), std::move(times));
}

WorstCase worst_case_sample_lb(const Schedule& schedule, std::span<const double> etas, double delta2, double epsilon) {
  const auto segments = segment_report(schedule, etas, delta2, epsilon);
  WorstCase worst{segments.front().start, -1.0};
  double worst_info = -1.0;
  for (const auto& s : segments) {
    if (s.info_distance > worst_info) {
      worst_info = s.info_distance;
      worst.step = s.start;
    }
  }
  worst.bound = sample_bound_from_info(worst_info, delta2, epsilon);
  return worst;
}

WorstCase worst_case_sample_lb(const Schedule& schedule, double eta, double delta2, double epsilon) {
  detail::require(eta > 0.0 && eta <= 1.0, "eta must lie in (0,1]");
  const std::vector<double> etas(static_cast<std::size_t>(schedule.horizon()), eta);
  return worst_case_sample_lb(schedule, std::span<const double>(etas), delta2, epsilon);
}

double budget_lb(const BudgetParams& budget, int m, int horizon, double eta, double delta2, double epsilon) {
  detail::require(budget.c_out > 0.0, "c_out must be positive");
  detail::require(budget.c_insp >= 0.0, "c_insp must be non-negative");
  detail::require(eta > 0.0 && eta <= 1.0, "eta must lie in (0,1]");
  require_sample_inputs(delta2, epsilon);
  const int gap = min_gap_value(horizon, m);
  const double per_trajectory = budget.c_out + static_cast<double>(m) * budget.c_insp;
  return per_trajectory * sample_bound_from_info(-static_cast<double>(gap) * std::log(eta), delta2, epsilon);
}

BudgetOptimum budget_optimize(const BudgetParams& budget, int horizon, double n, double eta, double delta2, double epsilon) {
  detail::require(horizon >= 1, "horizon must be positive");
  BudgetOptimum out;
  const int last = std::min(horizon - 1, 10000);
  out.min_budget = std::numeric_limits<double>::infinity();
  std::optional<double> h_crit;
  if (eta < 1.0) {
    h_crit = critical_horizon(HorizonParams{n, delta2, epsilon, eta});
  }
  for (int m = 0; m <= last; ++m) {
    const double value = budget_lb(budget, m, horizon, eta, delta2, epsilon);
    if (value < out.min_budget) {
      out.min_budget = value;
      out.argmin_m = m;
    }
    const bool fits = !h_crit || static_cast<double>(min_gap_value(horizon, m)) <= *h_crit;
    if (!out.practical_m && fits) {
      out.practical_m = m;
      out.practical_budget = value;
    }
  }
  out.scanned = last + 1;
  return out;
}

double poly_density_min(int horizon, double p, double eta) {
  detail::require(horizon >= 3, "H must be at least 3");
  detail::require(p > 0.0, "p must be positive");
  detail::require(eta > 0.0 && eta <= 1.0, "eta must lie in (0,1]");
  const double h = static_cast<double>(horizon);
  return std::max(0.0, h * -std::log(eta) / (p * std::log(h)) - 1.0);
}

DesignPlan design_procedure(const DesignInputs& inputs) {
  detail::require(inputs.horizon >= 1, "horizon must be positive");
  detail::require(inputs.eta.has_value() != !inputs.etas.empty(), "give exactly one of eta or etas");
  require_sample_inputs(inputs.delta2, inputs.epsilon);
  detail::require(inputs.n > 0.0, "n must be positive");

  DesignPlan plan;
  plan.homogeneous = inputs.eta.has_value();
  plan.gamma = feasibility_threshold(inputs.n, inputs.delta2, inputs.epsilon);
  plan.effective_gamma = plan.gamma;
  if (inputs.eta_g) {
    detail::require(*inputs.eta_g > 0.0 && *inputs.eta_g <= 1.0, "eta_g must lie in (0,1]");
    plan.effective_gamma += std::log(*inputs.eta_g);
  }

  std::vector<double> etas = inputs.etas;
  if (plan.homogeneous) {
    const double eta = *inputs.eta;
    detail::require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
    etas.assign(static_cast<std::size_t>(inputs.horizon), eta);
    const double h_crit = std::max(0.0, plan.effective_gamma / -std::log(eta));
    plan.h_crit = h_crit;
    plan.m_necessary = min_inspections(inputs.horizon, h_crit);
    const int longest_feasible = static_cast<int>(std::floor(h_crit + kInfoTolerance));
    if (longest_feasible < 1) {
      throw Infeasible("a single step exceeds the critical horizon", 0);
    }
    int m = plan.m_necessary;
    while (min_gap_value(inputs.horizon, m) > longest_feasible) {
      ++m;
    }
    plan.m_sufficient = m;
    plan.schedule = uniform_schedule(inputs.horizon, m);
  } else {
    detail::require(static_cast<int>(etas.size()) == inputs.horizon, "etas must have one entry per step");
    plan.schedule = greedy_schedule(etas, plan.gamma, inputs.eta_g);
    plan.m_necessary = plan.schedule.size();
    plan.m_sufficient = plan.schedule.size();
  }

  plan.segments = segment_report(plan.schedule, etas, inputs.delta2, inputs.epsilon);
  plan.worst_case = worst_case_sample_lb(plan.schedule, etas, inputs.delta2, inputs.epsilon);
  plan.feasible = plan.worst_case.bound <= inputs.n * (1.0 + kInfoTolerance);
  if (inputs.budget) {
    detail::require(inputs.budget->c_out > 0.0 && inputs.budget->c_insp >= 0.0, "costs must be non-negative with c_out > 0");
    const double per_trajectory = inputs.budget->c_out + plan.schedule.size() * inputs.budget->c_insp;
    plan.budget_lb = per_trajectory * plan.worst_case.bound;
    plan.study_cost = per_trajectory * inputs.n;
  }
  return plan;
}

}  // namespace credit
