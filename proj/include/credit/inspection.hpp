#ifndef CREDIT_INSPECTION_HPP
#define CREDIT_INSPECTION_HPP

#include <optional>
#include <span>
#include <vector>

namespace credit {

/// Intermediate inspection times 0 < t_1 < ... < t_m < H. The terminal outcome at H closes the last segment.
class Schedule {
 public:
  Schedule(int horizon, std::vector<int> times);

  int horizon() const noexcept { return horizon_; }
  const std::vector<int>& times() const noexcept { return times_; }
  int size() const noexcept { return static_cast<int>(times_.size()); }

  /// 0, t_1, ..., t_m, H.
  std::vector<int> augmented() const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  int horizon_;
  std::vector<int> times_;
};

/// Slack used when comparing accumulated information distance against a budget.
inline constexpr double kInfoTolerance = 1e-9;

/// Distance from step t to the first checkpoint strictly after it (the outcome at H counts).
int downstream_distance(const Schedule& schedule, int t);

/// Longest run between consecutive checkpoints of the augmented schedule.
int maximal_gap(const Schedule& schedule);

/// w_t = ln(1/eta_t) for every step.
std::vector<double> information_distances(std::span<const double> etas);

struct Segment {
  int start = 0;
  int end = 0;
  double info_distance = 0.0;
  double attenuation = 1.0;
  /// (1 - eps)^2 / (attenuation * delta2) for the segment's first step.
  double worst_step_sample_lb = 0.0;

  int length() const noexcept { return end - start; }
};

std::vector<Segment> segment_report(const Schedule& schedule, std::span<const double> etas, double delta2, double epsilon);

/// t_i = floor(i H / (m + 1)).
Schedule uniform_schedule(int horizon, int m);

/// ceil(H / (m + 1)).
int min_gap_value(int horizon, int m);

/// max(0, ceil(H / h_crit) - 1). Necessary only; rounding may require one more.
int min_inspections(int horizon, double h_crit);

/// Gamma = ln(n delta2) - 2 ln(1 - eps): information distance a segment may span.
double feasibility_threshold(double n, double delta2, double epsilon);

/**
 * Greedy information-distance placement.
 *
 * From each checkpoint the segment is extended while its cumulative
 * information distance stays within gamma - ln(1/eta_g); the next inspection
 * goes at the first step that would overflow. The terminal segment is checked
 * like any other. Throws Infeasible carrying the step index when a single
 * step already exceeds the budget.
 */
Schedule greedy_schedule(std::span<const double> etas, double gamma, std::optional<double> inspection_fidelity = std::nullopt);

struct WorstCase {
  int step = 0;
  double bound = 0.0;
};

/// Worst step (first step of the most attenuated segment, smallest index on ties) and its sample bound.
WorstCase worst_case_sample_lb(const Schedule& schedule, std::span<const double> etas, double delta2, double epsilon);
WorstCase worst_case_sample_lb(const Schedule& schedule, double eta, double delta2, double epsilon);

struct BudgetParams {
  double c_out = 1.0;
  double c_insp = 0.0;
};

/// (c_out + m c_insp) (1 - eps)^2 / (eta^ceil(H/(m+1)) delta2).
double budget_lb(const BudgetParams& budget, int m, int horizon, double eta, double delta2, double epsilon);

struct BudgetOptimum {
  int argmin_m = 0;
  double min_budget = 0.0;
  /// Smallest m whose maximal gap fits within the critical horizon at sample size n.
  std::optional<int> practical_m;
  std::optional<double> practical_budget;
  int scanned = 0;
};

/// Scans m = 0..min(H - 1, 10^4).
BudgetOptimum budget_optimize(const BudgetParams& budget, int horizon, double n, double eta, double delta2, double epsilon);

/// (H ln(1/eta)) / (p ln H) - 1, floored at 0: inspections needed for n = O(H^p), up to constants.
double poly_density_min(int horizon, double p, double eta);

struct DesignInputs {
  int horizon = 0;
  /// Exactly one of eta / etas is set.
  std::optional<double> eta;
  std::vector<double> etas;
  double n = 1.0;
  double delta2 = 1.0;
  double epsilon = 0.1;
  std::optional<BudgetParams> budget;
  std::optional<double> eta_g;
};

struct DesignPlan {
  bool homogeneous = true;
  double gamma = 0.0;
  /// Segment budget after the inspection-fidelity penalty.
  double effective_gamma = 0.0;
  std::optional<double> h_crit;
  int m_necessary = 0;
  int m_sufficient = 0;
  Schedule schedule{1, {}};
  std::vector<Segment> segments;
  WorstCase worst_case;
  bool feasible = false;
  std::optional<double> budget_lb;
  std::optional<double> study_cost;
};

/// Threshold, horizon, inspection count, placement and budget check, in that order.
DesignPlan design_procedure(const DesignInputs& inputs);

}  // namespace credit

#endif  // CREDIT_INSPECTION_HPP
