#include "credit/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "credit/contraction.hpp"
#include "credit/divergence.hpp"
#include "credit/errors.hpp"
#include "credit/horizon.hpp"
#include "credit/inspection.hpp"
#include "credit/markov.hpp"
#include "credit/objectives.hpp"
#include "credit/parallel.hpp"
#include "credit/random.hpp"
#include "credit/width.hpp"

namespace credit {

using nlohmann::json;

namespace {

constexpr std::uint64_t kind_id(ExperimentKind kind) { return static_cast<std::uint64_t>(kind); }

std::uint64_t unit_id(std::uint64_t major, std::uint64_t minor) { return (major << 32U) | minor; }

void require_replicates(int replicates) { detail::require(replicates >= 1, "replicates must be at least 1"); }

// Exact outcome probabilities d steps after delta_0 (first) and uniform (second).
std::vector<std::pair<double, double>> outcome_probs_by_distance(double eta, int states, int horizon,
                                                                 const std::vector<int>& success_set) {
  const ChainSpec spec(horizon, mixture_kernel(eta, states), success_set, uniform_dist(states));
  ProbVec p = point_mass(0, states);
  ProbVec q = uniform_dist(states);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(horizon) + 1);
  out.emplace_back(outcome_prob(p, spec.success_set()), outcome_prob(q, spec.success_set()));
  for (int d = 1; d <= horizon; ++d) {
    p = propagate(p, spec.kernel(horizon - d));
    q = propagate(q, spec.kernel(horizon - d));
    out.emplace_back(outcome_prob(p, spec.success_set()), outcome_prob(q, spec.success_set()));
  }
  return out;
}

// Midpoint test: decide H0 iff the count is strictly nearer to n p0 than to n p1.
bool decides_h0(int count, int n, double p0, double p1) {
  const double c = static_cast<double>(count);
  return std::abs(c - n * p0) < std::abs(c - n * p1);
}

int bernoulli_count(Engine& engine, int n, double p) {
  int count = 0;
  for (int i = 0; i < n; ++i) {
    count += bernoulli(engine, p) ? 1 : 0;
  }
  return count;
}

void validate(const DecayConfig& cfg) {
  detail::require(!cfg.etas.empty(), "decay needs at least one eta");
  for (double eta : cfg.etas) {
    detail::require(eta > 0.0 && eta <= 1.0, "eta must lie in (0,1]");
  }
  detail::require(cfg.states >= 2, "states must be at least 2");
  detail::require(cfg.horizon >= 1, "H must be positive");
}

void validate(const WidthConfig& cfg) {
  detail::require(cfg.rho >= 0.0 && cfg.rho < 1.0, "rho must lie in [0,1)");
  detail::require(cfg.value > 0.0 && cfg.value < 1.0, "value must lie in (0,1)");
  detail::require(!cfg.widths.empty(), "width list must be nonempty");
  for (int w : cfg.widths) {
    detail::require(w >= 1, "W must be at least 1");
  }
  detail::require(cfg.groups >= 2, "groups must be at least 2");
}

void validate(const InspectionConfig& cfg) {
  detail::require(cfg.horizon >= 1, "H must be positive");
  detail::require(cfg.eta > 0.0 && cfg.eta <= 1.0, "eta must lie in (0,1]");
  detail::require(cfg.states >= 2, "states must be at least 2");
  detail::require(cfg.n_per_test >= 1, "n_per_test must be positive");
  detail::require(cfg.trials >= 1, "trials must be positive");
  detail::require(!cfg.schedules.empty(), "schedule list must be nonempty");
}

void validate(const HorizonExperimentConfig& cfg) {
  detail::require(cfg.horizon >= 1, "H must be positive");
  detail::require(cfg.states >= 2, "states must be at least 2");
  detail::require(cfg.n >= 1, "n must be positive");
  detail::require(!cfg.etas.empty(), "eta list must be nonempty");
  for (double eta : cfg.etas) {
    detail::require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  }
  detail::require(cfg.trials >= 1, "trials must be positive");
  detail::require(cfg.epsilon > 0.0 && cfg.epsilon < 0.5, "epsilon must lie in (0,1/2)");
}

void validate(const MismatchConfig& cfg) {
  detail::require(cfg.p >= 0.0 && cfg.p <= 1.0, "p must lie in [0,1]");
  detail::require(cfg.horizon >= 1, "H must be positive");
  detail::require(cfg.threshold > 0.0 && cfg.threshold <= 1.0, "threshold must lie in (0,1]");
  detail::require(cfg.chains >= 2, "chains must be at least 2");
}

void validate(const OracleConfig& cfg) {
  detail::require(cfg.max_horizon >= 1 && cfg.max_horizon <= 14, "max_horizon must lie in [1,14]");
  detail::require(cfg.max_m >= 0, "max_m must be non-negative");
  detail::require(cfg.random_vectors >= 0, "random_vectors must be non-negative");
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kDecay:
      return "decay";
    case ExperimentKind::kWidth:
      return "width";
    case ExperimentKind::kInspection:
      return "inspection";
    case ExperimentKind::kHorizon:
      return "horizon";
    case ExperimentKind::kMismatch:
      return "mismatch";
    case ExperimentKind::kOracle:
      return "oracle";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto kind : {ExperimentKind::kDecay, ExperimentKind::kWidth, ExperimentKind::kInspection, ExperimentKind::kHorizon,
                    ExperimentKind::kMismatch, ExperimentKind::kOracle}) {
    if (name == to_string(kind)) {
      return kind;
    }
  }
  throw InvalidArgument("unknown experiment kind '" + name + "'");
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  detail::require(x.size() == y.size() && x.size() >= 2, "fit needs at least two paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  detail::require(sxx > 0.0, "fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

ResultTable run_decay(const DecayConfig& cfg) {
  validate(cfg);
  ResultTable table;
  table.columns = {"step", "distance_to_end", "eta", "chi2_measured", "chi2_theory"};
  json fits = json::array();
  for (double eta : cfg.etas) {
    const ChainSpec spec(cfg.horizon, mixture_kernel(eta, cfg.states), {0}, uniform_dist(cfg.states));
    const ProbVec p = point_mass(0, cfg.states);
    const ProbVec q = uniform_dist(cfg.states);
    const double delta2 = chi2(p, q);
    const std::vector<double> etas(static_cast<std::size_t>(cfg.horizon), eta);

    std::vector<double> distance;
    std::vector<double> log_chi2;
    double max_abs_error = 0.0;
    for (int u = 0; u <= cfg.horizon; ++u) {
      // Perturbation at step u, read off at the terminal state.
      const double measured = decay_curve(spec, p, q, u).values.back().chi2;
      const double theory = delta2 * attenuation(etas, u, cfg.horizon);
      table.add_row({std::int64_t{u}, std::int64_t{cfg.horizon - u}, eta, measured, theory});
      max_abs_error = std::max(max_abs_error, std::abs(measured - theory));
      distance.push_back(cfg.horizon - u);
      log_chi2.push_back(std::log(measured));
    }
    const LinearFit fit = fit_line(distance, log_chi2);
    fits.push_back({{"eta", eta}, {"slope", fit.slope}, {"log_eta", std::log(eta)}, {"r2", fit.r2},
                    {"delta2", delta2}, {"max_abs_error", max_abs_error}});
  }
  table.metadata["summary"] = {{"fits", fits}};
  return table;
}

ResultTable run_width(const WidthConfig& cfg, std::uint64_t master_seed, int replicates, const RunOptions& options) {
  validate(cfg);
  require_replicates(replicates);
  const EquicorrelatedSampler sampler(cfg.value, cfg.rho);
  ResultTable table;
  table.columns = {"replicate", "W", "rho", "value", "groups", "weff_empirical", "weff_theory", "var_single", "var_mean"};
  const auto groups = static_cast<std::size_t>(cfg.groups);

  for (int r = 0; r < replicates; ++r) {
    for (std::size_t wi = 0; wi < cfg.widths.size(); ++wi) {
      const int width = cfg.widths[wi];
      std::vector<int> successes(groups);
      parallel_for(groups, options.threads, [&](std::size_t g) {
        Engine engine = make_engine(derive_seed(master_seed, kind_id(ExperimentKind::kWidth), static_cast<std::uint64_t>(r),
                                                unit_id(wi, g)));
        std::vector<int> outcomes(static_cast<std::size_t>(width));
        successes[g] = sampler.sample(engine, outcomes);
      });

      const double n_groups = static_cast<double>(groups);
      const double n_outcomes = n_groups * width;
      double total = 0.0;
      double mean_sq = 0.0;
      for (int s : successes) {
        total += s;
        const double m = static_cast<double>(s) / width;
        mean_sq += m * m;
      }
      const double mu = total / n_outcomes;
      // Outcomes are 0/1, so the sum of squares equals the sum.
      const double var_single = (total - n_outcomes * mu * mu) / (n_outcomes - 1.0);
      const double var_mean = (mean_sq - n_groups * mu * mu) / (n_groups - 1.0);
      table.add_row({std::int64_t{r}, std::int64_t{width}, cfg.rho, cfg.value, std::int64_t{cfg.groups}, var_single / var_mean,
                     effective_width(width, cfg.rho), var_single, var_mean});
    }
  }
  table.metadata["summary"] = {{"saturation_cap", cfg.rho > 0.0 ? 1.0 / cfg.rho : std::numeric_limits<double>::infinity()}};
  return table;
}

ResultTable run_inspection(const InspectionConfig& cfg, std::uint64_t master_seed, int replicates, const RunOptions& options) {
  validate(cfg);
  require_replicates(replicates);
  std::vector<Schedule> schedules;
  for (const auto& times : cfg.schedules) {
    schedules.emplace_back(cfg.horizon, times);
  }
  const auto probs = outcome_probs_by_distance(cfg.eta, cfg.states, cfg.horizon, cfg.success_set);
  const auto steps = static_cast<std::size_t>(cfg.horizon);
  const double trials = static_cast<double>(cfg.trials);

  ResultTable table;
  table.columns = {"replicate",   "schedule",    "max_gap",     "worst_step",     "worst_distance",
                   "worst_error", "worst_error_se", "worst_misclassification", "worst_case_sample_lb"};
  json per_schedule = json::array();

  for (int r = 0; r < replicates; ++r) {
    for (std::size_t s = 0; s < schedules.size(); ++s) {
      const Schedule& schedule = schedules[s];
      std::vector<double> errors(steps);
      parallel_for(steps, options.threads, [&](std::size_t t) {
        const int d = downstream_distance(schedule, static_cast<int>(t));
        const auto [p0, p1] = probs[static_cast<std::size_t>(d)];
        // Seeded by step only: schedules are compared on matched draws.
        Engine engine = make_engine(derive_seed(master_seed, kind_id(ExperimentKind::kInspection),
                                                static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(t)));
        long long type_i = 0;
        long long type_ii = 0;
        for (int k = 0; k < cfg.trials; ++k) {
          const int under_h0 = bernoulli_count(engine, cfg.n_per_test, p0);
          const int under_h1 = bernoulli_count(engine, cfg.n_per_test, p1);
          type_i += decides_h0(under_h0, cfg.n_per_test, p0, p1) ? 0 : 1;
          type_ii += decides_h0(under_h1, cfg.n_per_test, p0, p1) ? 1 : 0;
        }
        errors[t] = static_cast<double>(type_i) / trials + static_cast<double>(type_ii) / trials;
      });

      std::size_t worst = 0;
      for (std::size_t t = 1; t < steps; ++t) {
        if (errors[t] > errors[worst]) {
          worst = t;
        }
      }
      // Two independent proportions; each variance is at most 1/4 per trial.
      const double a = std::clamp(errors[worst] / 2.0, 0.0, 1.0);
      const double se = std::sqrt(2.0 * a * (1.0 - a) / trials);
      const WorstCase theory = worst_case_sample_lb(schedule, cfg.eta, chi2(point_mass(0, cfg.states), uniform_dist(cfg.states)),
                                                    0.1);
      table.add_row({std::int64_t{r}, static_cast<std::int64_t>(s), std::int64_t{maximal_gap(schedule)},
                     static_cast<std::int64_t>(worst), std::int64_t{downstream_distance(schedule, static_cast<int>(worst))},
                     errors[worst], se, errors[worst] / 2.0, theory.bound});
      if (r == 0) {
        per_schedule.push_back({{"schedule", s}, {"times", schedule.times()}, {"step_errors", errors}});
      }
    }
  }
  table.metadata["summary"] = {{"schedules", per_schedule},
                               {"error_definition", "total testing error of the midpoint test: type I + type II"}};
  return table;
}

ResultTable run_horizon(const HorizonExperimentConfig& cfg, std::uint64_t master_seed, int replicates,
                        const RunOptions& options) {
  validate(cfg);
  require_replicates(replicates);
  ResultTable table;
  table.columns = {"replicate", "eta", "distance", "accuracy", "accuracy_se", "p0", "p1", "outcome_chi2", "h_crit_simplified",
                   "h_crit"};
  const double delta2 = chi2(point_mass(0, cfg.states), uniform_dist(cfg.states));
  const auto distances = static_cast<std::size_t>(cfg.horizon) + 1;
  json crossings = json::array();

  for (int r = 0; r < replicates; ++r) {
    for (std::size_t ei = 0; ei < cfg.etas.size(); ++ei) {
      const double eta = cfg.etas[ei];
      const auto probs = outcome_probs_by_distance(eta, cfg.states, cfg.horizon, cfg.success_set);
      const double h_simple = critical_horizon_simplified(cfg.n, delta2, eta);
      const double h_full = critical_horizon(HorizonParams{static_cast<double>(cfg.n), delta2, cfg.epsilon, eta});
      std::vector<double> accuracy(distances);
      parallel_for(distances, options.threads, [&](std::size_t d) {
        const auto [p0, p1] = probs[d];
        Engine engine =
            make_engine(derive_seed(master_seed, kind_id(ExperimentKind::kHorizon), static_cast<std::uint64_t>(r), unit_id(ei, d)));
        std::binomial_distribution<int> draw0(cfg.n, p0);
        std::binomial_distribution<int> draw1(cfg.n, p1);
        long long correct = 0;
        for (int k = 0; k < cfg.trials; ++k) {
          const bool truth_h0 = bernoulli(engine, 0.5);
          const int count = truth_h0 ? draw0(engine) : draw1(engine);
          correct += decides_h0(count, cfg.n, p0, p1) == truth_h0 ? 1 : 0;
        }
        accuracy[d] = static_cast<double>(correct) / cfg.trials;
      });

      std::optional<int> first_chance;
      for (std::size_t d = 0; d < distances; ++d) {
        const auto [p0, p1] = probs[d];
        const double acc = accuracy[d];
        const double outcome_chi2 = chi2(ProbVec{1.0 - p0, p0}, ProbVec{1.0 - p1, p1});
        table.add_row({std::int64_t{r}, eta, static_cast<std::int64_t>(d), acc, std::sqrt(acc * (1.0 - acc) / cfg.trials), p0, p1,
                       outcome_chi2, h_simple, h_full});
        if (!first_chance && acc <= 0.55) {
          first_chance = static_cast<int>(d);
        }
      }
      if (r == 0) {
        crossings.push_back({{"eta", eta},
                             {"first_distance_at_or_below_0.55", first_chance ? json(*first_chance) : json(nullptr)},
                             {"h_crit_simplified", h_simple},
                             {"h_crit", h_full}});
      }
    }
  }
  table.metadata["summary"] = {{"crossings", crossings}, {"delta2", delta2}};
  return table;
}

ResultTable run_mismatch(const MismatchConfig& cfg, std::uint64_t master_seed, int replicates, const RunOptions& options) {
  validate(cfg);
  require_replicates(replicates);
  constexpr std::size_t kBlock = 1024;
  const auto chains = static_cast<std::size_t>(cfg.chains);
  const std::size_t blocks = (chains + kBlock - 1) / kBlock;
  const int needed = static_cast<int>(std::ceil(cfg.threshold * cfg.horizon - 1e-9));

  ResultTable table;
  table.columns = {"replicate", "p", "H", "threshold", "chains", "fraction_sampled", "standard_error", "exact",
                   "fraction_all_correct", "all_correct_exact"};
  for (int r = 0; r < replicates; ++r) {
    std::vector<std::pair<long long, long long>> counts(blocks);
    parallel_for(blocks, options.threads, [&](std::size_t b) {
      Engine engine = make_engine(derive_seed(master_seed, kind_id(ExperimentKind::kMismatch), static_cast<std::uint64_t>(r), b));
      const std::size_t end = std::min(chains, (b + 1) * kBlock);
      long long mostly = 0;
      long long perfect = 0;
      for (std::size_t c = b * kBlock; c < end; ++c) {
        const int correct = bernoulli_count(engine, cfg.horizon, cfg.p);
        mostly += (correct >= needed && correct < cfg.horizon) ? 1 : 0;
        perfect += correct == cfg.horizon ? 1 : 0;
      }
      counts[b] = {mostly, perfect};
    });
    long long mostly = 0;
    long long perfect = 0;
    for (const auto& [m, p] : counts) {
      mostly += m;
      perfect += p;
    }
    const double n = static_cast<double>(chains);
    const double fraction = static_cast<double>(mostly) / n;
    const double exact = mostly_correct_but_wrong_prob(cfg.p, cfg.horizon, cfg.threshold);
    table.add_row({std::int64_t{r}, cfg.p, std::int64_t{cfg.horizon}, cfg.threshold, std::int64_t{cfg.chains}, fraction,
                   std::sqrt(exact * (1.0 - exact) / n), exact, static_cast<double>(perfect) / n, j_mult(cfg.p, cfg.horizon)});
  }
  return table;
}

int oracle_min_gap(int horizon, int m) {
  detail::require(horizon >= 1 && horizon <= 14, "oracle horizon must lie in [1,14]");
  detail::require(m >= 0 && m <= horizon - 1, "m must lie in [0, H-1]");
  const unsigned interior = static_cast<unsigned>(horizon - 1);
  int best = std::numeric_limits<int>::max();
  for (unsigned mask = 0; mask < (1U << interior); ++mask) {
    if (std::popcount(mask) != m) {
      continue;
    }
    int last = 0;
    int gap = 0;
    for (unsigned bit = 0; bit < interior; ++bit) {
      if (mask & (1U << bit)) {
        const int time = static_cast<int>(bit) + 1;
        gap = std::max(gap, time - last);
        last = time;
      }
    }
    gap = std::max(gap, horizon - last);
    best = std::min(best, gap);
  }
  return best;
}

int oracle_min_inspections(std::span<const double> etas, double gamma) {
  const int horizon = static_cast<int>(etas.size());
  detail::require(horizon >= 1 && horizon <= 14, "oracle horizon must lie in [1,14]");
  std::vector<double> w;
  for (double eta : etas) {
    detail::require(eta > 0.0 && eta <= 1.0, "each eta must lie in (0,1]");
    w.push_back(std::log(1.0 / eta));
  }
  const double limit = gamma + kInfoTolerance * std::max(1.0, gamma);
  const unsigned interior = static_cast<unsigned>(horizon - 1);
  int best = std::numeric_limits<int>::max();
  for (unsigned mask = 0; mask < (1U << interior); ++mask) {
    const int size = std::popcount(mask);
    if (size >= best) {
      continue;
    }
    bool ok = true;
    double used = 0.0;
    for (int t = 0; t < horizon && ok; ++t) {
      if (t > 0 && (mask & (1U << static_cast<unsigned>(t - 1)))) {
        used = 0.0;
      }
      used += w[static_cast<std::size_t>(t)];
      ok = used <= limit;
    }
    if (ok) {
      best = size;
    }
  }
  if (best == std::numeric_limits<int>::max()) {
    throw Infeasible("no schedule keeps every segment within the budget");
  }
  return best;
}

ResultTable run_oracle(const OracleConfig& cfg, std::uint64_t master_seed) {
  validate(cfg);
  ResultTable table;
  table.columns = {"check", "H", "param", "scheduler_value", "oracle_value"};
  long long mismatches = 0;
  for (int h = 1; h <= cfg.max_horizon; ++h) {
    for (int m = 0; m <= std::min(cfg.max_m, h - 1); ++m) {
      const int formula = min_gap_value(h, m);
      const int oracle = oracle_min_gap(h, m);
      mismatches += formula != oracle || maximal_gap(uniform_schedule(h, m)) != oracle ? 1 : 0;
      table.add_row({std::int64_t{0}, std::int64_t{h}, std::int64_t{m}, std::int64_t{formula}, std::int64_t{oracle}});
    }
  }
  for (int trial = 0; trial < cfg.random_vectors; ++trial) {
    Engine engine = make_engine(derive_seed(master_seed, kind_id(ExperimentKind::kOracle), 0, static_cast<std::uint64_t>(trial)));
    const int h = 2 + static_cast<int>(uniform01(engine) * (cfg.max_horizon - 1));
    std::vector<double> etas(static_cast<std::size_t>(std::min(h, cfg.max_horizon)));
    double max_w = 0.0;
    double sum_w = 0.0;
    for (double& eta : etas) {
      eta = 0.3 + 0.69 * uniform01(engine);
      max_w = std::max(max_w, -std::log(eta));
      sum_w += -std::log(eta);
    }
    const double gamma = max_w + uniform01(engine) * (sum_w - max_w);
    const int greedy = greedy_schedule(etas, gamma).size();
    const int oracle = oracle_min_inspections(etas, gamma);
    mismatches += greedy != oracle ? 1 : 0;
    table.add_row({std::int64_t{1}, static_cast<std::int64_t>(etas.size()), std::int64_t{trial}, std::int64_t{greedy},
                   std::int64_t{oracle}});
  }
  table.metadata["summary"] = {{"mismatches", mismatches}};
  return table;
}

ResultTable run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  require_replicates(config.replicates);
  const auto start = std::chrono::steady_clock::now();
  ResultTable table = std::visit(
      [&](const auto& params) -> ResultTable {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, DecayConfig>) {
          return run_decay(params);
        } else if constexpr (std::is_same_v<T, WidthConfig>) {
          return run_width(params, config.master_seed, config.replicates, options);
        } else if constexpr (std::is_same_v<T, InspectionConfig>) {
          return run_inspection(params, config.master_seed, config.replicates, options);
        } else if constexpr (std::is_same_v<T, HorizonExperimentConfig>) {
          return run_horizon(params, config.master_seed, config.replicates, options);
        } else if constexpr (std::is_same_v<T, MismatchConfig>) {
          return run_mismatch(params, config.master_seed, config.replicates, options);
        } else {
          return run_oracle(params, config.master_seed);
        }
      },
      config.params);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  json summary = table.metadata.value("summary", json::object());
  table.metadata = {{"kind", to_string(config.kind)},
                    {"config", to_json(config)},
                    {"seed", config.master_seed},
                    {"replicates", config.replicates},
                    {"wall_time_seconds", elapsed.count()},
                    {"summary", summary}};
  return table;
}

// JSON config round trip -------------------------------------------------------------------------

namespace {

template <typename T>
void read(const json& j, const char* key, T& target) {
  if (j.contains(key)) {
    target = j.at(key).get<T>();
  }
}

}  // namespace

ExperimentConfig experiment_config_from_json(const json& j) {
  detail::require(j.is_object(), "experiment config must be a JSON object");
  detail::require(j.contains("kind"), "experiment config needs a \"kind\"");
  ExperimentConfig config;
  try {
    config.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
    read(j, "master_seed", config.master_seed);
    read(j, "replicates", config.replicates);
    switch (config.kind) {
      case ExperimentKind::kDecay: {
        DecayConfig c;
        read(j, "etas", c.etas);
        read(j, "states", c.states);
        read(j, "H", c.horizon);
        config.params = c;
        break;
      }
      case ExperimentKind::kWidth: {
        WidthConfig c;
        read(j, "rho", c.rho);
        read(j, "value", c.value);
        read(j, "W", c.widths);
        read(j, "groups", c.groups);
        config.params = c;
        break;
      }
      case ExperimentKind::kInspection: {
        InspectionConfig c;
        read(j, "H", c.horizon);
        read(j, "eta", c.eta);
        read(j, "states", c.states);
        read(j, "success_set", c.success_set);
        read(j, "n", c.n_per_test);
        read(j, "trials", c.trials);
        read(j, "schedules", c.schedules);
        config.params = c;
        break;
      }
      case ExperimentKind::kHorizon: {
        HorizonExperimentConfig c;
        read(j, "H", c.horizon);
        read(j, "states", c.states);
        read(j, "n", c.n);
        read(j, "etas", c.etas);
        read(j, "trials", c.trials);
        read(j, "epsilon", c.epsilon);
        read(j, "success_set", c.success_set);
        config.params = c;
        break;
      }
      case ExperimentKind::kMismatch: {
        MismatchConfig c;
        read(j, "p", c.p);
        read(j, "H", c.horizon);
        read(j, "threshold", c.threshold);
        read(j, "chains", c.chains);
        config.params = c;
        break;
      }
      case ExperimentKind::kOracle: {
        OracleConfig c;
        read(j, "max_H", c.max_horizon);
        read(j, "max_m", c.max_m);
        read(j, "random_vectors", c.random_vectors);
        config.params = c;
        break;
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed experiment config: ") + e.what());
  }
  return config;
}

json to_json(const ExperimentConfig& config) {
  json j = {{"kind", to_string(config.kind)}, {"master_seed", config.master_seed}, {"replicates", config.replicates}};
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DecayConfig>) {
          j.update({{"etas", c.etas}, {"states", c.states}, {"H", c.horizon}});
        } else if constexpr (std::is_same_v<T, WidthConfig>) {
          j.update({{"rho", c.rho}, {"value", c.value}, {"W", c.widths}, {"groups", c.groups}});
        } else if constexpr (std::is_same_v<T, InspectionConfig>) {
          j.update({{"H", c.horizon},
                    {"eta", c.eta},
                    {"states", c.states},
                    {"success_set", c.success_set},
                    {"n", c.n_per_test},
                    {"trials", c.trials},
                    {"schedules", c.schedules}});
        } else if constexpr (std::is_same_v<T, HorizonExperimentConfig>) {
          j.update({{"H", c.horizon},
                    {"states", c.states},
                    {"n", c.n},
                    {"etas", c.etas},
                    {"trials", c.trials},
                    {"epsilon", c.epsilon},
                    {"success_set", c.success_set}});
        } else if constexpr (std::is_same_v<T, MismatchConfig>) {
          j.update({{"p", c.p}, {"H", c.horizon}, {"threshold", c.threshold}, {"chains", c.chains}});
        } else {
          j.update({{"max_H", c.max_horizon}, {"max_m", c.max_m}, {"random_vectors", c.random_vectors}});
        }
      },
      config.params);
  return j;
}

}  // namespace credit
