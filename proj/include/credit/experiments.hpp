#ifndef CREDIT_EXPERIMENTS_HPP
#define CREDIT_EXPERIMENTS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "credit/table.hpp"

/**
 * \file
 * \brief Seeded Monte Carlo experiments on synthetic abstract chains.
 *
 * Every stochastic unit of work (a group, a step, a block of chains) draws
 * from its own engine seeded by derive_seed(master_seed, kind, replicate,
 * unit). Results are written by unit index and reduced in index order, so a
 * table is bit-identical for any worker count, and adding replicates never
 * changes the draws of the existing ones.
 *
 * Theory columns always come from the calculator modules.
 */

namespace credit {

enum class ExperimentKind : std::uint64_t { kDecay = 1, kWidth, kInspection, kHorizon, kMismatch, kOracle };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// Exact chi-square decay of delta_0 against uniform through mixture kernels.
struct DecayConfig {
  std::vector<double> etas{0.7, 0.8, 0.9, 0.95};
  int states = 10;
  int horizon = 40;
};

/// Empirical effective width of equicorrelated Bernoulli groups.
struct WidthConfig {
  double rho = 0.15;
  double value = 0.5;
  std::vector<int> widths{1, 4, 16, 64, 256};
  int groups = 100000;
};

/**
 * Worst-case attribution error of fixed inspection schedules.
 *
 * For each step t the hypotheses are delta_0 (H0) and uniform (H1) at t; the
 * nearest downstream checkpoint u observes n_per_test success indicators of
 * Z_u, and a midpoint-threshold test on their frequency decides. The error
 * of a step is its total testing error, P(reject H0 | H0) + P(accept H0 | H1).
 * The defaults are the frozen golden configuration.
 */
struct InspectionConfig {
  int horizon = 20;
  double eta = 0.9;
  int states = 10;
  std::vector<int> success_set{0, 1, 2, 3, 4};
  int n_per_test = 2;
  int trials = 100000;
  std::vector<std::vector<int>> schedules{{5, 10, 15}, {2, 4, 6}, {14, 16, 18}, {2, 13, 14}};
};

/// Attribution accuracy against distance to the outcome.
struct HorizonExperimentConfig {
  int horizon = 40;
  int states = 10;
  int n = 1000;
  std::vector<double> etas{0.7, 0.8};
  int trials = 10000;
  double epsilon = 0.1;
  std::vector<int> success_set{0};
};

/// Chains that are mostly correct yet invalid, under independent step success.
struct MismatchConfig {
  double p = 0.99;
  int horizon = 100;
  double threshold = 0.8;
  int chains = 100000;
};

/// Exhaustive checks of the uniform and greedy schedulers.
struct OracleConfig {
  int max_horizon = 12;
  int max_m = 4;
  int random_vectors = 200;
};

using ExperimentParams =
    std::variant<DecayConfig, WidthConfig, InspectionConfig, HorizonExperimentConfig, MismatchConfig, OracleConfig>;

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kDecay;
  std::uint64_t master_seed = 0;
  int replicates = 1;
  ExperimentParams params = DecayConfig{};
};

/// Accepts {"kind": ..., "master_seed": ..., "replicates": ..., <kind parameters>}; missing keys take defaults.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

struct RunOptions {
  /// Worker threads; 0 means CH_THREADS or the hardware concurrency.
  int threads = 0;
};

ResultTable run_decay(const DecayConfig& cfg);
ResultTable run_width(const WidthConfig& cfg, std::uint64_t master_seed, int replicates, const RunOptions& options = {});
ResultTable run_inspection(const InspectionConfig& cfg, std::uint64_t master_seed, int replicates,
                           const RunOptions& options = {});
ResultTable run_horizon(const HorizonExperimentConfig& cfg, std::uint64_t master_seed, int replicates,
                        const RunOptions& options = {});
ResultTable run_mismatch(const MismatchConfig& cfg, std::uint64_t master_seed, int replicates, const RunOptions& options = {});
ResultTable run_oracle(const OracleConfig& cfg, std::uint64_t master_seed);

/// Validates, dispatches on kind and fills metadata {kind, config, seed, replicates, wall_time_seconds, summary}.
ResultTable run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Least-squares line through (x, y): slope, intercept and R^2 (1 for an exact fit).
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Smallest achievable maximal gap over all schedules with m interior times, by enumeration. H <= 14.
int oracle_min_gap(int horizon, int m);

/// Fewest inspections keeping every segment within gamma, by enumeration. H <= 14.
int oracle_min_inspections(std::span<const double> etas, double gamma);

}  // namespace credit

#endif  // CREDIT_EXPERIMENTS_HPP
