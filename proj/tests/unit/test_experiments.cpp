#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "credit/errors.hpp"
#include "credit/experiments.hpp"
#include "credit/table.hpp"

namespace {

using credit::InvalidArgument;

std::string csv_of(const credit::ResultTable& table) {
  std::ostringstream out;
  credit::emit_csv(table, out);
  return out.str();
}

TEST(Decay, ColumnsAndExactness) {
  const auto table = credit::run_decay({});
  EXPECT_EQ(table.columns, (std::vector<std::string>{"step", "distance_to_end", "eta", "chi2_measured", "chi2_theory"}));
  ASSERT_EQ(table.rows.size(), 4U * 41U);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    EXPECT_NEAR(table.real(r, "chi2_measured"), table.real(r, "chi2_theory"), 1e-9);
  }
  for (const auto& fit : table.metadata["summary"]["fits"]) {
    EXPECT_GT(fit["r2"].get<double>(), 0.999);
    EXPECT_NEAR(fit["slope"].get<double>(), fit["log_eta"].get<double>(), 1e-6);
  }
}

TEST(Decay, IdentityIsFlat) {
  credit::DecayConfig cfg;
  cfg.etas = {1.0};
  cfg.horizon = 10;
  const auto table = credit::run_decay(cfg);
  const auto& fit = table.metadata["summary"]["fits"][0];
  EXPECT_NEAR(fit["slope"].get<double>(), 0.0, 1e-12);
}

TEST(Width, ZeroCorrelationRecoversWidth) {
  credit::WidthConfig cfg;
  cfg.rho = 0.0;
  cfg.widths = {1, 16};
  const auto table = credit::run_width(cfg, 4, 1, {1});
  EXPECT_EQ(table.real(0, "weff_empirical"), 1.0);
  EXPECT_NEAR(table.real(1, "weff_empirical"), 16.0, 0.8);
}

TEST(Width, RejectsBadConfig) {
  credit::WidthConfig cfg;
  cfg.rho = 1.0;
  EXPECT_THROW(credit::run_width(cfg, 0, 1), InvalidArgument);
}

TEST(Inspection, SmallRunOrdering) {
  credit::InspectionConfig cfg;
  cfg.trials = 20000;
  const auto table = credit::run_inspection(cfg, 1, 1, {1});
  ASSERT_EQ(table.rows.size(), 4U);
  for (std::size_t r = 1; r < 4; ++r) {
    EXPECT_LT(table.real(0, "worst_error"), table.real(r, "worst_error"));
  }
  EXPECT_EQ(table.real(1, "max_gap"), 14.0);
}

TEST(Horizon, AccuracyDecaysWithDistance) {
  credit::HorizonExperimentConfig cfg;
  cfg.trials = 2000;
  cfg.etas = {0.7};
  const auto table = credit::run_horizon(cfg, 2, 1, {1});
  ASSERT_EQ(table.rows.size(), 41U);
  EXPECT_GT(table.real(1, "accuracy"), 0.99);
  EXPECT_LT(table.real(40, "accuracy"), 0.6);
}

TEST(Mismatch, WithinThreeStandardErrors) {
  credit::MismatchConfig cfg;
  cfg.chains = 20000;
  const auto table = credit::run_mismatch(cfg, 8, 1, {1});
  EXPECT_LE(std::abs(table.real(0, "fraction_sampled") - table.real(0, "exact")), 3.0 * table.real(0, "standard_error"));
}

TEST(Oracle, MinGapEnumeration) {
  EXPECT_EQ(credit::oracle_min_gap(20 - 8, 3), 3);
  EXPECT_EQ(credit::oracle_min_gap(7, 0), 7);
  EXPECT_THROW(credit::oracle_min_gap(15, 1), InvalidArgument);
}

TEST(Oracle, NoMismatchesOnSmallRun) {
  credit::OracleConfig cfg;
  cfg.max_horizon = 9;
  cfg.random_vectors = 40;
  const auto table = credit::run_oracle(cfg, 3);
  EXPECT_EQ(table.metadata["summary"]["mismatches"].get<long long>(), 0);
}

TEST(Determinism, ThreadCountDoesNotChangeCsv) {
  credit::InspectionConfig cfg;
  cfg.trials = 3000;
  EXPECT_EQ(csv_of(credit::run_inspection(cfg, 5, 2, {1})), csv_of(credit::run_inspection(cfg, 5, 2, {4})));
}

TEST(Determinism, AddingReplicatesKeepsEarlierRows) {
  credit::MismatchConfig cfg;
  cfg.chains = 3000;
  const auto one = credit::run_mismatch(cfg, 9, 1, {1});
  const auto two = credit::run_mismatch(cfg, 9, 2, {1});
  EXPECT_EQ(one.real(0, "fraction_sampled"), two.real(0, "fraction_sampled"));
}

TEST(Config, RoundTripAndDefaults) {
  const auto config = credit::experiment_config_from_json({{"kind", "width"}, {"master_seed", 17}, {"W", {1, 2}}});
  EXPECT_EQ(config.kind, credit::ExperimentKind::kWidth);
  EXPECT_EQ(config.master_seed, 17U);
  const auto& width = std::get<credit::WidthConfig>(config.params);
  EXPECT_EQ(width.widths, (std::vector<int>{1, 2}));
  EXPECT_EQ(width.rho, 0.15);
  const auto again = credit::experiment_config_from_json(credit::to_json(config));
  EXPECT_EQ(credit::to_json(again), credit::to_json(config));
}

TEST(Config, Errors) {
  EXPECT_THROW(credit::experiment_config_from_json({{"kind", "nope"}}), InvalidArgument);
  EXPECT_THROW(credit::experiment_config_from_json({{"master_seed", 1}}), InvalidArgument);
  EXPECT_THROW(credit::experiment_config_from_json({{"kind", "decay"}, {"H", "ten"}}), InvalidArgument);
}

TEST(RunExperiment, MetadataCarriesSeed) {
  credit::ExperimentConfig config;
  config.kind = credit::ExperimentKind::kOracle;
  config.master_seed = 99;
  config.params = credit::OracleConfig{6, 2, 5};
  const auto table = credit::run_experiment(config);
  EXPECT_EQ(table.metadata["seed"].get<std::uint64_t>(), 99U);
  EXPECT_EQ(table.metadata["kind"], "oracle");
  EXPECT_TRUE(table.metadata.contains("wall_time_seconds"));
}

TEST(FitLine, ExactLine) {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const auto fit = credit::fit_line(x, y);
  EXPECT_NEAR(fit.slope, 2.0, 1e-15);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-15);
  EXPECT_NEAR(fit.r2, 1.0, 1e-15);
}

}  // namespace
