#include <gtest/gtest.h>

#include <cmath>

#include "credit/errors.hpp"
#include "credit/objectives.hpp"
#include "oracle_values.hpp"

namespace {

TEST(Objectives, AdditiveAndMultiplicative) {
  EXPECT_EQ(credit::j_add(0.99, 100), 99.0);
  EXPECT_NEAR(credit::j_mult(0.99, 100), oracle::kJMult099x100, 1e-15);
  EXPECT_EQ(credit::j_mult(1.0, 100), 1.0);
  EXPECT_THROW(credit::j_add(1.2, 10), credit::InvalidArgument);
  EXPECT_THROW(credit::j_mult(0.5, 0), credit::InvalidArgument);
}

TEST(Objectives, GradientAttenuation) {
  EXPECT_NEAR(credit::grad_attenuation(0.95, 100), oracle::kGradAttenuation095x100, 1e-15);
  EXPECT_NEAR(credit::dj_mult_dp(0.95, 100), 100.0 * oracle::kGradAttenuation095x100, 1e-13);
  EXPECT_EQ(credit::dj_add_dp(0.3, 7), 7.0);
}

TEST(Objectives, InterpolationEndpoints) {
  const auto at0 = credit::j_interp(0.9, 10, 0.0);
  const auto at1 = credit::j_interp(0.9, 10, 1.0);
  EXPECT_EQ(at0.value, credit::j_add(0.9, 10));
  EXPECT_EQ(at1.value, credit::j_mult(0.9, 10));
  EXPECT_THROW(credit::j_interp(0.9, 10, 1.5), credit::InvalidArgument);
}

TEST(Objectives, GradientsMatchFiniteDifferences) {
  const double h = 1e-6;
  for (double p : {0.3, 0.7, 0.95}) {
    for (double lambda : {0.0, 0.25, 1.0}) {
      const double fd = (credit::j_interp(p + h, 40, lambda).value - credit::j_interp(p - h, 40, lambda).value) / (2.0 * h);
      const double analytic = credit::j_interp(p, 40, lambda).gradient;
      EXPECT_NEAR(fd, analytic, 1e-5 * std::abs(analytic)) << p << ' ' << lambda;
    }
  }
}

TEST(Binomial, MostlyCorrectButWrong) {
  EXPECT_NEAR(credit::mostly_correct_but_wrong_prob(0.99, 100, 0.8), oracle::kMostlyCorrectButWrong, 1e-12);
  EXPECT_NEAR(credit::below_threshold_prob(0.99, 100, 0.8), oracle::kBelowThreshold, 1e-30);
}

TEST(Binomial, PartitionOfOutcomes) {
  const double p = 0.93;
  const double total = credit::below_threshold_prob(p, 50, 0.8) + credit::mostly_correct_but_wrong_prob(p, 50, 0.8) +
                       credit::j_mult(p, 50);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Binomial, DegenerateProbabilities) {
  EXPECT_EQ(credit::mostly_correct_but_wrong_prob(1.0, 10, 0.5), 0.0);
  EXPECT_EQ(credit::below_threshold_prob(0.0, 10, 0.5), 1.0);
}

}  // namespace
