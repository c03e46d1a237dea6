#include "credit/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/SVD>

#include "credit/divergence.hpp"
#include "credit/random.hpp"

namespace credit {

namespace {

// Largest chi2(PK || QK) / chi2(P || Q) over point masses P and local perturbations of q.
double best_ratio_for_reference(const Kernel& kernel, const Eigen::VectorXd& q) {
  const Eigen::Index s = kernel.states();
  const ProbVec reference(q, kPropagationTolerance);
  const ProbVec pushed = propagate(reference, kernel);

  double best = 0.0;
  for (Eigen::Index i = 0; i < s; ++i) {
    const ProbVec p = point_mass(static_cast<int>(i), static_cast<int>(s));
    const double before = chi2(p, reference);
    if (before <= 0.0) {
      continue;
    }
    best = std::max(best, chi2(propagate(p, kernel), pushed) / before);
  }

  // sup over P = Q + e v (sum v = 0) is the second singular value squared of B.
  const Eigen::VectorXd sqrt_q = q.array().sqrt();
  const Eigen::VectorXd inv_sqrt_qk = pushed.entries().array().sqrt().inverse();
  const Eigen::MatrixXd b = sqrt_q.asDiagonal() * kernel.rows() * inv_sqrt_qk.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  const auto& sv = svd.singularValues();
  if (sv.size() >= 2) {
    best = std::max(best, sv[1] * sv[1]);
  }
  return std::min(best, 1.0);
}

}  // namespace

double dobrushin_alpha(const Kernel& kernel) {
  const auto& k = kernel.rows();
  double alpha = 1.0;
  for (Eigen::Index z = 0; z < k.rows(); ++z) {
    for (Eigen::Index w = z + 1; w < k.rows(); ++w) {
      alpha = std::min(alpha, k.row(z).cwiseMin(k.row(w)).sum());
    }
  }
  return std::clamp(alpha, 0.0, 1.0);
}

double dobrushin_bound(const Kernel& kernel) { return 1.0 - dobrushin_alpha(kernel); }

double diversity_bound(const Kernel& kernel) {
  const double min_entry = kernel.rows().minCoeff();
  if (min_entry <= 0.0) {
    return 1.0;
  }
  return std::clamp(1.0 - static_cast<double>(kernel.states()) * min_entry, 0.0, 1.0);
}

double two_state_exact(double p) {
  detail::require(p >= 0.0 && p <= 0.5, "p must lie in [0,1/2]");
  const double d = 1.0 - 2.0 * p;
  return d * d;
}

std::optional<double> recognized_exact(const Kernel& kernel) {
  const auto& k = kernel.rows();
  const Eigen::Index s = k.rows();
  constexpr double tol = 1e-12;
  bool identical_rows = true;
  for (Eigen::Index z = 1; z < s; ++z) {
    identical_rows = identical_rows && (k.row(z) - k.row(0)).cwiseAbs().maxCoeff() <= tol;
  }
  if (identical_rows) {
    return 0.0;
  }
  if ((k - Kernel::Matrix::Identity(s, s)).cwiseAbs().maxCoeff() <= tol) {
    return 1.0;
  }
  // Binary symmetric channel. For more states lambda I + (1 - lambda) U is only
  // tight against the uniform reference; its supremum over references is larger.
  if (s == 2 && std::abs(k(0, 0) - k(1, 1)) <= tol) {
    const double lambda = k(0, 0) - k(0, 1);
    return lambda * lambda;
  }
  return std::nullopt;
}

double empirical_eta_lower(const Kernel& kernel, int trials, std::uint64_t seed) {
  detail::require(trials >= 1, "trials must be positive");
  const Eigen::Index s = kernel.states();
  if (s < 2) {
    return 0.0;
  }

  double best = best_ratio_for_reference(kernel, Eigen::VectorXd::Constant(s, 1.0 / static_cast<double>(s)));
  for (Eigen::Index j = 0; j < s; ++j) {
    Eigen::VectorXd q = Eigen::VectorXd::Constant(s, kEmpiricalSmoothing / static_cast<double>(s));
    q[j] += 1.0 - kEmpiricalSmoothing;
    best = std::max(best, best_ratio_for_reference(kernel, q));
  }

  for (int trial = 0; trial < trials; ++trial) {
    Engine engine = make_engine(derive_seed(seed, 0xc0ffeeULL, 0, static_cast<std::uint64_t>(trial)));
    Eigen::VectorXd q(s);
    for (Eigen::Index i = 0; i < s; ++i) {
      // Flat Dirichlet via normalized exponentials, floored away from the boundary.
      q[i] = -std::log1p(-uniform01(engine)) + 1e-9;
    }
    q /= q.sum();
    best = std::max(best, best_ratio_for_reference(kernel, q));
  }
  return best;
}

double attenuation(std::span<const double> etas, int t, int u) {
  detail::require(0 <= t && t <= u && static_cast<std::size_t>(u) <= etas.size(), "attenuation range must satisfy 0 <= t <= u <= H");
  double product = 1.0;
  for (int j = t; j < u; ++j) {
    const double eta = etas[static_cast<std::size_t>(j)];
    detail::require(eta > 0.0 && eta <= 1.0, "each eta must lie in (0,1]");
    product *= eta;
  }
  return product;
}

double ContractionReport::gap() const {
  double upper = dobrushin_bound;
  if (diversity_bound) {
    upper = std::min(upper, *diversity_bound);
  }
  return upper - empirical_lower;
}

ContractionReport contraction_report(const Kernel& kernel, int trials, std::uint64_t seed) {
  ContractionReport report;
  report.dobrushin_alpha = dobrushin_alpha(kernel);
  report.dobrushin_bound = 1.0 - report.dobrushin_alpha;
  if (kernel.rows().minCoeff() > 0.0) {
    report.diversity_bound = diversity_bound(kernel);
  }
  report.empirical_lower = empirical_eta_lower(kernel, trials, seed);
  report.exact = recognized_exact(kernel);
  report.trials = trials;
  return report;
}

}  // namespace credit
