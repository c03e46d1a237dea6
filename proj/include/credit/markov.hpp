#ifndef CREDIT_MARKOV_HPP
#define CREDIT_MARKOV_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "credit/errors.hpp"

/**
 * \file
 * \brief Distributions and transition kernels over a finite abstract state space.
 *
 * All types are immutable once constructed. Validation happens in the
 * constructors: entries must be non-negative and each distribution (or kernel
 * row) must sum to one within a tolerance, after which it is renormalized
 * exactly. Anything further away is rejected rather than silently fixed.
 */

namespace credit {

/// Sum-to-one tolerance for user-constructed values.
inline constexpr double kConstructionTolerance = 1e-12;
/// Sum-to-one tolerance for values produced by one propagation step.
inline constexpr double kPropagationTolerance = 1e-10;

/// Probability distribution over `size()` abstract states.
template <typename Scalar>
class BasicProbVec {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit BasicProbVec(Vector entries, double tolerance = kConstructionTolerance) : entries_(std::move(entries)) {
    detail::require(entries_.size() >= 1, "distribution must have at least one state");
    Scalar total(0);
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
      const Scalar value = entries_[i];
      detail::require(std::isfinite(static_cast<double>(value)), "distribution entries must be finite");
      detail::require(value >= Scalar(0), "distribution entries must be non-negative");
      total += value;
    }
    detail::require(std::abs(static_cast<double>(total) - 1.0) <= tolerance,
                    "distribution must sum to 1 (got " + std::to_string(static_cast<double>(total)) + ")");
    entries_ /= total;
  }

  BasicProbVec(std::initializer_list<Scalar> values) : BasicProbVec(to_vector(values)) {}

  const Vector& entries() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.size(); }
  Scalar operator[](Eigen::Index i) const { return entries_[i]; }

 private:
  static Vector to_vector(std::initializer_list<Scalar> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    std::copy(values.begin(), values.end(), v.data());
    return v;
  }

  Vector entries_;
};

/// Row-stochastic transition matrix; entry (z, z') is K(z' | z).
template <typename Scalar>
class BasicKernel {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BasicKernel(Matrix rows, double tolerance = kConstructionTolerance) : rows_(std::move(rows)) {
    detail::require(rows_.rows() >= 1 && rows_.rows() == rows_.cols(), "kernel must be a non-empty square matrix");
    for (Eigen::Index z = 0; z < rows_.rows(); ++z) {
      Scalar total(0);
      for (Eigen::Index y = 0; y < rows_.cols(); ++y) {
        const Scalar value = rows_(z, y);
        detail::require(std::isfinite(static_cast<double>(value)), "kernel entries must be finite");
        detail::require(value >= Scalar(0), "kernel entries must be non-negative");
        total += value;
      }
      detail::require(std::abs(static_cast<double>(total) - 1.0) <= tolerance,
                      "kernel row " + std::to_string(z) + " must sum to 1");
      rows_.row(z) /= total;
    }
  }

  const Matrix& rows() const noexcept { return rows_; }
  Eigen::Index states() const noexcept { return rows_.rows(); }
  Scalar operator()(Eigen::Index from, Eigen::Index to) const { return rows_(from, to); }

 private:
  Matrix rows_;
};

/// Horizon, per-step kernels and terminal success set of an abstract chain.
template <typename Scalar>
class BasicChainSpec {
 public:
  using ProbVec = BasicProbVec<Scalar>;
  using Kernel = BasicKernel<Scalar>;

  /// Homogeneous chain: `kernel` is applied at every step.
  BasicChainSpec(int horizon, Kernel kernel, std::vector<int> success_set, ProbVec initial)
      : horizon_(horizon), kernels_{std::move(kernel)}, success_set_(std::move(success_set)), initial_(std::move(initial)) {
    detail::require(horizon_ >= 1, "horizon must be positive");
    validate();
  }

  /// Heterogeneous chain: kernels[t] maps Z_t to Z_{t+1}; the horizon is kernels.size().
  BasicChainSpec(std::vector<Kernel> kernels, std::vector<int> success_set, ProbVec initial)
      : horizon_(static_cast<int>(kernels.size())),
        kernels_(std::move(kernels)),
        success_set_(std::move(success_set)),
        initial_(std::move(initial)) {
    detail::require(horizon_ >= 1, "heterogeneous chain needs at least one kernel");
    validate();
  }

  int horizon() const noexcept { return horizon_; }
  bool homogeneous() const noexcept { return kernels_.size() == 1; }
  Eigen::Index states() const noexcept { return initial_.size(); }
  const Kernel& kernel(int step) const {
    detail::require(step >= 0 && step < horizon_, "kernel step out of range");
    return kernels_.size() == 1 ? kernels_.front() : kernels_[static_cast<std::size_t>(step)];
  }
  const std::vector<int>& success_set() const noexcept { return success_set_; }
  const ProbVec& initial() const noexcept { return initial_; }

 private:
  void validate() {
    const auto states = initial_.size();
    for (const auto& k : kernels_) {
      detail::require(k.states() == states, "all kernels must match the initial distribution's dimension");
    }
    std::sort(success_set_.begin(), success_set_.end());
    success_set_.erase(std::unique(success_set_.begin(), success_set_.end()), success_set_.end());
    detail::require(!success_set_.empty(), "success set must be nonempty");
    detail::require(static_cast<Eigen::Index>(success_set_.size()) < states, "success set must be a strict subset of the states");
    detail::require(success_set_.front() >= 0 && success_set_.back() < states, "success set index out of range");
  }

  int horizon_;
  std::vector<Kernel> kernels_;
  std::vector<int> success_set_;
  ProbVec initial_;
};

/// Logits l(z, a), per-action kernels P(z' | z, a) and a softmax temperature.
template <typename Scalar>
struct BasicSoftmaxPolicyInput {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> logits;
  std::vector<BasicKernel<Scalar>> action_kernels;
  Scalar temperature;
};

using ProbVec = BasicProbVec<double>;
using Kernel = BasicKernel<double>;
using ChainSpec = BasicChainSpec<double>;
using SoftmaxPolicyInput = BasicSoftmaxPolicyInput<double>;

template <typename Scalar = double>
BasicProbVec<Scalar> point_mass(int state_index, int size) {
  detail::require(size >= 1, "size must be positive");
  detail::require(state_index >= 0 && state_index < size, "state index out of range");
  typename BasicProbVec<Scalar>::Vector v = BasicProbVec<Scalar>::Vector::Zero(size);
  v[state_index] = Scalar(1);
  return BasicProbVec<Scalar>(std::move(v));
}

template <typename Scalar = double>
BasicProbVec<Scalar> uniform_dist(int size) {
  detail::require(size >= 1, "size must be positive");
  return BasicProbVec<Scalar>(BasicProbVec<Scalar>::Vector::Constant(size, Scalar(1) / Scalar(size)));
}

/// sqrt(eta) I + (1 - sqrt(eta)) (1/size) 11^T, whose chi-square contraction is exactly eta.
template <typename Scalar = double>
BasicKernel<Scalar> mixture_kernel(double eta, int size) {
  detail::require(eta > 0.0 && eta <= 1.0, "eta must lie in (0,1]");
  detail::require(size >= 2, "mixture kernel needs at least two states");
  using std::sqrt;
  const Scalar keep = sqrt(Scalar(eta));
  const Scalar spread = (Scalar(1) - keep) / Scalar(size);
  using Matrix = typename BasicKernel<Scalar>::Matrix;
  Matrix rows = Matrix::Constant(size, size, spread);
  rows.diagonal().array() += keep;
  return BasicKernel<Scalar>(std::move(rows));
}

/// Binary symmetric kernel [[1-p, p], [p, 1-p]].
template <typename Scalar = double>
BasicKernel<Scalar> two_state_kernel(double p) {
  detail::require(p >= 0.0 && p < 0.5, "p must lie in [0,1/2)");
  typename BasicKernel<Scalar>::Matrix rows(2, 2);
  rows << Scalar(1 - p), Scalar(p), Scalar(p), Scalar(1 - p);
  return BasicKernel<Scalar>(std::move(rows));
}

/// Pushforward PK(y) = sum_x K(y | x) P(x).
template <typename Scalar>
BasicProbVec<Scalar> propagate(const BasicProbVec<Scalar>& dist, const BasicKernel<Scalar>& kernel) {
  detail::require(dist.size() == kernel.states(), "distribution and kernel dimensions differ");
  typename BasicProbVec<Scalar>::Vector next = kernel.rows().transpose() * dist.entries();
  return BasicProbVec<Scalar>(std::move(next), kPropagationTolerance);
}

/// Applies kernels[from_step .. to_step) of `spec` to `dist`.
template <typename Scalar>
BasicProbVec<Scalar> propagate_chain(const BasicProbVec<Scalar>& dist, const BasicChainSpec<Scalar>& spec, int from_step,
                                     int to_step) {
  detail::require(0 <= from_step && from_step <= to_step && to_step <= spec.horizon(), "step range must satisfy 0 <= from <= to <= H");
  BasicProbVec<Scalar> current = dist;
  for (int t = from_step; t < to_step; ++t) {
    current = propagate(current, spec.kernel(t));
  }
  return current;
}

template <typename Scalar>
Scalar outcome_prob(const BasicProbVec<Scalar>& dist, std::span<const int> success_set) {
  Scalar total(0);
  for (int z : success_set) {
    detail::require(z >= 0 && z < dist.size(), "success state index out of range");
    total += dist[z];
  }
  return std::clamp(total, Scalar(0), Scalar(1));
}

/// Two-point outcome law [P(R = 0), P(R = 1)] induced by `dist`.
template <typename Scalar>
BasicProbVec<Scalar> outcome_dist(const BasicProbVec<Scalar>& dist, std::span<const int> success_set) {
  const Scalar p = outcome_prob(dist, success_set);
  typename BasicProbVec<Scalar>::Vector v(2);
  v << Scalar(1) - p, p;
  return BasicProbVec<Scalar>(std::move(v), kPropagationTolerance);
}

/// K_tau(z' | z) = sum_a P(z' | z, a) pi_tau(a | z) with pi_tau the softmax of logits / tau.
template <typename Scalar>
BasicKernel<Scalar> softmax_policy_kernel(const BasicSoftmaxPolicyInput<Scalar>& input) {
  const auto& logits = input.logits;
  detail::require(input.temperature > Scalar(0), "temperature must be positive");
  detail::require(logits.rows() >= 1 && logits.cols() >= 1, "logits must be non-empty");
  detail::require(static_cast<Eigen::Index>(input.action_kernels.size()) == logits.cols(),
                  "one action kernel per logit column is required");
  detail::require(logits.allFinite(), "logits must be finite");
  for (const auto& k : input.action_kernels) {
    detail::require(k.states() == logits.rows(), "action kernels must match the logits' state dimension");
  }

  using Matrix = typename BasicKernel<Scalar>::Matrix;
  using std::exp;
  const Eigen::Index states = logits.rows();
  Matrix rows = Matrix::Zero(states, states);
  for (Eigen::Index z = 0; z < states; ++z) {
    const Scalar top = logits.row(z).maxCoeff();
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> weights = ((logits.row(z).array() - top) / input.temperature).exp().matrix();
    weights /= weights.sum();
    for (Eigen::Index a = 0; a < logits.cols(); ++a) {
      rows.row(z) += weights[a] * input.action_kernels[static_cast<std::size_t>(a)].rows().row(z);
    }
  }
  return BasicKernel<Scalar>(std::move(rows), kPropagationTolerance);
}

}  // namespace credit

#endif  // CREDIT_MARKOV_HPP
