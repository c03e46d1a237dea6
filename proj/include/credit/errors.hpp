#ifndef CREDIT_ERRORS_HPP
#define CREDIT_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace credit {

/// A precondition of an operation was violated by its arguments.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// chi-square divergence requested where P puts mass outside the support of Q.
class AbsoluteContinuityViolated : public std::domain_error {
 public:
  explicit AbsoluteContinuityViolated(int index)
      : std::domain_error("P is not absolutely continuous w.r.t. Q at state " + std::to_string(index)),
        index_(index) {}

  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// No schedule of the requested form can satisfy the constraint.
class Infeasible : public std::runtime_error {
 public:
  explicit Infeasible(const std::string& reason, std::optional<int> step = std::nullopt)
      : std::runtime_error(reason), step_(step) {}

  /// Offending step index when a single step is the cause.
  std::optional<int> step() const noexcept { return step_; }

 private:
  std::optional<int> step_;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) {
    throw InvalidArgument(message);
  }
}

}  // namespace detail

}  // namespace credit

#endif  // CREDIT_ERRORS_HPP
