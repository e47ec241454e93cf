#pragma once

#include <stdexcept>
#include <string>

namespace ctp {

/// Invalid argument or parameter combination (wrong catalog parameters,
/// zero denominators, out-of-range tolerances, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An evaluation ran into a singularity of the underlying solution
/// (branch point hit, pole crossed, division by a vanishing state).
class SingularEvaluation : public std::runtime_error {
 public:
  explicit SingularEvaluation(const std::string& what, double where = 0.0)
      : std::runtime_error(what), location_(where) {}

  /// Parameter value (usually a time) at which the singularity was met.
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Adaptive step size collapsed without the state norm growing; the
/// problem looks stiff rather than singular.
class StiffnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fixed-point iteration failed to contract (datum outside the
/// convergence region of the iterative solver).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ctp
