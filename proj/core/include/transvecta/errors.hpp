#pragma once

#include <stdexcept>
#include <string>

namespace transvecta {

// Invalid arguments throw std::invalid_argument / std::domain_error. The types
// below mark conditions that callers are expected to branch on.

/// An iterate reached a coordinate axis before the requested number of steps.
class AxisHit : public std::runtime_error {
 public:
  AxisHit(const std::string& what, std::size_t steps_done)
      : std::runtime_error(what), steps_done_(steps_done) {}
  std::size_t steps_done() const noexcept { return steps_done_; }

 private:
  std::size_t steps_done_;
};

/// The accelerated algorithm is undefined on the axes and the diagonals y = ±σ(x).
class DiagonalOrAxis : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exactly checked invariant failed. Exit code 3 in the CLI.
class InvariantViolation : public std::logic_error {
 public:
  InvariantViolation(std::string clause, const std::string& what)
      : std::logic_error(what), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace transvecta
