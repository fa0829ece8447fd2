#pragma once

#include <stdexcept>
#include <string>

namespace halfline {

enum class ErrorKind {
  domain,           // argument outside the mathematical domain
  range,            // index pair outside the legal table range
  input,            // malformed user input
  precondition,     // operation precondition does not hold
  hypothesis,       // theorem hypothesis violated (e.g. Im K != 0)
  quadrature,       // integral did not reach tolerance
  branch,           // square-root argument crosses the cut
  step_underflow,   // ODE step size collapsed
  convergence,      // Newton did not converge
  derivative,       // finite-difference derivative vanished
  index_collision,  // scanned zeros do not map to consecutive indices
  ill_conditioned,  // least-squares design matrix too ill-conditioned
  degenerate_slope, // e_k has no dependence on a_k (a bug, never valid input)
  coverage,         // requested t lies beyond the scanned window
};

const char* to_string(ErrorKind kind) noexcept;

/// CLI exit code for an error kind: 2 input, 3 numerical, 4 coverage.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace halfline
