#include "halfline/error.hpp"

namespace halfline {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::range: return "range";
    case ErrorKind::input: return "input";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::hypothesis: return "hypothesis";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::branch: return "branch";
    case ErrorKind::step_underflow: return "step_underflow";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::derivative: return "derivative";
    case ErrorKind::index_collision: return "index_collision";
    case ErrorKind::ill_conditioned: return "ill_conditioned";
    case ErrorKind::degenerate_slope: return "degenerate_slope";
    case ErrorKind::coverage: return "coverage";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain:
    case ErrorKind::range:
    case ErrorKind::input:
    case ErrorKind::precondition:
    case ErrorKind::hypothesis:
      return 2;
    case ErrorKind::coverage:
      return 4;
    default:
      return 3;
  }
}

}  // namespace halfline
