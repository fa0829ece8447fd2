#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "halfline/shoot.hpp"

namespace halfline::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Command { asym, shoot, compare, count, invert, check_k, check_l };
enum class Format { csv, json };

const char* to_string(Command c) noexcept;

struct JobSpec {
  Command command = Command::asym;
  int m = 3;
  /// Empty means the zero potential.
  std::vector<cplx> a;
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
  std::optional<int> n_lo, n_hi;
  std::vector<double> t;
  int J = 1;
  std::vector<cplx> lambdas;
  std::string input;
  std::string output;
  Format format = Format::csv;
  ShootingConfig shooting;
};

/// Parses "1", "-2.5", "1+2i", "0.5-1e-3i", "i", "-2i". Throws input error.
cplx parse_complex(const std::string& text);
std::vector<cplx> parse_complex_list(const std::string& text);
/// "lo:hi" or a single index. Throws input error.
std::pair<int, int> parse_range(const std::string& text);

/// Builds a JobSpec from argv (argv[0] is the program name). Throws
/// Error(input) on bad flags; returns nullopt when help was printed.
std::optional<JobSpec> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Executes the job, writing the artifact to job.output or `out`.
/// Returns the exit code; module errors propagate as halfline::Error.
int run(const JobSpec& job, std::ostream& out);

/// parse_args + run with errors reported as one line on `err`:
///   halfline: error exit=<code> kind=<kind>: <message>
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace halfline::cli
