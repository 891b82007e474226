#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace secular::cli {

enum class Format { Json, Csv };

/// A fully parsed and validated command line.
struct Command {
  std::string verb;
  std::optional<std::string> input;
  std::optional<std::string> output;
  Format format = Format::Json;
  std::uint64_t seed = 0;

  std::optional<double> r;
  std::optional<double> lambda;
  std::optional<double> from;
  std::optional<double> to;
  int steps = 20;
  int samples = 1000;
  std::string backend = "spectral";
  double tol = 1e-12;
  std::string kind;  // counterexample: r2 | l2
  std::size_t n = 0;
  std::size_t z_index = 1;
  std::string phi = "one";
  std::vector<double> grid;
};

/// Exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kInputError = 2;

/// Parses argv into a Command. On failure writes usage to err and returns
/// nullopt with exit_code set (0 for --help, kInputError otherwise).
std::optional<Command> parse(const std::vector<std::string>& args, std::ostream& out,
                             std::ostream& err, int& exit_code);

/// Executes a parsed command. Reports go to `out` (or the --output file);
/// failures produce {"error": ..., "message": ...} on `out`.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse + run
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secular::cli
