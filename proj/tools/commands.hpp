#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "loopforest/predicates.hpp"

namespace loopforest::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { ok = 0, failure = 1, input_error = 2, validation_error = 3 };

struct RunConfig {
  std::string input;
  std::string format;  // csv | json, empty to infer from the extension
  std::string forest;  // stored forest document to read instead of a complex
  bool is_signed = false;
  std::vector<std::string> functionals;
  int levels = 1;
  std::vector<double> at;
  std::string output;
  std::string svg;
  int samples = 1000;
  std::uint64_t seed = 1;
  int reps = 10;
  std::string generator = "uniform";
  std::size_t points = 10000;
};

/// Point sets of the benchmark: uniform (unit square), sphere (unit circle
/// with Gaussian noise of standard deviation 0.05) and holes (unit square
/// with 30 random disks of radius up to 0.05 removed).
std::vector<geometry::Vec2> generate_points(const std::string& generator, std::size_t n,
                                            std::uint64_t seed);

int cmd_forest(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_progression(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_landscape(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses the arguments (without the program name), runs the subcommand
/// and maps errors to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loopforest::cli
