#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace abssep {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitGoldenFailure = 1,
  kExitValidation = 2,
  kExitInternal = 3,
};

struct RunConfig {
  std::string subcommand;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<std::vector<double>> eigenvalues;
  std::optional<std::string> input;
  bool normalize = false;
  double sum_tol = 1e-6;
  /// Relative PSD tolerance.
  double tol = 1e-8;
  double tol_abs = 1e-10;
  std::uint64_t seed = 1;
  int trials = 2000;
  int count = 1000;
  std::optional<int> p;
  std::optional<int> samples;
  /// Comparison tolerance for `examples`; defaults to the fixture tolerance.
  std::optional<double> golden_tol;
  bool list = false;
  int threads = 1;
  std::optional<std::string> output;
};

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_batch(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_orderings(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_examples(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Writes to `--output` when given, else `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace abssep
