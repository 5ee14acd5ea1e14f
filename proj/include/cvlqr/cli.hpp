#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace cvlqr::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kNotStabilizable = 3,
  kNoConvergence = 4,
};

struct Flags {
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<int> min_iter;
  std::optional<int> snapshot_at;
  bool trace = false;
  /// bimatrix | anti | normal | all (antilinear inputs only).
  std::string method = "bimatrix";
  /// Closed-loop trajectory length for the delay command.
  std::optional<int> horizon;
  /// Result document path; stdout when empty. Sidecar CSVs are named after
  /// it (or after the input file when writing to stdout).
  std::optional<std::filesystem::path> output;
  /// Run the rank test before solving and stop with exit 3 if it fails.
  bool precheck = false;
};

int cmd_solve_complex(const std::filesystem::path& input, const Flags& flags,
                      std::ostream& out, std::ostream& err);
int cmd_solve_antilinear(const std::filesystem::path& input,
                         const Flags& flags, std::ostream& out,
                         std::ostream& err);
int cmd_solve_delay(const std::filesystem::path& input, const Flags& flags,
                    std::ostream& out, std::ostream& err);
int cmd_check_stabilizability(const std::filesystem::path& input,
                              std::ostream& out, std::ostream& err);

struct RandomBatch {
  int n = 2;
  int m = 1;
  int count = 10;
  std::uint64_t seed = 0;
};

/// One CSV row per antilinear instance, read from the *.json files of
/// input_dir (sorted by name) or generated from a seeded random batch.
int cmd_bench(const std::optional<std::filesystem::path>& input_dir,
              const std::optional<RandomBatch>& batch, const Flags& flags,
              std::ostream& out, std::ostream& err);

/// Re-checks a result document against its input: the stored solution must
/// satisfy the Riccati residual bound 100 * tol * norm(P).
int cmd_verify(const std::filesystem::path& input,
               const std::filesystem::path& result, const Flags& flags,
               std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace cvlqr::cli
