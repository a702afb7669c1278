#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mevmix::cli {

enum class Command { validate, eval, sample, taildep, verify };

// Process exit codes; each error class has its own.
enum ExitCode : int {
  kOk = 0,
  kConstraintViolation = 1,
  kUsage = 2,
  kMalformedModel = 3,
  kIo = 4,
  kVerifyFailed = 5,
  kDomain = 6,
};

enum class OutputFormat { json, csv };

struct RunConfig {
  Command command = Command::validate;
  std::vector<std::string> model_paths;  // verify accepts several, others exactly one
  std::optional<std::string> out_path;   // stdout when absent
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  double u = 0.99;
  std::vector<std::vector<std::size_t>> j_sets;  // one-based
  std::optional<std::string> grid_file;
  std::optional<std::string> data_file;
  std::size_t threads = 1;
  std::optional<OutputFormat> format;
  std::optional<std::string> margins;  // "frechet" | "ranks"
  bool uniform = false;
};

// Environment variable supplying the default thread count.
inline constexpr const char* kThreadsEnv = "MEVMIX_THREADS";

// Parses argv. On failure writes a JSON error object to `err` and returns
// the exit code through `exit_code`; returns nullopt then. --help prints
// usage to `out` and also returns nullopt with exit code 0.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out,
                                    std::ostream& err, int& exit_code);

// Executes one command. Results go to config.out_path or `out`; errors are
// written to `err` as {"error": {"code": ..., "kind": ..., "message": ...}}.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mevmix::cli
