#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "treecomp/operator.hpp"
#include "treecomp/tree.hpp"

namespace treecomp::cli {

inline constexpr const char* kReportSchema = "report-v1";
inline constexpr const char* kBudgetEnv = "TREECOMP_BUDGET";

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& s);

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitSpecError = 2;
inline constexpr int kExitBudgetError = 3;

struct RunConfig {
  // Spec text (already loaded when given as a file path) and its origin.
  std::string spec_text;
  std::string spec_source = "inline";
  std::size_t depth = 12;
  // Defaults to depth + 4.
  std::optional<std::size_t> preimage_depth;
  std::vector<std::size_t> cutoffs = {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
  double tolerance = 1e-9;
  double blowup_threshold = 100.0;
  std::size_t budget = kDefaultVertexBudget;
  std::uint64_t seed = 0;
  std::size_t samples = 16;
  Format format = Format::Text;
  Assumptions assumptions;
  // 0 = one worker per hardware thread.
  std::size_t threads = 0;
  bool timing = true;

  std::size_t resolved_preimage_depth() const { return preimage_depth.value_or(depth + 4); }

  // Throws ConfigError when the fields are inconsistent.
  void validate() const;
};

struct OracleConfig {
  std::size_t instances = 100;
  std::size_t max_depth = 4;
  std::uint64_t seed = 1;
  std::size_t samples = 64;
  double tolerance = 1e-9;
  std::size_t threads = 0;
  Format format = Format::Text;
  // Print the tables of the instance with this seed instead of a campaign.
  bool echo = false;
  bool timing = true;
};

struct ExamplesConfig {
  std::string which = "all";
  Format format = Format::Text;
  std::size_t threads = 0;
  // Write the built-in spec files into this directory first.
  std::optional<std::string> write_specs_dir;
  bool timing = true;
};

/// A finished command: the structured report, its rendering in the
/// requested format, and the process exit code. On error paths `report` is
/// null and `output` is empty; `error` holds the message.
struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string output;
  std::string error;
};

CommandResult cmd_analyze(const RunConfig& config);
CommandResult cmd_oracle(const OracleConfig& config);
CommandResult cmd_examples(const ExamplesConfig& config);

/// "pinch=m,M", "finite-range" or "sigma=X", merged into `into`.
void parse_assumption(const std::string& text, Assumptions& into);

/// Comma-separated cutoff list.
std::vector<std::size_t> parse_cutoffs(const std::string& text);

/// Reads `source` as a file if one exists at that path, else returns it
/// as inline spec text.
std::string load_spec_source(const std::string& source, bool* was_file = nullptr);

/// Vertex budget from the environment override, or the default.
std::size_t budget_from_env();

/// JSON with every "timing_ms" member removed, for reproducibility checks.
nlohmann::json without_timing(nlohmann::json report);

}  // namespace treecomp::cli
