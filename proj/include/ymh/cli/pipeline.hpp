#pragma once

#include "ymh/cli/model_file.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ymh::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool parallel = false;
  std::set<std::string> only;  // empty: every section
};

/// Check sections selectable with --only.
const std::vector<std::string>& section_names();

struct CheckRow {
  std::string model;
  std::string section;
  std::string name;
  double value = 0;
  double threshold = 0;
  bool pass = false;
};

struct RunResult {
  nlohmann::ordered_json report;
  std::vector<CheckRow> checks;
  bool passed = false;
};

/// minimize -> vacuum analysis -> enabled checks -> report. Throws InputError
/// for unusable models and NumericalError when a stage cannot be certified.
RunResult run_analysis(const ModelSpec& model, const RunOptions& options);

/// Classifies the connections of the model's holonomy section.
RunResult run_holonomy(const ModelSpec& model, const RunOptions& options);

nlohmann::ordered_json checks_to_json(const std::vector<CheckRow>& rows);

}  // namespace ymh::cli
