#pragma once

#include "ymh/cli/pipeline.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ymh::cli {

/// Two-space indented JSON with a trailing newline.
std::string render_json(const nlohmann::ordered_json& report);

std::string render_markdown(const nlohmann::ordered_json& report);

/// Fixed-width table, one row per check.
std::string render_check_table(const std::vector<CheckRow>& rows);

}  // namespace ymh::cli
