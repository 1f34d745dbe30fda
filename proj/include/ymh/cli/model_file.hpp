#pragma once

// JSON model files. Sections: name, algebra, representation, potential,
// couplings, vacuum, analysis, holonomy. See README for the full schema.

#include "ymh/holonomy.hpp"
#include "ymh/liealg.hpp"
#include "ymh/potential.hpp"
#include "ymh/rep.hpp"
#include "ymh/tolerances.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ymh::cli {

/// One edge entry: algebra parameters of H, or an explicit N x N matrix.
using EdgeValue = std::variant<Eigen::VectorXd, Eigen::MatrixXd>;

struct HolonomySpec {
  SpacetimeKind kind = SpacetimeKind::path;
  int length = 0;           // number of vertices
  std::string group = "u1";  // "u1" or "stabilizer"
  std::vector<std::vector<EdgeValue>> connections;
  int random_connections = 0;
};

struct ModelSpec {
  std::string name;
  LieAlgebrad algebra;
  Representationd representation;
  std::optional<Potential> potential;
  std::vector<double> couplings;
  std::optional<Eigen::VectorXd> init;
  std::uint64_t seed = 1;
  int trials = 20;
  Tolerances tolerances;
  std::optional<HolonomySpec> holonomy;
  nlohmann::ordered_json source;
};

/// Throws InputError naming the offending field.
ModelSpec parse_model(const nlohmann::ordered_json& doc);

/// Reads and parses a model file; JSON syntax errors carry line and column.
ModelSpec load_model_file(const std::string& path);

/// The model file equivalent of a shipped preset.
nlohmann::ordered_json preset_document(const std::string& name);

nlohmann::ordered_json tolerances_to_json(const Tolerances& tol);

}  // namespace ymh::cli
