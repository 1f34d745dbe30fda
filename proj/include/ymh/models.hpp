#pragma once

// Shipped example models: abelian Higgs, electroweak su(2)+u(1) on C^2, and
// su(2) acting on R^3 by the adjoint representation. All use p(u) = (v^2 - u)^2.

#include "ymh/liealg.hpp"
#include "ymh/potential.hpp"
#include "ymh/rep.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace ymh {

struct PresetParameters {
  std::vector<double> couplings;  // empty: all ones
  double vev = 1.0;               // |z0|
};

struct ModelExpectations {
  int stabilizer_dim = 0;
  int goldstone_dim = 0;
  int massless_gauge = 0;
  std::vector<int> gauge_multiplicities;  // ascending eigenvalue order
  std::vector<int> higgs_multiplicities;
};

struct ModelPreset {
  std::string name;
  LieAlgebrad algebra;
  Representationd representation;
  Potential potential;
  std::vector<double> couplings;
  Eigen::VectorXd init;  // starting point for minimize, already on the vacuum sphere
  ModelExpectations expected;
};

/// Mexican-hat coefficients of p(u) = (v^2 - u)^2.
std::vector<double> mexican_hat(double vev);

ModelPreset load_preset(const std::string& name, const PresetParameters& params = {});
std::vector<std::string> preset_names();

/// Representation-only presets: "abelian_higgs", "electroweak", "su2_adjoint".
Representationd representation_preset(const std::string& name);

}  // namespace ymh
