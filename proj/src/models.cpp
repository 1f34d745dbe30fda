#include "ymh/models.hpp"

#include "ymh/error.hpp"

#include <complex>

namespace ymh {

namespace {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// su(2) doublet: t_a = -(i/2) sigma_a satisfies [t_a, t_b] = eps_abc t_c.
std::vector<CMatrix> doublet_generators() {
  const cd i(0, 1);
  CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  return {-0.5 * i * s1, -0.5 * i * s2, -0.5 * i * s3};
}

std::vector<double> resolve_couplings(const std::string& name, const PresetParameters& params, std::size_t count) {
  if (params.couplings.empty()) return std::vector<double>(count, 1.0);
  if (params.couplings.size() != count)
    throw InputError("preset '" + name + "' takes " + std::to_string(count) + " coupling(s)");
  return params.couplings;
}

}  // namespace

std::vector<double> mexican_hat(double vev) {
  const double v2 = vev * vev;
  return {v2 * v2, -2.0 * v2, 1.0};
}

std::vector<std::string> preset_names() { return {"abelian_higgs", "electroweak", "su2_adjoint"}; }

Representationd representation_preset(const std::string& name) {
  if (name == "abelian_higgs") {
    CMatrix t(1, 1);
    t(0, 0) = cd(0, 1);
    return realify<double>(u1_algebra(), {t});
  }
  if (name == "electroweak") {
    auto gens = doublet_generators();
    gens.push_back(0.5 * cd(0, 1) * CMatrix::Identity(2, 2));  // hypercharge 1/2
    return realify<double>(algebra_preset("su2xu1"), gens);
  }
  if (name == "su2_adjoint") {
    const auto alg = su2_algebra();
    std::vector<Eigen::MatrixXd> gens;
    for (int a = 0; a < 3; ++a) gens.push_back(ad_matrix(alg, Eigen::VectorXd::Unit(3, a)));
    return Representationd(alg, std::move(gens));
  }
  throw InputError("unknown representation preset '" + name + "'");
}

ModelPreset load_preset(const std::string& name, const PresetParameters& params) {
  if (!(params.vev > 0)) throw InputError("vacuum norm must be positive");
  ModelPreset m;
  m.name = name;
  m.representation = representation_preset(name);
  m.algebra = m.representation.algebra();
  m.couplings = resolve_couplings(name, params, m.algebra.factors().size());
  const int n = m.representation.n();
  m.potential = Potential::rotsym(mexican_hat(params.vev), n);
  m.init = Eigen::VectorXd::Zero(n);
  if (name == "abelian_higgs") {
    m.init(0) = params.vev;
    m.expected = {0, 1, 0, {1}, {1, 1}};
  } else if (name == "electroweak") {
    m.init(0) = params.vev;
    m.expected = {1, 3, 1, {1, 2, 1}, {3, 1}};
  } else {
    m.init(2) = params.vev;
    m.expected = {1, 2, 1, {1, 2}, {2, 1}};
  }
  return m;
}

}  // namespace ymh
