#pragma once

// Vacuum structure of a spontaneously broken gauge theory at a minimum z0:
// stabilizer subalgebra, Goldstone and physical Higgs spaces, the Higgs and
// gauge-boson mass matrices, and the identities relating them.
//
// Orthogonality on the Lie algebra uses the positive-definite block form B
// (normalized -kappa on simple factors, identity on abelian ones); the gauge
// mass matrix is defined against the coupling-dependent form beta.

#include "ymh/linalg.hpp"
#include "ymh/liealg.hpp"
#include "ymh/potential.hpp"
#include "ymh/rep.hpp"
#include "ymh/tolerances.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ymh {

using GroupedSpectrumd = GroupedSpectrum<double>;

/// B-orthonormal basis (columns, d x h) of {eta : rho'(eta) z0 = 0}.
Eigen::MatrixXd stabilizer(const Representationd& rep, const Eigen::VectorXd& z0, double rank_tol = 1e-8);

/// B-orthonormal basis of the B-orthogonal complement of span(lie_h).
Eigen::MatrixXd complement(const LieAlgebrad& algebra, const Eigen::MatrixXd& lie_h);

/// Orthonormal basis of W_G = {T_eta z0 : eta in lie_h_perp}. Throws
/// NumericalError if eta -> T_eta z0 is not injective on the complement.
Eigen::MatrixXd goldstone_space(const Representationd& rep, const Eigen::VectorXd& z0,
                                const Eigen::MatrixXd& lie_h_perp, double rank_tol = 1e-8);

/// Orthonormal basis of the orthogonal complement of W_G in R^n.
Eigen::MatrixXd phys_space(const Eigen::MatrixXd& goldstone, int n);

struct HiggsMass {
  Eigen::MatrixXd matrix;
  GroupedSpectrumd spectrum;
};

/// M2_H = Hess V(z0). Throws NumericalError if an eigenvalue is below
/// -tol.eigen * max(1, lambda_max).
HiggsMass mass_matrix_higgs(const Potential& potential, const Eigen::VectorXd& z0, const Tolerances& tol = {});

struct GaugeMass {
  Eigen::MatrixXd gram;    // G_ab = 2 (T_a z0).(T_b z0)
  Eigen::MatrixXd matrix;  // beta^{-1} G
  GroupedSpectrumd spectrum;  // generalized (G, beta); basis columns beta-orthonormal
};

GaugeMass mass_matrix_ym(const Representationd& rep, const Eigen::VectorXd& z0, const Eigen::MatrixXd& beta,
                         const Tolerances& tol = {});

struct VacuumAnalysis {
  Eigen::VectorXd z0;
  Eigen::MatrixXd block_form;
  Eigen::MatrixXd beta;
  Eigen::MatrixXd lie_h;
  Eigen::MatrixXd lie_h_perp;
  Eigen::MatrixXd goldstone;
  Eigen::MatrixXd physical;
  HiggsMass higgs;
  GaugeMass gauge;
  double orbit_sigma_max = 0;
  double stabilizer_residual = 0;  // max |T_eta z0| over the lie_h basis

  int algebra_dim() const { return static_cast<int>(beta.rows()); }
  int stabilizer_dim() const { return static_cast<int>(lie_h.cols()); }
};

VacuumAnalysis analyze_vacuum(const Representationd& rep, const Potential& potential,
                              const Eigen::MatrixXd& beta, const Eigen::VectorXd& z0, const Tolerances& tol = {});

/// One identity: counts compare exactly; residual-type checks report the
/// residual in `got` and the threshold in `expected`.
struct IdentityCheck {
  std::string name;
  double expected = 0;
  double got = 0;
  bool pass = false;
};

struct RankIdentityReport {
  std::vector<IdentityCheck> checks;
  bool passed = false;
};

RankIdentityReport rank_identities(const VacuumAnalysis& analysis, const Tolerances& tol = {});

struct GaugeInvarianceReport {
  int trials = 0;
  double higgs_deviation = 0;   // max eigenvalue deviation of M2_H
  double gauge_deviation = 0;   // max eigenvalue deviation of M2_YM
  double higgs_covariance = 0;  // |M2_H(g z0) - R M2_H(z0) R^T|
  double gram_covariance = 0;   // |G(g z0) - A^T G(z0) A|, A = Ad(g^{-1})
  bool passed = false;

  double max_deviation() const { return std::max(higgs_deviation, gauge_deviation); }
};

GaugeInvarianceReport spectrum_gauge_invariance(const Representationd& rep, const Potential& potential,
                                                const Eigen::MatrixXd& beta, const Eigen::VectorXd& z0,
                                                int trials, std::uint64_t seed, const Tolerances& tol = {},
                                                bool parallel = false);

struct UnitaryGauge {
  Eigen::VectorXd nu;              // (|z0| / |phi|) phi
  double scale = 0;                // |phi| / |z0|
  double goldstone_overlap = 0;    // max |w . phi| over an orthonormal basis of W_G(nu)
};

/// Closed-form unitary gauge for rotationally symmetric potentials. Throws
/// InputError when phi vanishes (no such vacuum exists) or z0 = 0.
UnitaryGauge unitary_gauge_rotsym(const Potential& potential, const Representationd& rep,
                                  const Eigen::VectorXd& z0, const Eigen::VectorXd& phi,
                                  const Tolerances& tol = {});

struct GaugeFixing {
  GroupElementd element;
  Eigen::VectorXd pulled_back;  // rho(g)^{-1} phi
  double residual = 0;          // max over the complement basis of |(T_eta z0) . pulled_back|
  double theta = 0;             // z0 . pulled_back
  int iterations = 0;
  int restarts = 0;
};

/// Maximizes Theta(g) = z0 . rho(g)^{-1} phi by Riemannian gradient ascent
/// g <- g exp(t eta), eta in the stabilizer complement, until the critical-set
/// residual drops below tol.critical with Theta > 0. Restarts from random
/// elements up to five times.
GaugeFixing find_unitary_gauge_element(const Representationd& rep, const Eigen::VectorXd& z0,
                                       const Eigen::VectorXd& phi, std::uint64_t seed, const Tolerances& tol = {});

struct FluctuationCheck {
  double c2_extracted = 0;
  double c2_expected = 0;     // phi^T M2_H phi / 2
  double higgs_residual = 0;  // |c2 - expected| / (1 + |c2|)
  double gauge_lhs = 0;       // |sum_a a_a T_a z0|^2
  double gauge_rhs = 0;       // beta(M2_YM a, a) / 2
  double gauge_residual = 0;
};

/// Quadratic coefficients of the potential and of the gauge kinetic term
/// along a fluctuation (phi_phys, a). phi_phys must lie in W_phys.
FluctuationCheck fluctuation_mass_check(const VacuumAnalysis& analysis, const Potential& potential,
                                        const Representationd& rep, const Eigen::VectorXd& phi_phys,
                                        const Eigen::VectorXd& a);

struct GaugeMode {
  double mass_squared = 0;
  double twice_norm = 0;   // 2 |T_eta z0|^2 for the beta-unit eigenvector eta
  double g_phys = 0;       // sqrt(B(eta, eta))
  double w_norm2 = 0;      // |T_eta' z0|^2 for the B-unit eta' = eta / g_phys
  double residual = 0;     // |m^2 - 2 g_phys^2 |T_eta' z0|^2|
};

struct NormalGradientReport {
  double r0 = 0;
  bool higgs_applicable = false;            // rotsym with r0 = 1
  std::optional<double> higgs_residual;     // max |grad F_H(z) - M2_H(z) e(z)|
  int higgs_points = 0;
  double gauge_residual = 0;                // max FD residual over basis pairs
  int gauge_pairs = 0;
  std::vector<GaugeMode> modes;
  double mode_residual = 0;
  bool passed = false;
};

NormalGradientReport normal_gradient_checks(const VacuumAnalysis& analysis, const Potential& potential,
                                            const Representationd& rep, int trials, std::uint64_t seed,
                                            const Tolerances& tol = {});

}  // namespace ymh
