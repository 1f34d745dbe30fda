#pragma once

#include "ymh/rep.hpp"
#include "ymh/tolerances.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace ymh {

enum class PotentialKind { rotsym, general };

/// A G-invariant Higgs potential on R^N.
///
/// Rotationally symmetric potentials are V(z) = p(|z|^2) for a polynomial p
/// given by ascending coefficients; their derivatives are analytic. General
/// potentials wrap a black-box evaluator; missing derivatives fall back to
/// Richardson-extrapolated central differences with step fd_step * (1 + |z|).
class Potential {
 public:
  using ValueFn = std::function<double(const Eigen::VectorXd&)>;
  using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
  using HessianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

  static Potential rotsym(std::vector<double> coefficients, int n);
  static Potential general(int n, ValueFn value, GradientFn gradient = {}, HessianFn hessian = {});

  PotentialKind kind() const { return kind_; }
  int n() const { return n_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double value(const Eigen::VectorXd& z) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& z) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& z) const;

  // Polynomial p(u) and its first two derivatives (rotsym only).
  double p(double u) const;
  double dp(double u) const;
  double d2p(double u) const;

  /// Leading coefficient positive (rotsym); general potentials report true.
  bool bounded_below_hint() const;

  void set_fd_step(double rel_step) { fd_step_ = rel_step; }
  double fd_step() const { return fd_step_; }

 private:
  void require_rotsym() const {
    if (kind_ != PotentialKind::rotsym) throw InputError("polynomial profile requires a rotationally symmetric potential");
  }

  PotentialKind kind_ = PotentialKind::rotsym;
  int n_ = 0;
  std::vector<double> coeffs_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
  double fd_step_ = 1e-4;
};

struct InvarianceCheck {
  double max_residual = 0;  // max |V(gz) - V(z)| / (1 + |V(z)|)
  int trials = 0;
  bool passed = false;
};

InvarianceCheck check_invariance(const Potential& potential, const Representationd& rep, int trials,
                                 std::uint64_t seed, double tol = 1e-9);

struct Minimum {
  Eigen::VectorXd z0;
  double value = 0;
  double grad_norm = 0;
  Eigen::MatrixXd hessian;
  // Hessian eigenvalues on the orthogonal complement of span{T_a z0}.
  Eigen::VectorXd transversal_spectrum;
  int iterations = 0;
};

/// Gradient descent with Armijo backtracking from `init`, followed by
/// certification: the transversal Hessian must be positive definite.
/// Throws NumericalError("minimize", ...) on non-convergence or a degenerate
/// minimum.
Minimum minimize(const Potential& potential, const Representationd& rep, const Eigen::VectorXd& init,
                 const Tolerances& tol = {});

/// Hessian restricted to the orthogonal complement of the orbit tangent space
/// at z, as eigenvalues (ascending).
Eigen::VectorXd transversal_spectrum(const Eigen::MatrixXd& hessian, const Representationd& rep,
                                     const Eigen::VectorXd& z, double rank_tol);

/// F_H(z) = f'(r) r for V = f(|z|), evaluated as grad V(z) . z. It vanishes
/// exactly on the critical set away from the origin. Throws on z = 0.
double radial_critical_function(const Potential& potential, const Eigen::VectorXd& z);

/// The same quantity from the radial profile: f'(r) r with f(r) = p(r^2).
double radial_critical_function_profile(const Potential& potential, double r);

}  // namespace ymh
