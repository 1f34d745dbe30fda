#include "ymh/potential.hpp"

#include "ymh/error.hpp"
#include "ymh/linalg.hpp"

#include <cmath>
#include <string>

namespace ymh {

Potential Potential::rotsym(std::vector<double> coefficients, int n) {
  if (n < 1) throw InputError("potential dimension must be positive");
  if (coefficients.empty()) throw InputError("rotationally symmetric potential needs at least one coefficient");
  Potential pot;
  pot.kind_ = PotentialKind::rotsym;
  pot.n_ = n;
  pot.coeffs_ = std::move(coefficients);
  return pot;
}

Potential Potential::general(int n, ValueFn value, GradientFn gradient, HessianFn hessian) {
  if (n < 1) throw InputError("potential dimension must be positive");
  if (!value) throw InputError("general potential needs an evaluator");
  Potential pot;
  pot.kind_ = PotentialKind::general;
  pot.n_ = n;
  pot.value_ = std::move(value);
  pot.gradient_ = std::move(gradient);
  pot.hessian_ = std::move(hessian);
  return pot;
}

double Potential::p(double u) const {
  require_rotsym();
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double Potential::dp(double u) const {
  require_rotsym();
  double acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * u + static_cast<double>(k) * coeffs_[k];
  return acc;
}

double Potential::d2p(double u) const {
  require_rotsym();
  double acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 2;)
    acc = acc * u + static_cast<double>(k * (k - 1)) * coeffs_[k];
  return acc;
}

bool Potential::bounded_below_hint() const {
  if (kind_ == PotentialKind::general) return true;
  if (coeffs_.size() == 1) return true;
  return coeffs_.back() > 0;
}

double Potential::value(const Eigen::VectorXd& z) const {
  if (z.size() != n_) throw InputError("potential evaluated at a vector of wrong dimension");
  if (kind_ == PotentialKind::rotsym) return p(z.squaredNorm());
  return value_(z);
}

Eigen::VectorXd Potential::gradient(const Eigen::VectorXd& z) const {
  if (z.size() != n_) throw InputError("potential evaluated at a vector of wrong dimension");
  if (kind_ == PotentialKind::rotsym) return 2.0 * dp(z.squaredNorm()) * z;
  if (gradient_) return gradient_(z);
  const double h = fd_step_ * (1.0 + z.norm());
  return fd_gradient([this](const Eigen::VectorXd& x) { return value_(x); }, z, h);
}

Eigen::MatrixXd Potential::hessian(const Eigen::VectorXd& z) const {
  if (z.size() != n_) throw InputError("potential evaluated at a vector of wrong dimension");
  if (kind_ == PotentialKind::rotsym) {
    const double u = z.squaredNorm();
    return 2.0 * dp(u) * Eigen::MatrixXd::Identity(n_, n_) + 4.0 * d2p(u) * z * z.transpose();
  }
  if (hessian_) return hessian_(z);
  const double h = fd_step_ * (1.0 + z.norm());
  return fd_hessian([this](const Eigen::VectorXd& x) { return gradient(x); }, z, h);
}

InvarianceCheck check_invariance(const Potential& potential, const Representationd& rep, int trials,
                                 std::uint64_t seed, double tol) {
  if (rep.n() != potential.n()) throw InputError("potential and representation dimensions differ");
  InvarianceCheck out;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + 2 * static_cast<std::uint64_t>(t);
    const GroupElementd g = random_group_element(rep, s, 1.0);
    const Eigen::VectorXd z = random_algebra_vector<double>(rep.n(), s + 1, 1.0);
    const double v = potential.value(z);
    const double r = std::abs(potential.value(g.matrix * z) - v) / (1.0 + std::abs(v));
    out.max_residual = std::max(out.max_residual, r);
  }
  out.passed = out.max_residual <= tol;
  return out;
}

Eigen::VectorXd transversal_spectrum(const Eigen::MatrixXd& hessian, const Representationd& rep,
                                     const Eigen::VectorXd& z, double rank_tol) {
  const auto tangent = rank_split(rep.orbit_map(z), rank_tol).column_space;
  const Eigen::MatrixXd normal = orthogonal_complement(tangent, rep.n());
  if (normal.cols() == 0) return Eigen::VectorXd(0);
  const Eigen::MatrixXd restricted = normal.transpose() * hessian * normal;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Minimum minimize(const Potential& potential, const Representationd& rep, const Eigen::VectorXd& init,
                 const Tolerances& tol) {
  if (init.size() != potential.n()) throw InputError("initial point has wrong dimension");
  if (rep.n() != potential.n()) throw InputError("potential and representation dimensions differ");

  constexpr double armijo = 1e-4;
  Eigen::VectorXd z = init;
  double v = potential.value(z);
  Eigen::VectorXd g = potential.gradient(z);
  double step = 1.0;
  int it = 0;
  for (; it < tol.max_iter && g.norm() > tol.minimum; ++it) {
    const double g2 = g.squaredNorm();
    double t = std::min(1.0, 2.0 * step);
    bool accepted = false;
    Eigen::VectorXd trial;
    double vt = 0;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      trial = z - t * g;
      vt = potential.value(trial);
      if (vt <= v - armijo * t * g2) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Near the floor of double precision the sufficient-decrease test can no
      // longer resolve V; fall back to requiring a smaller gradient.
      t = std::min(1.0, 2.0 * step);
      for (int k = 0; k < 60; ++k, t *= 0.5) {
        trial = z - t * g;
        if (potential.gradient(trial).norm() < g.norm()) {
          vt = potential.value(trial);
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) break;
    step = t;
    z = trial;
    v = vt;
    g = potential.gradient(z);
  }

  Minimum m;
  m.z0 = z;
  m.value = v;
  m.grad_norm = g.norm();
  m.iterations = it;
  if (m.grad_norm > tol.minimum)
    throw NumericalError("minimize", "gradient norm " + std::to_string(m.grad_norm) + " above tolerance after " +
                                         std::to_string(it) + " iterations");
  // A residual of size ~tol.minimum around a critical origin is the origin;
  // otherwise the orbit of z would look spuriously nontrivial.
  if (z.norm() <= tol.minimum && z.norm() > 0) {
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(z.size());
    if (potential.gradient(origin).norm() <= tol.minimum && potential.value(origin) <= v) {
      z = origin;
      m.z0 = z;
      m.value = potential.value(z);
      m.grad_norm = potential.gradient(z).norm();
    }
  }
  m.hessian = potential.hessian(z);
  m.transversal_spectrum = transversal_spectrum(m.hessian, rep, z, tol.rank);
  if (m.transversal_spectrum.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.hessian, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (m.transversal_spectrum.minCoeff() <= tol.eigen * scale)
      throw NumericalError("minimize", "degenerate minimum: transversal Hessian eigenvalue " +
                                           std::to_string(m.transversal_spectrum.minCoeff()) +
                                           " is not positive");
  }
  return m;
}

double radial_critical_function(const Potential& potential, const Eigen::VectorXd& z) {
  if (potential.kind() != PotentialKind::rotsym)
    throw InputError("radial critical function requires a rotationally symmetric potential");
  if (z.norm() == 0.0) throw InputError("radial critical function is undefined at z = 0");
  return potential.gradient(z).dot(z);
}

double radial_critical_function_profile(const Potential& potential, double r) {
  if (potential.kind() != PotentialKind::rotsym)
    throw InputError("radial critical function requires a rotationally symmetric potential");
  if (r <= 0.0) throw InputError("radial critical function is undefined at r = 0");
  // f(r) = p(r^2)  =>  f'(r) = 2 r p'(r^2)
  const double df = 2.0 * r * potential.dp(r * r);
  return df * r;
}

}  // namespace ymh
