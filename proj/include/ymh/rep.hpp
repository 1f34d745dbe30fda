#pragma once

// Orthogonal representations of a compact Lie algebra on R^N and the group
// elements they exponentiate to.
//
// Complex representations are realified with the stacking convention
// z = x + i y  ->  (x_1..x_n, y_1..y_n), so A + iB acts as [[A, -B], [B, A]].

#include "ymh/error.hpp"
#include "ymh/liealg.hpp"
#include "ymh/linalg.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace ymh {

template <typename Scalar_>
class Representation {
 public:
  using Scalar = Scalar_;
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  Representation() = default;

  Representation(LieAlgebra<Scalar> algebra, std::vector<Matrix> generators)
      : algebra_(std::move(algebra)), generators_(std::move(generators)) {
    if (static_cast<int>(generators_.size()) != algebra_.dim())
      throw InputError("representation has " + std::to_string(generators_.size()) +
                       " generators, algebra dimension is " + std::to_string(algebra_.dim()));
    n_ = static_cast<int>(generators_.front().rows());
    for (const auto& t : generators_)
      if (t.rows() != n_ || t.cols() != n_) throw InputError("generator matrices must all be N x N");
    if (n_ < 1) throw InputError("representation space must be nonzero");
  }

  const LieAlgebra<Scalar>& algebra() const { return algebra_; }
  int n() const { return n_; }
  int dim() const { return algebra_.dim(); }
  const std::vector<Matrix>& generators() const { return generators_; }
  const Matrix& generator(int a) const { return generators_[static_cast<std::size_t>(a)]; }

  /// rho'(x) = sum_a x_a T_a
  template <typename Derived>
  Matrix action(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != dim()) throw InputError("algebra vector has wrong length");
    Matrix out = Matrix::Zero(n_, n_);
    for (int a = 0; a < dim(); ++a) out += x(a) * generators_[static_cast<std::size_t>(a)];
    return out;
  }

  /// N x d matrix whose columns are T_a z (the infinitesimal orbit map).
  template <typename Derived>
  Matrix orbit_map(const Eigen::MatrixBase<Derived>& z) const {
    if (z.size() != n_) throw InputError("state vector has wrong length");
    Matrix s(n_, dim());
    for (int a = 0; a < dim(); ++a) s.col(a) = generators_[static_cast<std::size_t>(a)] * z;
    return s;
  }

 private:
  LieAlgebra<Scalar> algebra_;
  int n_ = 0;
  std::vector<Matrix> generators_;
};

using Representationd = Representation<double>;

template <typename Scalar>
struct RepresentationValidation {
  Scalar antisymmetry = 0;
  Scalar equivariance = 0;
  int generator_rank = 0;
  bool faithful = false;
  bool passed = false;
};

/// Checks T_a^T = -T_a, [T_a, T_b] = sum_k c(a,b,k) T_k, and that a -> T_a is
/// injective (rank of the stacked vec(T_a) matrix, relative cutoff rank_tol).
template <typename Scalar>
RepresentationValidation<Scalar> validate_representation(const Representation<Scalar>& rep, Scalar tol,
                                                         Scalar rank_tol = Scalar(1e-8)) {
  RepresentationValidation<Scalar> out;
  const int d = rep.dim();
  const int n = rep.n();
  for (int a = 0; a < d; ++a)
    out.antisymmetry = std::max(out.antisymmetry, (rep.generator(a) + rep.generator(a).transpose()).cwiseAbs().maxCoeff());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      MatrixX<Scalar> r = rep.generator(a) * rep.generator(b) - rep.generator(b) * rep.generator(a);
      for (int k = 0; k < d; ++k) r -= rep.algebra().c(a, b, k) * rep.generator(k);
      out.equivariance = std::max(out.equivariance, r.cwiseAbs().maxCoeff());
    }
  MatrixX<Scalar> stacked(static_cast<Eigen::Index>(n) * n, d);
  for (int a = 0; a < d; ++a) stacked.col(a) = rep.generator(a).reshaped();
  out.generator_rank = rank_split(stacked, rank_tol).rank;
  out.faithful = out.generator_rank == d;
  out.passed = out.antisymmetry <= tol && out.equivariance <= tol && out.faithful;
  return out;
}

/// Real 2n x 2n form of a complex n x n matrix.
template <typename Scalar>
MatrixX<Scalar> realify_matrix(const MatrixX<std::complex<Scalar>>& m) {
  const Eigen::Index n = m.rows();
  MatrixX<Scalar> out(2 * n, 2 * n);
  const MatrixX<Scalar> a = m.real();
  const MatrixX<Scalar> b = m.imag();
  out << a, -b, b, a;
  return out;
}

template <typename Scalar>
Representation<Scalar> realify(const LieAlgebra<Scalar>& algebra,
                               const std::vector<MatrixX<std::complex<Scalar>>>& generators,
                               Scalar tol = Scalar(1e-10)) {
  std::vector<MatrixX<Scalar>> real;
  real.reserve(generators.size());
  for (const auto& t : generators) {
    if (t.rows() != t.cols()) throw InputError("complex generator must be square");
    if ((t + t.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw InputError("complex generator is not anti-Hermitian");
    real.push_back(realify_matrix(t));
  }
  return Representation<Scalar>(algebra, std::move(real));
}

template <typename Scalar_>
struct GroupElement {
  using Scalar = Scalar_;
  MatrixX<Scalar> matrix;
  std::optional<VectorX<Scalar>> log_coords;

  static GroupElement identity(int n) { return {MatrixX<Scalar>::Identity(n, n), std::nullopt}; }

  GroupElement inverse() const {
    GroupElement g{matrix.transpose(), std::nullopt};
    if (log_coords) g.log_coords = -*log_coords;
    return g;
  }

  GroupElement operator*(const GroupElement& other) const { return {matrix * other.matrix, std::nullopt}; }

  Scalar orthogonality_defect() const {
    const auto n = matrix.rows();
    return (matrix.transpose() * matrix - MatrixX<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
  }

  bool is_special_orthogonal(Scalar tol) const {
    return orthogonality_defect() <= tol && std::abs(matrix.determinant() - Scalar(1)) <= tol;
  }
};

using GroupElementd = GroupElement<double>;

/// exp(sum_a theta_a T_a), scaling-and-squaring Pade.
template <typename Scalar, typename Derived>
GroupElement<Scalar> exp_element(const Representation<Scalar>& rep, const Eigen::MatrixBase<Derived>& theta) {
  const MatrixX<Scalar> x = rep.action(theta);
  return {x.exp(), VectorX<Scalar>(theta)};
}

/// Deterministic N(0, scale^2) coefficients from `seed`.
template <typename Scalar = double>
VectorX<Scalar> random_algebra_vector(int dim, std::uint64_t seed, Scalar scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  VectorX<Scalar> x(dim);
  for (int a = 0; a < dim; ++a) x(a) = scale * Scalar(dist(rng));
  return x;
}

template <typename Scalar>
GroupElement<Scalar> random_group_element(const Representation<Scalar>& rep, std::uint64_t seed, Scalar scale) {
  return exp_element(rep, random_algebra_vector<Scalar>(rep.dim(), seed, scale));
}

}  // namespace ymh
