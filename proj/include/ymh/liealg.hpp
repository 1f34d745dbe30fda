#pragma once

// Compact Lie algebras given by structure constants [e_a, e_b] = sum_k c(a,b,k) e_k,
// together with the Killing form and the coupling-parametrized invariant form.

#include "ymh/error.hpp"
#include "ymh/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace ymh {

enum class FactorKind { simple, abelian };

/// One direct summand of the algebra: a block of basis indices.
struct Factor {
  FactorKind kind = FactorKind::simple;
  std::vector<int> indices;
};

template <typename Scalar_>
class LieAlgebra {
 public:
  using Scalar = Scalar_;
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  LieAlgebra() = default;

  /// `constants` is the flattened tensor, index (a * d + b) * d + k.
  LieAlgebra(int dim, std::vector<Scalar> constants, std::vector<Factor> factors,
             std::vector<std::string> labels = {})
      : dim_(dim), c_(std::move(constants)), factors_(std::move(factors)), labels_(std::move(labels)) {
    if (dim_ < 1) throw InputError("Lie algebra dimension must be positive");
    if (c_.size() != static_cast<std::size_t>(dim_) * dim_ * dim_)
      throw InputError("structure constant tensor has " + std::to_string(c_.size()) +
                       " entries, expected d^3 = " + std::to_string(dim_ * dim_ * dim_));
    if (labels_.empty())
      for (int a = 0; a < dim_; ++a) labels_.push_back("e" + std::to_string(a + 1));
    if (static_cast<int>(labels_.size()) != dim_) throw InputError("basis label count does not match dimension");
    if (factors_.empty()) {
      Factor f;
      for (int a = 0; a < dim_; ++a) f.indices.push_back(a);
      f.kind = FactorKind::simple;
      factors_.push_back(std::move(f));
    }
    std::vector<int> seen(static_cast<std::size_t>(dim_), 0);
    for (const auto& f : factors_) {
      if (f.indices.empty()) throw InputError("empty factor block");
      for (int i : f.indices) {
        if (i < 0 || i >= dim_) throw InputError("factor index out of range");
        ++seen[static_cast<std::size_t>(i)];
      }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; }))
      throw InputError("factors must partition the basis indices");
  }

  int dim() const { return dim_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Scalar>& constants() const { return c_; }

  Scalar c(int a, int b, int k) const {
    return c_[(static_cast<std::size_t>(a) * dim_ + b) * dim_ + k];
  }

 private:
  int dim_ = 0;
  std::vector<Scalar> c_;
  std::vector<Factor> factors_;
  std::vector<std::string> labels_;
};

using LieAlgebrad = LieAlgebra<double>;

template <typename Scalar>
struct AlgebraValidation {
  Scalar antisymmetry = 0;
  Scalar jacobi = 0;
  Scalar factor_coupling = 0;  // largest cross-block or abelian-block constant
  bool passed = false;
};

template <typename Scalar>
AlgebraValidation<Scalar> validate_algebra(const LieAlgebra<Scalar>& alg, Scalar tol) {
  const int d = alg.dim();
  AlgebraValidation<Scalar> out;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k)
        out.antisymmetry = std::max(out.antisymmetry, Scalar(std::abs(alg.c(a, b, k) + alg.c(b, a, k))));

  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int e = 0; e < d; ++e)
        for (int k = 0; k < d; ++k) {
          Scalar s = 0;
          for (int m = 0; m < d; ++m)
            s += alg.c(a, b, m) * alg.c(m, e, k) + alg.c(b, e, m) * alg.c(m, a, k) +
                 alg.c(e, a, m) * alg.c(m, b, k);
          out.jacobi = std::max(out.jacobi, Scalar(std::abs(s)));
        }

  std::vector<int> block(static_cast<std::size_t>(d));
  std::vector<bool> abelian(alg.factors().size());
  for (std::size_t f = 0; f < alg.factors().size(); ++f) {
    abelian[f] = alg.factors()[f].kind == FactorKind::abelian;
    for (int i : alg.factors()[f].indices) block[static_cast<std::size_t>(i)] = static_cast<int>(f);
  }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) {
        const auto fa = static_cast<std::size_t>(block[static_cast<std::size_t>(a)]);
        const bool same = block[static_cast<std::size_t>(a)] == block[static_cast<std::size_t>(b)] &&
                          block[static_cast<std::size_t>(b)] == block[static_cast<std::size_t>(k)];
        if (!same || abelian[fa])
          out.factor_coupling = std::max(out.factor_coupling, Scalar(std::abs(alg.c(a, b, k))));
      }

  out.passed = out.antisymmetry <= tol && out.jacobi <= tol && out.factor_coupling <= tol;
  return out;
}

/// (ad_x)(k, b) = sum_a x_a c(a, b, k), i.e. ad_x e_b = [x, e_b].
template <typename Scalar, typename Derived>
MatrixX<Scalar> ad_matrix(const LieAlgebra<Scalar>& alg, const Eigen::MatrixBase<Derived>& x) {
  const int d = alg.dim();
  if (x.size() != d) throw InputError("ad_matrix: coefficient vector has wrong length");
  MatrixX<Scalar> ad = MatrixX<Scalar>::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    if (x(a) == Scalar(0)) continue;
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) ad(k, b) += x(a) * alg.c(a, b, k);
  }
  return ad;
}

template <typename Scalar>
MatrixX<Scalar> killing_form(const LieAlgebra<Scalar>& alg) {
  const int d = alg.dim();
  std::vector<MatrixX<Scalar>> ads;
  ads.reserve(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) ads.push_back(ad_matrix(alg, VectorX<Scalar>::Unit(d, a)));
  MatrixX<Scalar> kappa(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b)
      kappa(a, b) = kappa(b, a) = (ads[static_cast<std::size_t>(a)] * ads[static_cast<std::size_t>(b)]).trace();
  return kappa;
}

/// Positive-definite, ad-invariant bilinear form on the algebra.
template <typename Scalar>
struct InvariantForm {
  MatrixX<Scalar> matrix;
  std::vector<Scalar> couplings;  // one per factor
};

/// beta = sum_k g_k^{-2} B_k. On a simple block B_k is -kappa restricted to
/// the block, scaled so its mean diagonal entry is 1 (an orthonormal basis for
/// the usual su(n) conventions); on an abelian block B_k is the identity.
template <typename Scalar>
InvariantForm<Scalar> build_invariant_form(const LieAlgebra<Scalar>& alg,
                                           const std::vector<Scalar>& couplings) {
  if (couplings.size() != alg.factors().size())
    throw InputError("expected " + std::to_string(alg.factors().size()) + " coupling constants, got " +
                     std::to_string(couplings.size()));
  for (Scalar g : couplings)
    if (!(g > 0)) throw InputError("coupling constants must be positive");

  const MatrixX<Scalar> kappa = killing_form(alg);
  InvariantForm<Scalar> out;
  out.couplings = couplings;
  out.matrix = MatrixX<Scalar>::Zero(alg.dim(), alg.dim());
  for (std::size_t f = 0; f < alg.factors().size(); ++f) {
    const auto& idx = alg.factors()[f].indices;
    const auto m = static_cast<Eigen::Index>(idx.size());
    MatrixX<Scalar> block(m, m);
    if (alg.factors()[f].kind == FactorKind::abelian) {
      block.setIdentity();
    } else {
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
          block(i, j) = -kappa(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(block, Eigen::EigenvaluesOnly);
      const Scalar scale = block.trace() / Scalar(m);
      if (!(es.eigenvalues().minCoeff() > Scalar(1e-12) * std::max(Scalar(1), scale)))
        throw InputError("Killing form is not definite on factor " + std::to_string(f) +
                         " tagged simple (mis-tagged abelian factor?)");
      block /= scale;
    }
    const Scalar w = Scalar(1) / (couplings[f] * couplings[f]);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        out.matrix(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]) = w * block(i, j);
  }
  return out;
}

/// The coupling-free block form B (all couplings 1). Orthogonality on the
/// algebra (stabilizer complement) is measured with this form.
template <typename Scalar>
MatrixX<Scalar> block_form(const LieAlgebra<Scalar>& alg) {
  return build_invariant_form(alg, std::vector<Scalar>(alg.factors().size(), Scalar(1))).matrix;
}

/// max_a |ad_a^T beta + beta ad_a|, the ad-invariance defect of a bilinear form.
template <typename Scalar>
Scalar invariance_residual(const LieAlgebra<Scalar>& alg, const MatrixX<Scalar>& form) {
  Scalar worst = 0;
  for (int a = 0; a < alg.dim(); ++a) {
    const MatrixX<Scalar> ad = ad_matrix(alg, VectorX<Scalar>::Unit(alg.dim(), a));
    worst = std::max(worst, (ad.transpose() * form + form * ad).cwiseAbs().maxCoeff());
  }
  return worst;
}

/// Direct sum of two algebras; the second algebra's basis follows the first.
template <typename Scalar>
LieAlgebra<Scalar> direct_sum(const LieAlgebra<Scalar>& x, const LieAlgebra<Scalar>& y) {
  const int dx = x.dim();
  const int d = dx + y.dim();
  std::vector<Scalar> c(static_cast<std::size_t>(d) * d * d, Scalar(0));
  auto at = [d](int a, int b, int k) { return (static_cast<std::size_t>(a) * d + b) * d + k; };
  for (int a = 0; a < dx; ++a)
    for (int b = 0; b < dx; ++b)
      for (int k = 0; k < dx; ++k) c[at(a, b, k)] = x.c(a, b, k);
  for (int a = 0; a < y.dim(); ++a)
    for (int b = 0; b < y.dim(); ++b)
      for (int k = 0; k < y.dim(); ++k) c[at(dx + a, dx + b, dx + k)] = y.c(a, b, k);
  std::vector<Factor> factors = x.factors();
  for (Factor f : y.factors()) {
    for (int& i : f.indices) i += dx;
    factors.push_back(std::move(f));
  }
  std::vector<std::string> labels = x.labels();
  labels.insert(labels.end(), y.labels().begin(), y.labels().end());
  return LieAlgebra<Scalar>(d, std::move(c), std::move(factors), std::move(labels));
}

/// su(2) with c(a,b,k) = epsilon_abk, so kappa = -2 I.
template <typename Scalar = double>
LieAlgebra<Scalar> su2_algebra() {
  std::vector<Scalar> c(27, Scalar(0));
  auto set = [&](int a, int b, int k, Scalar v) { c[static_cast<std::size_t>((a * 3 + b) * 3 + k)] = v; };
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int k = (a + 2) % 3;
    set(a, b, k, 1);
    set(b, a, k, -1);
  }
  return LieAlgebra<Scalar>(3, std::move(c), {Factor{FactorKind::simple, {0, 1, 2}}}, {"t1", "t2", "t3"});
}

template <typename Scalar = double>
LieAlgebra<Scalar> u1_algebra() {
  return LieAlgebra<Scalar>(1, {Scalar(0)}, {Factor{FactorKind::abelian, {0}}}, {"y"});
}

/// Preset algebras by name: "su2", "u1", "su2xu1".
template <typename Scalar = double>
LieAlgebra<Scalar> algebra_preset(const std::string& name) {
  if (name == "su2") return su2_algebra<Scalar>();
  if (name == "u1") return u1_algebra<Scalar>();
  if (name == "su2xu1") return direct_sum(su2_algebra<Scalar>(), u1_algebra<Scalar>());
  throw InputError("unknown algebra preset '" + name + "'");
}

}  // namespace ymh
