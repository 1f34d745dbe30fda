#pragma once

// Dense linear-algebra helpers shared by the analysis modules: SVD-based rank
// decisions, orthonormal bases and complements, grouped spectra and
// Richardson-extrapolated finite differences.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace ymh {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Numerical rank decision of a matrix A. `kernel` and `row_space` are
/// orthonormal and together span R^cols; `column_space` spans im A.
template <typename Scalar>
struct RankSplit {
  int rank = 0;
  Scalar sigma_max = 0;
  Scalar threshold = 0;
  VectorX<Scalar> singular_values;
  MatrixX<Scalar> kernel;
  MatrixX<Scalar> row_space;
  MatrixX<Scalar> column_space;
};

/// Flip each column so that its largest-magnitude entry is positive.
template <typename Derived>
void normalize_signs(Eigen::MatrixBase<Derived>& basis) {
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Eigen::Index imax = 0;
    basis.col(j).cwiseAbs().maxCoeff(&imax);
    if (basis(imax, j) < 0) basis.col(j) *= -1;
  }
}

template <typename Derived>
RankSplit<typename Derived::Scalar> rank_split(const Eigen::MatrixBase<Derived>& a,
                                               typename Derived::Scalar rel_tol) {
  using Scalar = typename Derived::Scalar;
  RankSplit<Scalar> out;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (rows == 0 || cols == 0) {
    out.kernel = MatrixX<Scalar>::Identity(cols, cols);
    out.row_space = MatrixX<Scalar>(cols, 0);
    out.column_space = MatrixX<Scalar>(rows, 0);
    return out;
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  out.sigma_max = out.singular_values.size() > 0 ? out.singular_values(0) : Scalar(0);
  out.threshold = rel_tol * out.sigma_max;
  int rank = 0;
  if (out.sigma_max > 0) {
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
      if (out.singular_values(i) > out.threshold) ++rank;
  }
  out.rank = rank;
  out.kernel = svd.matrixV().rightCols(cols - rank);
  out.row_space = svd.matrixV().leftCols(rank);
  out.column_space = svd.matrixU().leftCols(rank);
  normalize_signs(out.kernel);
  normalize_signs(out.row_space);
  normalize_signs(out.column_space);
  return out;
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns of q inside R^n.
template <typename Derived>
MatrixX<typename Derived::Scalar> orthogonal_complement(const Eigen::MatrixBase<Derived>& q,
                                                        Eigen::Index n) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = q.cols();
  if (k == 0) return MatrixX<Scalar>::Identity(n, n);
  if (k >= n) return MatrixX<Scalar>(n, 0);
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(q);
  MatrixX<Scalar> full = qr.householderQ() * MatrixX<Scalar>::Identity(n, n);
  MatrixX<Scalar> out = full.rightCols(n - k);
  normalize_signs(out);
  return out;
}

template <typename Scalar>
struct SpectrumGroup {
  Scalar value = 0;
  int multiplicity = 0;
  MatrixX<Scalar> basis;
};

/// Eigenvalues clustered into degenerate groups, ascending.
template <typename Scalar>
struct GroupedSpectrum {
  std::vector<SpectrumGroup<Scalar>> groups;
  Scalar tolerance = 0;

  int dimension() const {
    int n = 0;
    for (const auto& g : groups) n += g.multiplicity;
    return n;
  }

  // Groups whose eigenvalue magnitude is within the grouping tolerance.
  int massless_multiplicity() const {
    int n = 0;
    for (const auto& g : groups)
      if (std::abs(g.value) <= tolerance) n += g.multiplicity;
    return n;
  }

  int massive_dimension() const { return dimension() - massless_multiplicity(); }
};

/// Groups ascending eigenvalues; adjacent values closer than
/// rel_tol * (1 + |lambda|_max) merge into one group.
template <typename Scalar>
GroupedSpectrum<Scalar> group_spectrum(const VectorX<Scalar>& values,
                                       const MatrixX<Scalar>& vectors, Scalar rel_tol) {
  GroupedSpectrum<Scalar> out;
  const Eigen::Index n = values.size();
  Scalar lmax = 0;
  for (Eigen::Index i = 0; i < n; ++i) lmax = std::max(lmax, Scalar(std::abs(values(i))));
  out.tolerance = rel_tol * (Scalar(1) + lmax);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });

  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && values(order[end]) - values(order[end - 1]) <= out.tolerance) ++end;
    SpectrumGroup<Scalar> g;
    g.multiplicity = static_cast<int>(end - start);
    g.basis.resize(vectors.rows(), g.multiplicity);
    Scalar sum = 0;
    for (std::size_t i = start; i < end; ++i) {
      sum += values(order[i]);
      g.basis.col(static_cast<Eigen::Index>(i - start)) = vectors.col(order[i]);
    }
    g.value = sum / Scalar(g.multiplicity);
    out.groups.push_back(std::move(g));
    start = end;
  }
  return out;
}

/// Central difference of f along direction `dir`, one level of Richardson
/// extrapolation: (4 D(h/2) - D(h)) / 3.
template <typename F, typename Vec>
auto directional_derivative(const F& f, const Vec& z, const Vec& dir,
                            typename Vec::Scalar h) {
  auto central = [&](typename Vec::Scalar step) {
    Vec plus = z + step * dir;
    Vec minus = z - step * dir;
    return (f(plus) - f(minus)) / (2 * step);
  };
  return (4 * central(h / 2) - central(h)) / 3;
}

/// Finite-difference gradient of a scalar function.
template <typename F, typename Scalar>
VectorX<Scalar> fd_gradient(const F& f, const VectorX<Scalar>& z, Scalar h) {
  const Eigen::Index n = z.size();
  VectorX<Scalar> g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorX<Scalar> e = VectorX<Scalar>::Unit(n, i);
    g(i) = directional_derivative(f, z, e, h);
  }
  return g;
}

/// Finite-difference Jacobian of a vector function, symmetrized (used for
/// Hessians built from gradients).
template <typename G, typename Scalar>
MatrixX<Scalar> fd_hessian(const G& grad, const VectorX<Scalar>& z, Scalar h) {
  const Eigen::Index n = z.size();
  MatrixX<Scalar> hess(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorX<Scalar> e = VectorX<Scalar>::Unit(n, i);
    auto central = [&](Scalar step) -> VectorX<Scalar> {
      return (grad(VectorX<Scalar>(z + step * e)) - grad(VectorX<Scalar>(z - step * e))) / (2 * step);
    };
    hess.col(i) = (4 * central(h / 2) - central(h)) / 3;
  }
  return Scalar(0.5) * (hess + hess.transpose());
}

}  // namespace ymh
