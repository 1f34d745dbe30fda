#include "ymh/error.hpp"
#include "ymh/models.hpp"
#include "ymh/rep.hpp"

#include <gtest/gtest.h>

#include <complex>

namespace {

// exp by a truncated Taylor series with scaling and squaring done by hand.
Eigen::MatrixXd exp_series(const Eigen::MatrixXd& x) {
  int squarings = 0;
  double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXd y = x / std::pow(2.0, squarings);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(x.rows(), x.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * y / k;
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double commutator_residual(const ymh::Representationd& rep) {
  const auto& alg = rep.algebra();
  double worst = 0;
  for (int a = 0; a < rep.dim(); ++a)
    for (int b = 0; b < rep.dim(); ++b) {
      Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(rep.n(), rep.n());
      for (int k = 0; k < rep.dim(); ++k) rhs += alg.c(a, b, k) * rep.generator(k);
      const Eigen::MatrixXd lhs = rep.generator(a) * rep.generator(b) - rep.generator(b) * rep.generator(a);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace

TEST(Representation, PresetsAreEquivariantAndFaithful) {
  for (const auto& name : ymh::preset_names()) {
    const auto rep = ymh::representation_preset(name);
    const auto v = ymh::validate_representation(rep, 1e-10);
    EXPECT_TRUE(v.passed) << name;
    EXPECT_LE(v.equivariance, 1e-15) << name;
    EXPECT_NEAR(v.equivariance, commutator_residual(rep), 1e-15) << name;
    EXPECT_EQ(v.generator_rank, rep.dim()) << name;
  }
}

TEST(Representation, RealifyStackingOrder) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = std::complex<double>(0, 1);
  Eigen::MatrixXd expected(2, 2);
  expected << 0, -1, 1, 0;
  EXPECT_EQ(ymh::realify_matrix<double>(m), expected);

  // z = (a + ib, c + id) stacks as (a, c, b, d): realify(M) acts on that vector.
  Eigen::MatrixXcd w(2, 2);
  w << std::complex<double>(0.3, 1.0), std::complex<double>(-2.0, 0.5), std::complex<double>(0.0, -0.7),
      std::complex<double>(1.1, 0.2);
  const Eigen::Vector2cd z(std::complex<double>(1.0, 2.0), std::complex<double>(-0.5, 0.25));
  const Eigen::Vector2cd wz = w * z;
  Eigen::Vector4d zr(z(0).real(), z(1).real(), z(0).imag(), z(1).imag());
  const Eigen::Vector4d got = ymh::realify_matrix<double>(w) * zr;
  EXPECT_LT((got - Eigen::Vector4d(wz(0).real(), wz(1).real(), wz(0).imag(), wz(1).imag())).norm(), 1e-14);
}

TEST(Representation, RealifyRejectsNonAntiHermitian) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = 1.0;
  EXPECT_THROW(ymh::realify<double>(ymh::u1_algebra(), {m}), ymh::InputError);
}

TEST(Representation, ValidationDetectsWrongBracket) {
  // Adjoint generators with the sign of one flipped break equivariance.
  auto gens = ymh::representation_preset("su2_adjoint").generators();
  gens[0] = -gens[0];
  const ymh::Representationd rep(ymh::su2_algebra(), gens);
  const auto v = ymh::validate_representation(rep, 1e-10);
  EXPECT_FALSE(v.passed);
  EXPECT_NEAR(v.equivariance, commutator_residual(rep), 1e-15);
  EXPECT_GT(v.equivariance, 0.5);
}

TEST(Representation, ValidationDetectsNonFaithful) {
  // The trivial action of su(2) on R^2 satisfies the brackets but has rank 0.
  const std::vector<Eigen::MatrixXd> zero(3, Eigen::MatrixXd::Zero(2, 2));
  const auto v = ymh::validate_representation(ymh::Representationd(ymh::su2_algebra(), zero), 1e-10);
  EXPECT_EQ(v.generator_rank, 0);
  EXPECT_FALSE(v.faithful);
  EXPECT_FALSE(v.passed);
}

TEST(Representation, ShapeErrors) {
  EXPECT_THROW(ymh::Representationd(ymh::su2_algebra(), {Eigen::MatrixXd::Zero(2, 2)}), ymh::InputError);
  EXPECT_THROW(ymh::Representationd(ymh::u1_algebra(), {Eigen::MatrixXd::Zero(2, 3)}), ymh::InputError);
  const auto rep = ymh::representation_preset("electroweak");
  EXPECT_THROW(rep.orbit_map(Eigen::VectorXd::Zero(3)), ymh::InputError);
  EXPECT_THROW(rep.action(Eigen::VectorXd::Zero(2)), ymh::InputError);
}

TEST(Representation, ExpMatchesTaylorSeries) {
  for (const auto& name : ymh::preset_names()) {
    const auto rep = ymh::representation_preset(name);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Eigen::VectorXd theta = ymh::random_algebra_vector<double>(rep.dim(), s, 3.0);
      const auto g = ymh::exp_element(rep, theta);
      EXPECT_LT((g.matrix - exp_series(rep.action(theta))).cwiseAbs().maxCoeff(), 1e-12) << name;
    }
  }
}

TEST(Representation, RandomElementsAreSpecialOrthogonal) {
  const auto rep = ymh::representation_preset("electroweak");
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto g = ymh::random_group_element(rep, s, 2.0);
    EXPECT_TRUE(g.is_special_orthogonal(1e-12));
    ASSERT_TRUE(g.log_coords.has_value());
    const auto h = g * g.inverse();
    EXPECT_LT((h.matrix - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Representation, RandomVectorsAreSeedDeterministic) {
  const auto a = ymh::random_algebra_vector<double>(5, 42, 1.0);
  const auto b = ymh::random_algebra_vector<double>(5, 42, 1.0);
  const auto c = ymh::random_algebra_vector<double>(5, 43, 1.0);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Representation, OrbitMapColumns) {
  const auto rep = ymh::representation_preset("su2_adjoint");
  const Eigen::Vector3d z(0, 0, 1);
  const Eigen::MatrixXd s = rep.orbit_map(z);
  // ad(e_a) e3 = e_a x e3
  for (int a = 0; a < 3; ++a)
    EXPECT_LT((s.col(a) - Eigen::Vector3d::Unit(a).cross(z)).norm(), 1e-15);
}

TEST(Representation, LongDoubleInstantiation) {
  using ld = long double;
  const auto alg = ymh::su2_algebra<ld>();
  std::vector<ymh::MatrixX<ld>> gens;
  for (int a = 0; a < 3; ++a) gens.push_back(ymh::ad_matrix(alg, ymh::VectorX<ld>::Unit(3, a)));
  const ymh::Representation<ld> rep(alg, gens);
  const auto v = ymh::validate_representation<ld>(rep, 1e-18L);
  EXPECT_TRUE(v.passed);
  const auto g = ymh::random_group_element<ld>(rep, 3, 1.0L);
  EXPECT_TRUE(g.is_special_orthogonal(1e-17L));
}
