#include "ymh/breaking.hpp"
#include "ymh/error.hpp"
#include "ymh/models.hpp"

#include <gtest/gtest.h>

#include <complex>

namespace {

struct Setup {
  ymh::ModelPreset preset;
  Eigen::MatrixXd beta;
  ymh::VacuumAnalysis analysis;
};

Setup setup(const std::string& name, std::vector<double> couplings = {}, double vev = 1.0) {
  Setup s{ymh::load_preset(name, {couplings, vev}), {}, {}};
  s.beta = ymh::build_invariant_form(s.preset.algebra, s.preset.couplings).matrix;
  const auto m = ymh::minimize(s.preset.potential, s.preset.representation, s.preset.init);
  s.analysis = ymh::analyze_vacuum(s.preset.representation, s.preset.potential, s.beta, m.z0);
  return s;
}

std::vector<double> values(const ymh::GroupedSpectrumd& s) {
  std::vector<double> v;
  for (const auto& g : s.groups) v.push_back(g.value);
  return v;
}

std::vector<int> multiplicities(const ymh::GroupedSpectrumd& s) {
  std::vector<int> v;
  for (const auto& g : s.groups) v.push_back(g.multiplicity);
  return v;
}

// Electroweak gauge masses from first principles: Gram matrix of the complex
// doublet vectors t_a z0, then the closed-form eigenvalues of the 2x2
// (t3, y) block of beta^{-1} G.
struct ElectroweakOracle {
  double w, z;
};

ElectroweakOracle electroweak_oracle(double g, double gp, double v) {
  using cd = std::complex<double>;
  const cd i(0, 1);
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  const Eigen::Matrix2cd t[4] = {-0.5 * i * s1, -0.5 * i * s2, -0.5 * i * s3, 0.5 * i * Eigen::Matrix2cd::Identity()};
  const Eigen::Vector2cd z0(v, 0);
  Eigen::Matrix4d gram;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) gram(a, b) = 2.0 * (t[a] * z0).dot(t[b] * z0).real();
  const double w = g * g * gram(0, 0);
  // block M = [[g^2 G33, g^2 G34], [g'^2 G43, g'^2 G44]]
  const double m11 = g * g * gram(2, 2), m12 = g * g * gram(2, 3), m21 = gp * gp * gram(3, 2), m22 = gp * gp * gram(3, 3);
  const double tr = m11 + m22, det = m11 * m22 - m12 * m21;
  const double z = 0.5 * (tr + std::sqrt(tr * tr - 4 * det));
  return {w, z};
}

}  // namespace

TEST(Breaking, AbelianMassFormulaGrid) {
  for (double g : {0.5, 1.0, 2.0})
    for (double r : {0.5, 1.0, 3.0}) {
      const auto s = setup("abelian_higgs", {g}, r);
      const auto& groups = s.analysis.gauge.spectrum.groups;
      ASSERT_EQ(groups.size(), 1u);
      const double expected = 2 * g * g * r * r;
      EXPECT_NEAR(groups[0].value, expected, 1e-10 * expected);
    }
}

TEST(Breaking, ElectroweakAgainstAnalyticBlock) {
  for (auto [g, gp] : {std::pair{1.0, 1.0}, {0.65, 0.35}, {2.0, 0.1}, {0.3, 1.7}}) {
    const auto s = setup("electroweak", {g, gp});
    const auto oracle = electroweak_oracle(g, gp, 1.0);
    ASSERT_EQ(multiplicities(s.analysis.gauge.spectrum), (std::vector<int>{1, 2, 1}));
    const auto v = values(s.analysis.gauge.spectrum);
    EXPECT_NEAR(v[0], 0.0, 1e-12);
    EXPECT_NEAR(v[1], oracle.w, 1e-12);
    EXPECT_NEAR(v[2], oracle.z, 1e-12);
    EXPECT_NEAR(v[1] / v[2], g * g / (g * g + gp * gp), 1e-12);
  }
}

TEST(Breaking, ElectroweakStabilizerPattern) {
  const auto s = setup("electroweak", {0.8, 0.4});
  ASSERT_EQ(s.analysis.stabilizer_dim(), 1);
  Eigen::VectorXd eta = s.analysis.lie_h.col(0);
  // B-orthonormal with B = I: equal weight on t3 and y, none on t1, t2.
  EXPECT_NEAR(eta.norm(), 1.0, 1e-12);
  EXPECT_NEAR(eta(0), 0.0, 1e-12);
  EXPECT_NEAR(eta(1), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eta(2)), std::abs(eta(3)), 1e-12);
  EXPECT_NEAR(std::abs(eta(2)), std::sqrt(0.5), 1e-12);
}

TEST(Breaking, ElectroweakHiggsSpectrum) {
  for (double v : {1.0, 2.0}) {
    const auto s = setup("electroweak", {}, v);
    ASSERT_EQ(multiplicities(s.analysis.higgs.spectrum), (std::vector<int>{3, 1}));
    EXPECT_NEAR(values(s.analysis.higgs.spectrum)[1], 8.0 * v * v, 1e-12 * v * v);
  }
}

TEST(Breaking, Su2AdjointSpectrum) {
  for (double g : {0.5, 1.5}) {
    const auto s = setup("su2_adjoint", {g}, 2.0);
    ASSERT_EQ(multiplicities(s.analysis.gauge.spectrum), (std::vector<int>{1, 2}));
    EXPECT_NEAR(values(s.analysis.gauge.spectrum)[1], 2 * g * g * 4.0, 1e-12);
  }
}

TEST(Breaking, GoldstoneCountsMatchExpectations) {
  for (const auto& name : ymh::preset_names()) {
    const auto s = setup(name);
    const auto& e = s.preset.expected;
    EXPECT_EQ(s.analysis.stabilizer_dim(), e.stabilizer_dim) << name;
    EXPECT_EQ(s.analysis.goldstone.cols(), e.goldstone_dim) << name;
    EXPECT_EQ(s.analysis.higgs.spectrum.massless_multiplicity(), e.goldstone_dim) << name;
    EXPECT_EQ(s.analysis.algebra_dim() - s.analysis.stabilizer_dim(), e.goldstone_dim) << name;
    EXPECT_EQ(s.analysis.gauge.spectrum.massive_dimension(), e.goldstone_dim) << name;
    EXPECT_EQ(s.analysis.gauge.spectrum.massless_multiplicity(), e.massless_gauge) << name;
    EXPECT_EQ(multiplicities(s.analysis.gauge.spectrum), e.gauge_multiplicities) << name;
    EXPECT_EQ(multiplicities(s.analysis.higgs.spectrum), e.higgs_multiplicities) << name;
    const auto r = ymh::rank_identities(s.analysis);
    EXPECT_TRUE(r.passed) << name;
    EXPECT_EQ(r.checks.size(), 9u);
  }
}

TEST(Breaking, SpacesAreOrthonormalAndComplementary) {
  for (const auto& name : ymh::preset_names()) {
    const auto s = setup(name, {}, 1.7);
    const auto& a = s.analysis;
    const auto n = a.z0.size();
    Eigen::MatrixXd all(n, a.goldstone.cols() + a.physical.cols());
    all << a.goldstone, a.physical;
    EXPECT_LT((all.transpose() * all - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12) << name;
    // Goldstone directions are tangent to the orbit: T_eta z0 for eta in the complement.
    const Eigen::MatrixXd s0 = s.preset.representation.orbit_map(a.z0);
    const Eigen::MatrixXd proj = a.goldstone * a.goldstone.transpose();
    EXPECT_LT((proj * s0 - s0).cwiseAbs().maxCoeff(), 1e-12) << name;
    // lie_h and lie_h_perp are B-orthogonal.
    if (a.lie_h.cols() > 0) {
      EXPECT_LT((a.lie_h.transpose() * a.block_form * a.lie_h_perp).cwiseAbs().maxCoeff(), 1e-12) << name;
    }
  }
}

TEST(Breaking, GaugeInvarianceOfSpectra) {
  for (const auto& name : ymh::preset_names()) {
    const auto s = setup(name, {}, 1.3);
    const auto r = ymh::spectrum_gauge_invariance(s.preset.representation, s.preset.potential, s.beta,
                                                  s.analysis.z0, 100, 17);
    EXPECT_TRUE(r.passed) << name;
    EXPECT_LE(r.max_deviation(), 1e-8);
    EXPECT_LE(r.higgs_covariance, 1e-8);
    EXPECT_LE(r.gram_covariance, 1e-8);
  }
}

TEST(Breaking, GaugeInvarianceParallelMatchesSerial) {
  const auto s = setup("electroweak", {0.9, 0.4});
  const auto a = ymh::spectrum_gauge_invariance(s.preset.representation, s.preset.potential, s.beta, s.analysis.z0, 64,
                                                3, {}, false);
  const auto b = ymh::spectrum_gauge_invariance(s.preset.representation, s.preset.potential, s.beta, s.analysis.z0, 64,
                                                3, {}, true);
  EXPECT_EQ(a.higgs_deviation, b.higgs_deviation);
  EXPECT_EQ(a.gauge_deviation, b.gauge_deviation);
  EXPECT_EQ(a.higgs_covariance, b.higgs_covariance);
  EXPECT_EQ(a.gram_covariance, b.gram_covariance);
}

TEST(Breaking, HiggsMassRejectsSaddle) {
  const auto p = ymh::load_preset("abelian_higgs");
  EXPECT_THROW(ymh::mass_matrix_higgs(p.potential, Eigen::Vector2d::Zero()), ymh::NumericalError);
}

TEST(Breaking, UnitaryGaugeAgreesWithClosedForm) {
  for (const auto& name : ymh::preset_names()) {
    const auto s = setup(name, {}, 1.4);
    const auto& rep = s.preset.representation;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Eigen::VectorXd phi = ymh::random_algebra_vector<double>(rep.n(), 1000 + t, 2.0);
      const auto fix = ymh::find_unitary_gauge_element(rep, s.analysis.z0, phi, t);
      const auto closed = ymh::unitary_gauge_rotsym(s.preset.potential, rep, s.analysis.z0, phi);
      EXPECT_LE(fix.residual, 1e-8) << name;
      EXPECT_GT(fix.theta, 0.0) << name;
      EXPECT_TRUE(fix.element.is_special_orthogonal(1e-10));
      // rho(g) z0 is the vacuum nu_phi; rho(g)^{-1} phi is parallel to z0.
      EXPECT_LT((fix.element.matrix * s.analysis.z0 - closed.nu).norm(), 1e-7 * s.analysis.z0.norm()) << name;
      EXPECT_NEAR(fix.theta, phi.norm() * s.analysis.z0.norm(), 1e-7 * (1 + fix.theta));
      EXPECT_LE(closed.goldstone_overlap, 1e-12 * (1 + phi.norm()));
    }
  }
}

TEST(Breaking, UnitaryGaugeRejectsDegenerateInput) {
  const auto s = setup("electroweak");
  const auto& rep = s.preset.representation;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
  EXPECT_THROW(ymh::find_unitary_gauge_element(rep, s.analysis.z0, zero, 1), ymh::InputError);
  EXPECT_THROW(ymh::unitary_gauge_rotsym(s.preset.potential, rep, s.analysis.z0, zero), ymh::InputError);
  EXPECT_THROW(ymh::unitary_gauge_rotsym(s.preset.potential, rep, zero, s.analysis.z0), ymh::InputError);
  auto f = [](const Eigen::VectorXd& z) { return std::pow(z.squaredNorm() - 1.0, 2); };
  EXPECT_THROW(ymh::unitary_gauge_rotsym(ymh::Potential::general(4, f), rep, s.analysis.z0, s.analysis.z0),
               ymh::InputError);
}

TEST(Breaking, FluctuationQuadraticCoefficients) {
  for (const auto& name : ymh::preset_names()) {
    const auto s = setup(name, {}, 1.2);
    const auto& a = s.analysis;
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Eigen::VectorXd phi = a.physical * ymh::random_algebra_vector<double>(static_cast<int>(a.physical.cols()), t, 1.0);
      const Eigen::VectorXd eta = ymh::random_algebra_vector<double>(a.algebra_dim(), t + 50, 1.0);
      const auto c = ymh::fluctuation_mass_check(a, s.preset.potential, s.preset.representation, phi, eta);
      EXPECT_LE(c.higgs_residual, 1e-6) << name;
      EXPECT_LE(c.gauge_residual, 1e-12 * (1 + c.gauge_lhs)) << name;
      // Independent value: 4 (z0 . phi)^2 for the Mexican hat.
      EXPECT_NEAR(c.c2_expected, 4 * std::pow(a.z0.dot(phi), 2), 1e-10 * (1 + c.c2_expected));
    }
    for (Eigen::Index k = 0; k < a.lie_h.cols(); ++k) {
      const auto c = ymh::fluctuation_mass_check(a, s.preset.potential, s.preset.representation,
                                                 Eigen::VectorXd::Zero(a.z0.size()), a.lie_h.col(k));
      EXPECT_LE(c.gauge_lhs, 1e-24);
      EXPECT_LE(std::abs(c.gauge_rhs), 1e-12);
    }
  }
}

TEST(Breaking, FluctuationRejectsGoldstoneLeak) {
  const auto s = setup("su2_adjoint");
  const Eigen::VectorXd phi = s.analysis.goldstone.col(0);
  EXPECT_THROW(ymh::fluctuation_mass_check(s.analysis, s.preset.potential, s.preset.representation, phi,
                                           Eigen::VectorXd::Zero(3)),
               ymh::InputError);
}

TEST(Breaking, NormalGradientIdentities) {
  for (const auto& name : ymh::preset_names()) {
    const auto s = setup(name);
    const auto r = ymh::normal_gradient_checks(s.analysis, s.preset.potential, s.preset.representation, 10, 4);
    EXPECT_TRUE(r.passed) << name;
    EXPECT_TRUE(r.higgs_applicable);
    ASSERT_TRUE(r.higgs_residual.has_value());
    EXPECT_LE(*r.higgs_residual, 1e-6);
    EXPECT_LE(r.gauge_residual, 1e-7);
    EXPECT_EQ(r.gauge_pairs, s.analysis.algebra_dim() * s.analysis.algebra_dim());
    EXPECT_EQ(static_cast<int>(r.modes.size()), s.preset.expected.goldstone_dim);
  }
}

TEST(Breaking, NormalGradientModesCarryCouplings) {
  const auto s = setup("electroweak", {0.5, 2.0});
  const auto r = ymh::normal_gradient_checks(s.analysis, s.preset.potential, s.preset.representation, 5, 9);
  EXPECT_TRUE(r.passed);
  // W modes live in su(2): g_phys = g.
  int w = 0;
  for (const auto& m : r.modes)
    if (std::abs(m.mass_squared - 0.125) < 1e-9) {
      EXPECT_NEAR(m.g_phys, 0.5, 1e-12);
      ++w;
    }
  EXPECT_EQ(w, 2);
}

TEST(Breaking, HiggsNormalGradientOnlyAssertedAtUnitRadius) {
  const auto s = setup("abelian_higgs", {}, 2.0);
  const auto r = ymh::normal_gradient_checks(s.analysis, s.preset.potential, s.preset.representation, 5, 1);
  EXPECT_FALSE(r.higgs_applicable);
  EXPECT_TRUE(r.higgs_residual.has_value());
  EXPECT_TRUE(r.passed);
}
