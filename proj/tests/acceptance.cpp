// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "ymh/breaking.hpp"
#include "ymh/cli/model_file.hpp"
#include "ymh/cli/pipeline.hpp"
#include "ymh/cli/report.hpp"
#include "ymh/error.hpp"
#include "ymh/holonomy.hpp"
#include "ymh/models.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace {

using namespace ymh;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Vacuum {
  ModelPreset preset;
  Eigen::MatrixXd beta;
  VacuumAnalysis analysis;
};

Vacuum vacuum(const std::string& name, std::vector<double> couplings = {}, double vev = 1.0) {
  Vacuum v{load_preset(name, {std::move(couplings), vev}), {}, {}};
  v.beta = build_invariant_form(v.preset.algebra, v.preset.couplings).matrix;
  const auto m = minimize(v.preset.potential, v.preset.representation, v.preset.init);
  v.analysis = analyze_vacuum(v.preset.representation, v.preset.potential, v.beta, m.z0);
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome abelian_mass_formula() {
  Outcome o;
  double worst = 0;
  for (double g : {0.5, 1.0, 2.0})
    for (double r : {0.5, 1.0, 3.0}) {
      const auto v = vacuum("abelian_higgs", {g}, r);
      const auto& groups = v.analysis.gauge.spectrum.groups;
      const double expected = 2 * g * g * r * r;
      if (groups.size() != 1) {
        o.pass = false;
        continue;
      }
      worst = std::max(worst, std::abs(groups[0].value - expected) / expected);
    }
  o.pass &= worst <= 1e-10;
  o.detail = "9 (g, |z0|) pairs, max relative error " + fmt(worst);
  return o;
}

Outcome goldstone_theorem() {
  Outcome o;
  std::ostringstream d;
  for (const auto& name : preset_names()) {
    const auto v = vacuum(name);
    const int ker = v.analysis.higgs.spectrum.massless_multiplicity();
    const int wg = static_cast<int>(v.analysis.goldstone.cols());
    const int broken = v.analysis.algebra_dim() - v.analysis.stabilizer_dim();
    o.pass &= ker == wg && wg == broken;
    d << name << " " << ker << "=" << wg << "=" << broken << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome higgs_dinner() {
  Outcome o;
  std::ostringstream d;
  for (const auto& name : preset_names()) {
    const auto v = vacuum(name);
    const int image = v.analysis.gauge.spectrum.massive_dimension();
    const int wg = static_cast<int>(v.analysis.goldstone.cols());
    const int massless = v.analysis.gauge.spectrum.massless_multiplicity();
    o.pass &= image == wg && massless == v.analysis.stabilizer_dim();
    if (name == "electroweak") o.pass &= massless == 1;
    d << name << " im=" << image << " W_G=" << wg << " massless=" << massless << "; ";
  }
  o.detail = d.str();
  return o;
}

Outcome electroweak_structure() {
  Outcome o;
  std::ostringstream d;
  // Stabilizer pattern.
  {
    const auto v = vacuum("electroweak");
    o.pass &= v.analysis.stabilizer_dim() == 1;
    if (v.analysis.stabilizer_dim() == 1) {
      const Eigen::VectorXd eta = v.analysis.lie_h.col(0);
      const double pattern = std::max({std::abs(eta(0)), std::abs(eta(1)), std::abs(std::abs(eta(2)) - std::abs(eta(3))),
                                       std::abs(std::abs(eta(2)) - std::sqrt(0.5))});
      o.pass &= pattern <= 1e-9;
      d << "stabilizer pattern err " << fmt(pattern) << "; ";
    }
  }
  // Gauge spectrum shape and ratio for random couplings against the
  // closed-form eigenvalues of the (t3, y) block.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(0.2, 2.0);
  double ratio_err = 0;
  for (int t = 0; t < 5; ++t) {
    const double g = dist(rng), gp = dist(rng);
    const auto v = vacuum("electroweak", {g, gp});
    const auto& groups = v.analysis.gauge.spectrum.groups;
    if (groups.size() != 3 || groups[0].multiplicity != 1 || groups[1].multiplicity != 2 ||
        groups[2].multiplicity != 1) {
      o.pass = false;
      continue;
    }
    // |z0| = 1: G restricted to (t3, y) is (1/2)[[1, -1], [-1, 1]].
    const double m11 = g * g * 0.5, m12 = -g * g * 0.5, m21 = -gp * gp * 0.5, m22 = gp * gp * 0.5;
    const double tr = m11 + m22, det = m11 * m22 - m12 * m21;
    const double z = 0.5 * (tr + std::sqrt(tr * tr - 4 * det));
    const double w = g * g * 0.5;
    ratio_err = std::max(ratio_err, std::abs(groups[1].value / groups[2].value - g * g / (g * g + gp * gp)));
    ratio_err = std::max(ratio_err, std::abs(groups[1].value - w) + std::abs(groups[2].value - z));
  }
  o.pass &= ratio_err <= 1e-8;
  d << "mass ratio err " << fmt(ratio_err) << "; ";
  // Higgs spectrum from a finite-difference Hessian.
  {
    const auto p = load_preset("electroweak");
    auto f = [](const Eigen::VectorXd& z) { return std::pow(1.0 - z.squaredNorm(), 2); };
    const auto fd = Potential::general(4, f);
    const auto h = mass_matrix_higgs(fd, p.init);
    const auto& groups = h.spectrum.groups;
    double err = 1;
    if (groups.size() == 2 && groups[0].multiplicity == 3 && groups[1].multiplicity == 1)
      err = std::max(std::abs(groups[0].value), std::abs(groups[1].value - 8.0));
    o.pass &= err <= 1e-6;
    d << "FD Higgs spectrum err " << fmt(err);
  }
  o.detail = d.str();
  return o;
}

Outcome spectrum_gauge_invariance_all() {
  Outcome o;
  double dev = 0, cov = 0;
  for (const auto& name : preset_names()) {
    const auto v = vacuum(name);
    const auto r =
        spectrum_gauge_invariance(v.preset.representation, v.preset.potential, v.beta, v.analysis.z0, 100, 99);
    dev = std::max(dev, r.max_deviation());
    cov = std::max({cov, r.higgs_covariance, r.gram_covariance});
  }
  o.pass = dev <= 1e-8 && cov <= 1e-8;
  o.detail = "100 elements per preset, eigenvalue dev " + fmt(dev) + ", covariance " + fmt(cov);
  return o;
}

Outcome unitary_gauge_all() {
  Outcome o;
  double res = 0, dir = 0;
  bool rejected = true;
  for (const auto& name : preset_names()) {
    const auto v = vacuum(name);
    const auto& rep = v.preset.representation;
    const Eigen::VectorXd z0 = v.analysis.z0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Eigen::VectorXd phi = random_algebra_vector<double>(rep.n(), 5000 + t, 1.5);
      const auto fix = find_unitary_gauge_element(rep, z0, phi, t);
      const auto closed = unitary_gauge_rotsym(v.preset.potential, rep, z0, phi);
      res = std::max(res, fix.residual);
      dir = std::max(dir, (fix.element.matrix * z0 - closed.nu).norm() / z0.norm());
    }
    try {
      find_unitary_gauge_element(rep, z0, Eigen::VectorXd::Zero(rep.n()), 1);
      rejected = false;
    } catch (const InputError&) {
    }
  }
  o.pass = res <= 1e-8 && dir <= 1e-7 && rejected;
  o.detail = "50 states per preset, complement residual " + fmt(res) + ", closed-form direction err " + fmt(dir) +
             ", zero state " + (rejected ? "rejected" : "ACCEPTED");
  return o;
}

Outcome fluctuation_all() {
  Outcome o;
  double higgs = 0, gauge = 0, stab = 0;
  for (const auto& name : preset_names()) {
    const auto v = vacuum(name);
    const auto& a = v.analysis;
    for (std::uint64_t t = 0; t < 20; ++t) {
      const Eigen::VectorXd phi =
          a.physical * random_algebra_vector<double>(static_cast<int>(a.physical.cols()), 700 + t, 1.0);
      const Eigen::VectorXd eta = random_algebra_vector<double>(a.algebra_dim(), 900 + t, 1.0);
      const auto c = fluctuation_mass_check(a, v.preset.potential, v.preset.representation, phi, eta);
      higgs = std::max(higgs, c.higgs_residual);
      gauge = std::max(gauge, c.gauge_residual / (1 + c.gauge_lhs));
    }
    for (Eigen::Index k = 0; k < a.lie_h.cols(); ++k) {
      const auto c = fluctuation_mass_check(a, v.preset.potential, v.preset.representation,
                                            Eigen::VectorXd::Zero(a.z0.size()), a.lie_h.col(k));
      stab = std::max({stab, std::abs(c.gauge_lhs), std::abs(c.gauge_rhs)});
    }
  }
  o.pass = higgs <= 1e-6 && gauge <= 1e-12 && stab <= 1e-12;
  o.detail = "Higgs coefficient rel err " + fmt(higgs) + ", gauge identity " + fmt(gauge) + ", stabilizer " + fmt(stab);
  return o;
}

Outcome normal_gradients_all() {
  Outcome o;
  double gauge = 0, higgs = 0;
  for (const auto& name : preset_names()) {
    const auto v = vacuum(name);
    const auto r = normal_gradient_checks(v.analysis, v.preset.potential, v.preset.representation, 10, 3);
    gauge = std::max(gauge, r.gauge_residual);
    if (!r.higgs_applicable || !r.higgs_residual) o.pass = false;
    else higgs = std::max(higgs, *r.higgs_residual);
  }
  o.pass &= gauge <= 1e-7 && higgs <= 1e-6;
  o.detail = "gauge normal gradient " + fmt(gauge) + ", Higgs normal gradient at r0 = 1 " + fmt(higgs);
  return o;
}

Outcome discrete_vacuum_pairs() {
  Outcome o;
  constexpr double pi = std::numbers::pi;
  std::ostringstream d;
  // Path graph: one class, verifying certificates.
  {
    const auto st = DiscreteSpacetime::path(7);
    const auto group = ResidualGroup::u1();
    std::vector<DiscreteConnection> conns;
    for (std::uint64_t c = 0; c < 6; ++c) {
      DiscreteConnection conn;
      for (std::uint64_t e = 0; e < 6; ++e) conn.transport.push_back(group.random_element(31 * c + e, pi));
      conns.push_back(conn);
    }
    const auto cls = classify(st, group, conns);
    double cert = 0;
    for (const auto& c : conns) {
      const auto flat = apply_gauge(st, c, trivializing_gauge(st, c));
      for (const auto& g : flat.transport) cert = std::max(cert, (g.matrix - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
    }
    o.pass &= cls.classes() == 1 && cert <= 1e-9;
    d << "path classes " << cls.classes() << " cert " << fmt(cert) << "; ";
  }
  // U(1) cycle with K distinct loop angles, each split across edges twice.
  {
    const auto st = DiscreteSpacetime::cycle(4);
    const auto group = ResidualGroup::u1();
    const std::vector<double> totals = {0.0, 0.9, 2.0, pi, 5.5};
    std::vector<DiscreteConnection> conns;
    for (double total : totals)
      for (int split = 0; split < 2; ++split) {
        const std::vector<double> a = {0.4 * split, -0.3, 1.1, total - 0.8 - 0.4 * split + 2 * pi * split};
        DiscreteConnection c;
        for (double x : a) c.transport.push_back(group.element(Eigen::VectorXd::Constant(1, x)));
        conns.push_back(c);
      }
    const auto cls = classify(st, group, conns);
    o.pass &= cls.classes() == static_cast<int>(totals.size());
    d << "U(1) cycle K=" << totals.size() << " classes " << cls.classes() << "; ";

    // Class invariance under random gauge transforms.
    bool invariant = true;
    for (std::uint64_t t = 0; t < 100; ++t) {
      GaugeTransform g;
      for (int v = 0; v < st.vertices; ++v) g.at_vertex.push_back(group.random_element(10000 + 7 * t + v, pi));
      const auto& c = conns[t % conns.size()];
      const auto moved = apply_gauge(st, c, g);
      invariant &= equivalent(st, group, c, moved).equivalent;
      for (std::size_t j = 0; j < conns.size(); ++j)
        invariant &= equivalent(st, group, conns[j], moved).equivalent == (cls.label[j] == cls.label[t % conns.size()]);
    }
    o.pass &= invariant;
    d << "gauge invariance over 100 transforms " << (invariant ? "holds" : "BROKEN");
  }
  o.detail = d.str();
  return o;
}

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  ::pclose(p);
  return out;
}

Outcome infrastructure() {
  Outcome o;
  double worst = 0;
  for (const auto& name : preset_names()) {
    const auto p = load_preset(name);
    const auto alg = validate_algebra(p.algebra, 1e-10);
    const auto rep = validate_representation(p.representation, 1e-10);
    const auto beta = build_invariant_form(p.algebra, p.couplings).matrix;
    const auto inv = check_invariance(p.potential, p.representation, 50, 1);
    worst = std::max({worst, alg.antisymmetry, alg.jacobi, rep.antisymmetry, rep.equivariance,
                      invariance_residual(p.algebra, beta), inv.max_residual});
    o.pass &= alg.passed && rep.passed;
  }
  o.pass &= worst <= 1e-10;
  const std::string cmd = std::string(YMH_BINARY) + " analyze " + YMH_MODELS_DIR + "/electroweak.json --seed 7";
  const std::string a = capture(cmd), b = capture(cmd);
  const bool same = !a.empty() && a == b;
  o.pass &= same;
  o.detail = "max validation residual " + fmt(worst) + ", report bytes " + (same ? "identical" : "DIFFER") + " (" +
             std::to_string(a.size()) + " bytes)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"abelian Higgs gauge mass 2 g^2 |z0|^2", abelian_mass_formula},
      {"Goldstone count dim ker M2_H = dim W_G = dim G - dim H", goldstone_theorem},
      {"rank identity dim im M2_YM = dim W_G, massless = dim H", higgs_dinner},
      {"electroweak stabilizer, W/Z ratio, Higgs spectrum", electroweak_structure},
      {"spectrum gauge invariance", spectrum_gauge_invariance_all},
      {"unitary gauge against closed form", unitary_gauge_all},
      {"fluctuation mass terms", fluctuation_all},
      {"normal-gradient identities", normal_gradients_all},
      {"discrete vacuum pairs and holonomy classes", discrete_vacuum_pairs},
      {"validation residuals and report determinism", infrastructure},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << ": " << o.detail << "\n";
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
