#include "ymh/cli/pipeline.hpp"

#include "ymh/breaking.hpp"
#include "ymh/error.hpp"
#include "ymh/holonomy.hpp"
#include "ymh/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <exception>
#include <numbers>

namespace ymh::cli {

namespace {

using json = nlohmann::ordered_json;

// Independent random streams per section.
enum Stream : std::uint64_t { kInvariance = 1, kGauge, kUnitary, kFluctuation, kNormal, kHolonomy };

std::uint64_t stream_seed(std::uint64_t seed, Stream s) { return seed + 0x9E3779B97F4A7C15ULL * s; }

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json columns_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(vec_json(m.col(c)));
  return out;
}

json rows_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vec_json(m.row(r).transpose()));
  return out;
}

json spectrum_json(const GroupedSpectrumd& s) {
  json out = json::array();
  for (const auto& g : s.groups) out.push_back({{"value", g.value}, {"multiplicity", g.multiplicity}});
  return out;
}

class Recorder {
 public:
  Recorder(std::string model, std::vector<CheckRow>& rows) : model_(std::move(model)), rows_(rows) {}

  bool at_most(const std::string& section, const std::string& name, double value, double threshold) {
    return add(section, name, value, threshold, value <= threshold);
  }

  bool add(const std::string& section, const std::string& name, double value, double threshold, bool pass) {
    rows_.push_back({model_, section, name, value, threshold, pass});
    return pass;
  }

 private:
  std::string model_;
  std::vector<CheckRow>& rows_;
};

bool enabled(const RunOptions& o, const std::string& section) { return o.only.empty() || o.only.contains(section); }

void check_only(const RunOptions& o) {
  for (const auto& s : o.only)
    if (std::find(section_names().begin(), section_names().end(), s) == section_names().end())
      throw InputError("--only: unknown section '" + s + "'");
}

std::string model_label(const ModelSpec& m) { return m.name.empty() ? "model" : m.name; }

Eigen::VectorXd default_init(const ModelSpec& m) {
  if (m.init) return *m.init;
  return Eigen::VectorXd::Unit(m.representation.n(), 0);
}

// --- sections -------------------------------------------------------------

json validation_section(const ModelSpec& m, const Eigen::MatrixXd& beta, const Tolerances& tol, int trials,
                        std::uint64_t seed, Recorder* rec) {
  const auto alg = validate_algebra(m.algebra, tol.algebra);
  const auto rep = validate_representation(m.representation, tol.algebra, tol.rank);
  const double ad_inv = invariance_residual(m.algebra, beta);
  const auto pot = check_invariance(*m.potential, m.representation, trials, stream_seed(seed, kInvariance),
                                    tol.invariance);
  if (rec) {
    rec->at_most("validation", "algebra_antisymmetry", alg.antisymmetry, tol.algebra);
    rec->at_most("validation", "algebra_jacobi", alg.jacobi, tol.algebra);
    rec->at_most("validation", "algebra_factor_coupling", alg.factor_coupling, tol.algebra);
    rec->at_most("validation", "representation_antisymmetry", rep.antisymmetry, tol.algebra);
    rec->at_most("validation", "representation_equivariance", rep.equivariance, tol.algebra);
    rec->add("validation", "representation_faithful", rep.generator_rank, m.algebra.dim(), rep.faithful);
    rec->at_most("validation", "invariant_form_ad_invariance", ad_inv, tol.algebra);
    rec->at_most("validation", "potential_invariance", pot.max_residual, tol.invariance);
  }
  return json{{"algebra",
               {{"antisymmetry", alg.antisymmetry},
                {"jacobi", alg.jacobi},
                {"factor_coupling", alg.factor_coupling},
                {"pass", alg.passed}}},
              {"representation",
               {{"antisymmetry", rep.antisymmetry},
                {"equivariance", rep.equivariance},
                {"generator_rank", rep.generator_rank},
                {"faithful", rep.faithful},
                {"pass", rep.passed}}},
              {"invariant_form", {{"ad_invariance", ad_inv}, {"pass", ad_inv <= tol.algebra}}},
              {"potential_invariance",
               {{"trials", pot.trials}, {"max_residual", pot.max_residual}, {"pass", pot.passed}}}};
}

json rank_section(const VacuumAnalysis& a, const Tolerances& tol, Recorder& rec) {
  const auto r = rank_identities(a, tol);
  json out = json::array();
  for (const auto& c : r.checks) {
    out.push_back({{"name", c.name}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
    rec.add("goldstone", c.name, c.got, c.expected, c.pass);
  }
  return out;
}

json gauge_invariance_section(const ModelSpec& m, const Eigen::MatrixXd& beta, const VacuumAnalysis& a,
                              const Tolerances& tol, int trials, std::uint64_t seed, bool parallel, Recorder& rec) {
  const auto r = spectrum_gauge_invariance(m.representation, *m.potential, beta, a.z0, trials,
                                           stream_seed(seed, kGauge), tol, parallel);
  rec.at_most("gauge_invariance", "spectrum_deviation", r.max_deviation(), tol.spectrum);
  rec.at_most("gauge_invariance", "higgs_covariance", r.higgs_covariance, tol.spectrum);
  rec.at_most("gauge_invariance", "gram_covariance", r.gram_covariance, tol.spectrum);
  return json{{"trials", r.trials},
              {"higgs_deviation", r.higgs_deviation},
              {"gauge_deviation", r.gauge_deviation},
              {"max_deviation", r.max_deviation()},
              {"higgs_covariance", r.higgs_covariance},
              {"gram_covariance", r.gram_covariance},
              {"pass", r.passed}};
}

json unitary_section(const ModelSpec& m, const VacuumAnalysis& a, const Tolerances& tol, int trials,
                     std::uint64_t seed, bool parallel, Recorder& rec) {
  const Potential& pot = *m.potential;
  if (pot.kind() != PotentialKind::rotsym || a.z0.norm() <= tol.zero)
    return json{{"applicable", false}};

  struct Slot {
    double residual = 0, direction = 0, overlap = 0, theta = 0;
    int restarts = 0;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(trials));
  const std::uint64_t base = stream_seed(seed, kUnitary);
  for_each_trial(trials, parallel, [&](int t) {
    Slot& s = slots[static_cast<std::size_t>(t)];
    try {
      const std::uint64_t st = base + 2 * static_cast<std::uint64_t>(t);
      const Eigen::VectorXd phi = random_algebra_vector<double>(m.representation.n(), st, 1.0);
      const auto fix = find_unitary_gauge_element(m.representation, a.z0, phi, st + 1, tol);
      const auto closed = unitary_gauge_rotsym(pot, m.representation, a.z0, phi, tol);
      s.residual = fix.residual;
      s.direction = (fix.element.matrix * a.z0 - closed.nu).norm() / a.z0.norm();
      s.overlap = closed.goldstone_overlap;
      s.theta = fix.theta;
      s.restarts = fix.restarts;
    } catch (...) {
      s.error = std::current_exception();
    }
  });
  for (const auto& s : slots)
    if (s.error) std::rethrow_exception(s.error);

  double residual = 0, direction = 0, overlap = 0, min_theta = std::numeric_limits<double>::infinity();
  int restarts = 0;
  for (const auto& s : slots) {
    residual = std::max(residual, s.residual);
    direction = std::max(direction, s.direction);
    overlap = std::max(overlap, s.overlap);
    min_theta = std::min(min_theta, s.theta);
    restarts += s.restarts;
  }
  if (trials == 0) min_theta = 0;

  bool rejected = false;
  try {
    find_unitary_gauge_element(m.representation, a.z0, Eigen::VectorXd::Zero(m.representation.n()), seed, tol);
  } catch (const InputError&) {
    rejected = true;
  }
  const double overlap_tol = tol.critical * (1.0 + a.z0.norm());

  bool pass = rec.at_most("unitary_gauge", "complement_residual", residual, tol.critical);
  pass &= rec.at_most("unitary_gauge", "closed_form_direction", direction, tol.direction);
  pass &= rec.at_most("unitary_gauge", "closed_form_goldstone_overlap", overlap, overlap_tol);
  pass &= rec.add("unitary_gauge", "theta_positive", min_theta, 0.0, trials == 0 || min_theta > 0);
  pass &= rec.add("unitary_gauge", "zero_state_rejected", rejected ? 1 : 0, 1, rejected);
  return json{{"applicable", true},
              {"trials", trials},
              {"max_complement_residual", residual},
              {"max_direction_error", direction},
              {"max_goldstone_overlap", overlap},
              {"min_theta", min_theta},
              {"restarts", restarts},
              {"zero_state_rejected", rejected},
              {"pass", pass}};
}

json fluctuation_section(const ModelSpec& m, const VacuumAnalysis& a, const Tolerances& tol, int trials,
                         std::uint64_t seed, Recorder& rec) {
  const std::uint64_t base = stream_seed(seed, kFluctuation);
  const int d = a.algebra_dim();
  double higgs = 0, gauge = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t st = base + 2 * static_cast<std::uint64_t>(t);
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(m.representation.n());
    if (a.physical.cols() > 0) phi = a.physical * random_algebra_vector<double>(static_cast<int>(a.physical.cols()), st, 1.0);
    const Eigen::VectorXd eta = random_algebra_vector<double>(d, st + 1, 1.0);
    const auto c = fluctuation_mass_check(a, *m.potential, m.representation, phi, eta);
    higgs = std::max(higgs, c.higgs_residual);
    gauge = std::max(gauge, c.gauge_residual / (1.0 + c.gauge_lhs));
  }
  // Stabilizer directions: both sides of the gauge identity vanish.
  double stab = 0;
  for (Eigen::Index k = 0; k < a.lie_h.cols(); ++k) {
    const auto c = fluctuation_mass_check(a, *m.potential, m.representation, Eigen::VectorXd::Zero(a.z0.size()),
                                          a.lie_h.col(k));
    stab = std::max({stab, std::abs(c.gauge_lhs), std::abs(c.gauge_rhs)});
  }
  bool pass = rec.at_most("fluctuation", "higgs_quadratic_coefficient", higgs, tol.fluctuation);
  pass &= rec.at_most("fluctuation", "gauge_mass_identity", gauge, tol.identity);
  pass &= rec.at_most("fluctuation", "stabilizer_massless", stab, tol.identity);
  return json{{"trials", trials},
              {"max_higgs_residual", higgs},
              {"max_gauge_residual", gauge},
              {"stabilizer_directions", a.stabilizer_dim()},
              {"max_stabilizer_mass", stab},
              {"pass", pass}};
}

json normal_section(const ModelSpec& m, const VacuumAnalysis& a, const Tolerances& tol, int trials,
                    std::uint64_t seed, Recorder& rec) {
  const auto r = normal_gradient_checks(a, *m.potential, m.representation, trials, stream_seed(seed, kNormal), tol);
  double mmax = 0;
  json modes = json::array();
  for (const auto& md : r.modes) {
    mmax = std::max(mmax, md.mass_squared);
    modes.push_back({{"mass_squared", md.mass_squared},
                     {"g_phys", md.g_phys},
                     {"orbit_norm_squared", md.w_norm2},
                     {"residual", md.residual}});
  }
  rec.at_most("normal_gradient", "gauge_normal_gradient", r.gauge_residual, tol.gauge_gradient);
  rec.at_most("normal_gradient", "gauge_mode_masses", r.mode_residual, tol.eigen * (1.0 + mmax));
  if (r.higgs_applicable) rec.at_most("normal_gradient", "higgs_normal_gradient", *r.higgs_residual, tol.fluctuation);
  return json{{"r0", r.r0},
              {"higgs_applicable", r.higgs_applicable},
              {"higgs_residual", r.higgs_residual ? json(*r.higgs_residual) : json(nullptr)},
              {"higgs_points", r.higgs_points},
              {"gauge_residual", r.gauge_residual},
              {"gauge_pairs", r.gauge_pairs},
              {"modes", modes},
              {"mode_residual", r.mode_residual},
              {"pass", r.passed}};
}

ResidualGroup residual_group(const ModelSpec& m, const HolonomySpec& h, const VacuumAnalysis* a) {
  if (h.group == "u1") return ResidualGroup::u1();
  if (!a) throw InputError("holonomy.group: \"stabilizer\" needs a potential section to locate the vacuum");
  return ResidualGroup::from_stabilizer(m.representation, a->lie_h);
}

std::vector<DiscreteConnection> build_connections(const HolonomySpec& h, const DiscreteSpacetime& st,
                                                  const ResidualGroup& group, const Tolerances& tol,
                                                  std::uint64_t seed) {
  std::vector<DiscreteConnection> out;
  for (std::size_t c = 0; c < h.connections.size(); ++c) {
    DiscreteConnection conn;
    for (std::size_t e = 0; e < h.connections[c].size(); ++e) {
      const std::string where = "holonomy.connections[" + std::to_string(c) + "][" + std::to_string(e) + "]";
      const auto& v = h.connections[c][e];
      if (const auto* p = std::get_if<Eigen::VectorXd>(&v)) {
        if (p->size() != group.dim())
          throw InputError(where + ": expected " + std::to_string(group.dim()) + " group parameter(s)");
        conn.transport.push_back(group.element(*p));
      } else {
        conn.transport.push_back({std::get<Eigen::MatrixXd>(v), std::nullopt});
      }
    }
    try {
      validate_connection(st, group, conn, tol.orthogonality);
    } catch (const InputError& err) {
      throw InputError("holonomy.connections[" + std::to_string(c) + "]: " + err.what());
    }
    out.push_back(std::move(conn));
  }
  for (int c = 0; c < h.random_connections; ++c) {
    DiscreteConnection conn;
    for (std::size_t e = 0; e < st.edges.size(); ++e)
      conn.transport.push_back(group.random_element(seed + 7919 * static_cast<std::uint64_t>(c) + e, std::numbers::pi));
    out.push_back(std::move(conn));
  }
  return out;
}

json holonomy_value(const ResidualGroup& group, const GroupElementd& u) {
  if (group.n() == 2) return json{{"angle", rotation_angle(u.matrix)}};
  json phases = json::array();
  Eigen::EigenSolver<Eigen::MatrixXd> es(u.matrix, false);
  std::vector<double> args;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double arg = std::arg(es.eigenvalues()(i));
    if (std::abs(arg) < 1e-12) arg = 0;
    args.push_back(arg);
  }
  std::sort(args.begin(), args.end());
  return json{{"matrix", rows_json(u.matrix)}, {"eigenvalue_phases", args}};
}

double holonomy_deviation(const ResidualGroup& group, const Eigen::MatrixXd& u1, const Eigen::MatrixXd& u2) {
  if (group.abelian()) return (u1 - u2).cwiseAbs().maxCoeff();
  auto ev = [](const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<std::complex<double>> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end(), [](auto a, auto b) {
      if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    return v;
  };
  const auto a = ev(u1), b = ev(u2);
  double dev = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
  return dev;
}

json holonomy_section(const ModelSpec& m, const VacuumAnalysis* a, const Tolerances& tol, int trials,
                      std::uint64_t seed, Recorder& rec) {
  const HolonomySpec& h = *m.holonomy;
  const auto st = h.kind == SpacetimeKind::path ? DiscreteSpacetime::path(h.length) : DiscreteSpacetime::cycle(h.length);
  const ResidualGroup group = residual_group(m, h, a);
  const std::uint64_t base = stream_seed(seed, kHolonomy);
  const auto conns = build_connections(h, st, group, tol, base);
  const auto cls = classify(st, group, conns, tol.conjugacy);

  const double cert_tol = h.kind == SpacetimeKind::path ? tol.orthogonality : tol.conjugacy;
  double cert = 0, trivial = 0, invariance = 0;
  bool certified = true, invariant = true;
  json loops = json::array();
  for (std::size_t i = 0; i < conns.size(); ++i) {
    const auto& rep = conns[static_cast<std::size_t>(cls.representatives[static_cast<std::size_t>(cls.label[i])])];
    const auto eq = equivalent(st, group, conns[i], rep, tol.conjugacy);
    certified &= eq.equivalent && eq.certificate.has_value();
    cert = std::max(cert, eq.residual);
    if (h.kind == SpacetimeKind::path) {
      const auto k = trivializing_gauge(st, conns[i]);
      const auto flat = apply_gauge(st, conns[i], k);
      for (const auto& g : flat.transport)
        trivial = std::max(trivial, (g.matrix - Eigen::MatrixXd::Identity(group.n(), group.n())).cwiseAbs().maxCoeff());
    } else {
      const Eigen::MatrixXd u = holonomy(st, conns[i]).front().matrix;
      loops.push_back(holonomy_value(group, holonomy(st, conns[i]).front()));
      for (int t = 0; t < trials; ++t) {
        GaugeTransform g;
        for (int v = 0; v < st.vertices; ++v)
          g.at_vertex.push_back(group.random_element(
              base + 1000003 * (i + 1) + 101 * static_cast<std::uint64_t>(t) + static_cast<std::uint64_t>(v),
              std::numbers::pi));
        const auto moved = apply_gauge(st, conns[i], g);
        const Eigen::MatrixXd g0 = g.at_vertex.front().matrix;
        // The loop holonomy transforms by conjugation with the base-point element.
        const Eigen::MatrixXd mu = holonomy(st, moved).front().matrix;
        invariance = std::max(invariance, holonomy_deviation(group, g0.transpose() * mu * g0, u));
        invariance = std::max(invariance, holonomy_deviation(group, mu, u));
        invariant &= equivalent(st, group, conns[i], moved, tol.conjugacy).equivalent;
      }
    }
  }

  bool pass = rec.add("holonomy", "certificates_verify", cert, cert_tol, certified && cert <= cert_tol);
  if (h.kind == SpacetimeKind::path) {
    pass &= rec.add("holonomy", "path_single_class", cls.classes(), 1, cls.classes() == 1);
    pass &= rec.at_most("holonomy", "trivializing_gauge", trivial, tol.orthogonality);
  } else {
    pass &= rec.add("holonomy", "gauge_invariant_class", invariance, tol.conjugacy,
                    invariant && invariance <= tol.conjugacy);
  }

  json out{{"kind", h.kind == SpacetimeKind::path ? "path" : "cycle"},
           {"length", h.length},
           {"edges", st.edges.size()},
           {"group", h.group},
           {"group_dim", group.dim()},
           {"abelian", group.abelian()},
           {"connections", conns.size()},
           {"classes", cls.classes()},
           {"labels", cls.label},
           {"representatives", cls.representatives},
           {"certificate_residual", cert}};
  if (h.kind == SpacetimeKind::path) {
    out["trivializing_residual"] = trivial;
  } else {
    out["loop_holonomies"] = loops;
    out["gauge_trials"] = trials;
    out["gauge_invariance_residual"] = invariance;
  }
  out["pass"] = pass;
  return out;
}

json header(const ModelSpec& m, std::uint64_t seed, int trials, const RunOptions& o) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["tool"] = {{"name", "ymh"}, {"version", kToolVersion}};
  r["seed"] = seed;
  r["trials"] = trials;
  json only = json::array();
  for (const auto& s : o.only) only.push_back(s);
  r["only"] = only;
  r["tolerances"] = tolerances_to_json(m.tolerances);
  r["model"] = m.source;
  return r;
}

void finish(RunResult& res) {
  res.passed = std::all_of(res.checks.begin(), res.checks.end(), [](const CheckRow& c) { return c.pass; });
  res.report["checks"] = checks_to_json(res.checks);
  res.report["pass"] = res.passed;
}

}  // namespace

const std::vector<std::string>& section_names() {
  static const std::vector<std::string> names{"validation",  "minimum",     "goldstone",       "gauge_invariance",
                                              "unitary_gauge", "fluctuation", "normal_gradient", "holonomy"};
  return names;
}

json checks_to_json(const std::vector<CheckRow>& rows) {
  json out = json::array();
  for (const auto& c : rows)
    out.push_back({{"section", c.section}, {"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                   {"pass", c.pass}});
  return out;
}

RunResult run_analysis(const ModelSpec& m, const RunOptions& o) {
  check_only(o);
  if (!m.potential) throw InputError("potential: missing required section");
  const Tolerances& tol = m.tolerances;
  const std::uint64_t seed = o.seed.value_or(m.seed);
  const int trials = o.trials.value_or(m.trials);
  if (trials < 1) throw InputError("--trials must be positive");

  RunResult res;
  Recorder rec(model_label(m), res.checks);
  json& r = res.report;
  r = header(m, seed, trials, o);

  const auto form = build_invariant_form(m.algebra, m.couplings);
  const Eigen::MatrixXd& beta = form.matrix;
  const json validation =
      validation_section(m, beta, tol, trials, seed, enabled(o, "validation") ? &rec : nullptr);
  r["validation"] = enabled(o, "validation") ? validation : json(nullptr);

  const Minimum min = minimize(*m.potential, m.representation, default_init(m), tol);
  if (enabled(o, "minimum")) rec.at_most("minimum", "gradient_norm", min.grad_norm, tol.minimum);
  r["minimum"] = {{"z0", vec_json(min.z0)},
                  {"norm", min.z0.norm()},
                  {"value", min.value},
                  {"grad_norm", min.grad_norm},
                  {"iterations", min.iterations},
                  {"transversal_spectrum", vec_json(min.transversal_spectrum)}};

  const VacuumAnalysis a = analyze_vacuum(m.representation, *m.potential, beta, min.z0, tol);
  r["invariant_form"] = rows_json(beta);
  r["stabilizer"] = {{"dim", a.stabilizer_dim()}, {"basis", columns_json(a.lie_h)}, {"residual", a.stabilizer_residual}};
  r["spaces"] = {{"algebra_dim", a.algebra_dim()},
                 {"complement_dim", a.lie_h_perp.cols()},
                 {"goldstone_dim", a.goldstone.cols()},
                 {"physical_dim", a.physical.cols()},
                 {"complement_basis", columns_json(a.lie_h_perp)},
                 {"goldstone_basis", columns_json(a.goldstone)},
                 {"physical_basis", columns_json(a.physical)}};
  r["higgs_spectrum"] = spectrum_json(a.higgs.spectrum);
  r["ym_spectrum"] = spectrum_json(a.gauge.spectrum);

  r["rank_identities"] = enabled(o, "goldstone") ? rank_section(a, tol, rec) : json(nullptr);
  r["gauge_invariance"] =
      enabled(o, "gauge_invariance") ? gauge_invariance_section(m, beta, a, tol, trials, seed, o.parallel, rec) : json(nullptr);
  r["unitary_gauge"] =
      enabled(o, "unitary_gauge") ? unitary_section(m, a, tol, trials, seed, o.parallel, rec) : json(nullptr);
  r["fluctuation_checks"] = enabled(o, "fluctuation") ? fluctuation_section(m, a, tol, trials, seed, rec) : json(nullptr);
  r["normal_gradient_checks"] =
      enabled(o, "normal_gradient") ? normal_section(m, a, tol, trials, seed, rec) : json(nullptr);
  r["holonomy"] = m.holonomy && enabled(o, "holonomy") ? holonomy_section(m, &a, tol, trials, seed, rec) : json(nullptr);
  finish(res);
  return res;
}

RunResult run_holonomy(const ModelSpec& m, const RunOptions& o) {
  if (!m.holonomy) throw InputError("holonomy: missing required section");
  const Tolerances& tol = m.tolerances;
  const std::uint64_t seed = o.seed.value_or(m.seed);
  const int trials = o.trials.value_or(m.trials);
  if (trials < 1) throw InputError("--trials must be positive");

  RunResult res;
  Recorder rec(model_label(m), res.checks);
  res.report = header(m, seed, trials, o);
  std::optional<VacuumAnalysis> a;
  if (m.holonomy->group == "stabilizer" && m.potential) {
    const auto form = build_invariant_form(m.algebra, m.couplings);
    const Minimum min = minimize(*m.potential, m.representation, default_init(m), tol);
    a = analyze_vacuum(m.representation, *m.potential, form.matrix, min.z0, tol);
    res.report["minimum"] = {{"z0", vec_json(min.z0)}, {"value", min.value}, {"grad_norm", min.grad_norm}};
    res.report["stabilizer"] = {{"dim", a->stabilizer_dim()}, {"basis", columns_json(a->lie_h)}};
  }
  res.report["holonomy"] = holonomy_section(m, a ? &*a : nullptr, tol, trials, seed, rec);
  finish(res);
  return res;
}

}  // namespace ymh::cli
