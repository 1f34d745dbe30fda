#include "ymh/holonomy.hpp"

#include "ymh/error.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace ymh {

DiscreteSpacetime DiscreteSpacetime::path(int n) {
  if (n < 1) throw InputError("path graph needs at least one vertex");
  DiscreteSpacetime s;
  s.vertices = n;
  s.kind = SpacetimeKind::path;
  for (int v = 0; v + 1 < n; ++v) s.edges.emplace_back(v, v + 1);
  return s;
}

DiscreteSpacetime DiscreteSpacetime::cycle(int n) {
  if (n < 1) throw InputError("cycle graph needs at least one vertex");
  DiscreteSpacetime s;
  s.vertices = n;
  s.kind = SpacetimeKind::cycle;
  for (int v = 0; v < n; ++v) s.edges.emplace_back(v, (v + 1) % n);
  return s;
}

ResidualGroup::ResidualGroup(std::vector<Eigen::MatrixXd> generators, int n)
    : generators_(std::move(generators)), n_(n) {
  if (n_ < 1) throw InputError("residual group must act on a nonzero space");
  for (const auto& x : generators_) {
    if (x.rows() != n_ || x.cols() != n_) throw InputError("residual group generator has wrong shape");
    if ((x + x.transpose()).cwiseAbs().maxCoeff() > 1e-10)
      throw InputError("residual group generator is not antisymmetric");
  }
  for (std::size_t i = 0; i < generators_.size() && abelian_; ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      const Eigen::MatrixXd c = generators_[i] * generators_[j] - generators_[j] * generators_[i];
      if (c.cwiseAbs().maxCoeff() > 1e-10) {
        abelian_ = false;
        break;
      }
    }
}

ResidualGroup ResidualGroup::u1() {
  Eigen::MatrixXd j(2, 2);
  j << 0, -1, 1, 0;
  return ResidualGroup({j}, 2);
}

ResidualGroup ResidualGroup::from_stabilizer(const Representationd& rep, const Eigen::MatrixXd& lie_h) {
  std::vector<Eigen::MatrixXd> gens;
  for (Eigen::Index k = 0; k < lie_h.cols(); ++k) gens.push_back(rep.action(lie_h.col(k)));
  return ResidualGroup(std::move(gens), rep.n());
}

GroupElementd ResidualGroup::element(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim()) throw InputError("residual group parameter has wrong length");
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n_, n_);
  for (int k = 0; k < dim(); ++k) x += theta(k) * generators_[static_cast<std::size_t>(k)];
  return {x.exp(), theta};
}

GroupElementd ResidualGroup::random_element(std::uint64_t seed, double scale) const {
  return element(random_algebra_vector<double>(dim(), seed, scale));
}

void validate_connection(const DiscreteSpacetime& spacetime, const ResidualGroup& group,
                         const DiscreteConnection& connection, double tol_orth) {
  if (connection.transport.size() != spacetime.edges.size())
    throw InputError("connection has " + std::to_string(connection.transport.size()) + " transports for " +
                     std::to_string(spacetime.edges.size()) + " edges");
  for (std::size_t e = 0; e < connection.transport.size(); ++e) {
    const auto& g = connection.transport[e];
    if (g.matrix.rows() != group.n() || g.matrix.cols() != group.n())
      throw InputError("transport on edge " + std::to_string(e) + " has wrong shape");
    if (!g.is_special_orthogonal(tol_orth))
      throw InputError("transport on edge " + std::to_string(e) + " is not special orthogonal");
  }
}

DiscreteConnection connection_from_parameters(const DiscreteSpacetime& spacetime, const ResidualGroup& group,
                                              const std::vector<Eigen::VectorXd>& params) {
  if (params.size() != spacetime.edges.size()) throw InputError("one parameter vector per edge expected");
  DiscreteConnection c;
  for (const auto& p : params) c.transport.push_back(group.element(p));
  return c;
}

std::vector<GroupElementd> holonomy(const DiscreteSpacetime& spacetime, const DiscreteConnection& connection) {
  if (spacetime.kind == SpacetimeKind::path) return {};
  if (connection.transport.empty()) throw InputError("cycle connection has no transports");
  const auto n = connection.transport.front().matrix.rows();
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
  for (const auto& g : connection.transport) u = u * g.matrix;
  return {GroupElementd{u, std::nullopt}};
}

DiscreteConnection apply_gauge(const DiscreteSpacetime& spacetime, const DiscreteConnection& connection,
                               const GaugeTransform& gauge) {
  if (gauge.at_vertex.size() != static_cast<std::size_t>(spacetime.vertices))
    throw InputError("gauge transform needs one element per vertex");
  if (connection.transport.size() != spacetime.edges.size()) throw InputError("connection/edge count mismatch");
  DiscreteConnection out;
  for (std::size_t e = 0; e < spacetime.edges.size(); ++e) {
    const auto [u, v] = spacetime.edges[e];
    const auto& gu = gauge.at_vertex[static_cast<std::size_t>(u)].matrix;
    const auto& gv = gauge.at_vertex[static_cast<std::size_t>(v)].matrix;
    out.transport.push_back({gu * connection.transport[e].matrix * gv.transpose(), std::nullopt});
  }
  return out;
}

GaugeTransform compose(const GaugeTransform& second, const GaugeTransform& first) {
  if (second.at_vertex.size() != first.at_vertex.size()) throw InputError("gauge transforms differ in size");
  GaugeTransform out;
  for (std::size_t v = 0; v < first.at_vertex.size(); ++v)
    out.at_vertex.push_back(second.at_vertex[v] * first.at_vertex[v]);
  return out;
}

GaugeTransform identity_gauge(const DiscreteSpacetime& spacetime, int n) {
  return {std::vector<GroupElementd>(static_cast<std::size_t>(spacetime.vertices), GroupElementd::identity(n))};
}

DiscreteConnection identity_connection(const DiscreteSpacetime& spacetime, int n) {
  return {std::vector<GroupElementd>(spacetime.edges.size(), GroupElementd::identity(n))};
}

namespace {

// Gauge k with k_base = start mapping `first` onto `second` along edges
// 0..n-2 (all path edges; all but the closing edge of a cycle):
// k_{v+1} = second_e^{-1} k_v first_e.
GaugeTransform propagate(const DiscreteSpacetime& spacetime, const DiscreteConnection& first,
                         const DiscreteConnection& second, const Eigen::MatrixXd& start) {
  GaugeTransform k;
  k.at_vertex.resize(static_cast<std::size_t>(spacetime.vertices));
  k.at_vertex[0] = {start, std::nullopt};
  for (int v = 0; v + 1 < spacetime.vertices; ++v) {
    const auto e = static_cast<std::size_t>(v);
    k.at_vertex[e + 1] = {second.transport[e].matrix.transpose() * k.at_vertex[e].matrix * first.transport[e].matrix,
                          std::nullopt};
  }
  return k;
}

double certificate_error(const DiscreteSpacetime& spacetime, const DiscreteConnection& first,
                         const DiscreteConnection& second, const GaugeTransform& k) {
  const DiscreteConnection mapped = apply_gauge(spacetime, first, k);
  double err = 0;
  for (std::size_t e = 0; e < mapped.transport.size(); ++e)
    err = std::max(err, (mapped.transport[e].matrix - second.transport[e].matrix).cwiseAbs().maxCoeff());
  return err;
}

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

// Searches h in H with h u1 h^{-1} = u2 by gradient descent on
// |h u1 h^T - u2|_F^2 along h <- exp(-t X) h, X in Lie(H). Returns the
// best conjugator and its max-entry misfit.
std::pair<Eigen::MatrixXd, double> find_conjugator(const ResidualGroup& group, const Eigen::MatrixXd& u1,
                                                   const Eigen::MatrixXd& u2, double tol, std::uint64_t seed) {
  const int n = group.n();
  auto misfit = [&](const Eigen::MatrixXd& h) { return (h * u1 * h.transpose() - u2).squaredNorm(); };
  // Decisions use tol; the returned conjugator is refined further so that
  // certificates built from it are accurate well below tol.
  constexpr double kPolish = 1e-14;
  Eigen::MatrixXd best = Eigen::MatrixXd::Identity(n, n);
  double best_err = (u1 - u2).cwiseAbs().maxCoeff();
  if (best_err <= kPolish || group.dim() == 0) return {best, best_err};

  constexpr int kStarts = 8;
  constexpr int kIterations = 5000;
  for (int start = 0; start < kStarts && best_err > tol; ++start) {
    Eigen::MatrixXd h = start == 0 ? Eigen::MatrixXd::Identity(n, n)
                                   : group.random_element(seed + static_cast<std::uint64_t>(start), std::numbers::pi).matrix;
    double f = misfit(h);
    double step = 1.0;
    for (int it = 0; it < kIterations; ++it) {
      const Eigen::MatrixXd c = h * u1 * h.transpose();
      const Eigen::MatrixXd d = c - u2;
      if (d.cwiseAbs().maxCoeff() <= kPolish) break;
      Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
      double g2 = 0;
      for (const auto& t : group.generators()) {
        const double g = 2.0 * (d.array() * (t * c - c * t).array()).sum();
        x += g * t;
        g2 += g * g;
      }
      if (g2 == 0.0) break;
      bool accepted = false;
      double s = std::min(2.0 * step, 1e3);
      Eigen::MatrixXd trial;
      double ft = 0;
      for (int ls = 0; ls < 60; ++ls, s *= 0.5) {
        trial = (-s * x).exp() * h;
        ft = misfit(trial);
        if (ft <= f - 1e-4 * s * g2) {
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      step = s;
      h = trial;
      f = ft;
    }
    const double err = (h * u1 * h.transpose() - u2).cwiseAbs().maxCoeff();
    if (err < best_err) {
      best_err = err;
      best = h;
    }
  }
  return {best, best_err};
}

}  // namespace

Equivalence equivalent(const DiscreteSpacetime& spacetime, const ResidualGroup& group,
                       const DiscreteConnection& first, const DiscreteConnection& second, double tol,
                       std::uint64_t seed) {
  if (first.transport.size() != spacetime.edges.size() || second.transport.size() != spacetime.edges.size())
    throw InputError("connections do not match the spacetime");
  for (const auto* c : {&first, &second})
    for (const auto& g : c->transport)
      if (g.matrix.rows() != group.n()) throw InputError("transport dimension does not match the residual group");

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(group.n(), group.n());
  Equivalence out;
  if (spacetime.kind == SpacetimeKind::path) {
    GaugeTransform k = propagate(spacetime, first, second, id);
    out.residual = certificate_error(spacetime, first, second, k);
    out.equivalent = true;
    out.certificate = std::move(k);
    return out;
  }

  const Eigen::MatrixXd u1 = holonomy(spacetime, first).front().matrix;
  const Eigen::MatrixXd u2 = holonomy(spacetime, second).front().matrix;
  Eigen::MatrixXd conjugator = id;
  if (group.abelian()) {
    out.residual = (u1 - u2).cwiseAbs().maxCoeff();
    out.equivalent = out.residual <= tol;
  } else {
    const auto e1 = sorted_eigenvalues(u1);
    const auto e2 = sorted_eigenvalues(u2);
    double spread = 0;
    for (std::size_t i = 0; i < e1.size(); ++i) spread = std::max(spread, std::abs(e1[i] - e2[i]));
    if (spread > std::sqrt(tol)) {
      out.residual = spread;
      out.equivalent = false;
      return out;
    }
    auto [h, err] = find_conjugator(group, u1, u2, tol, seed);
    conjugator = h;
    out.residual = err;
    out.equivalent = err <= tol;
  }
  if (out.equivalent) {
    GaugeTransform k = propagate(spacetime, first, second, conjugator);
    out.residual = std::max(out.residual, certificate_error(spacetime, first, second, k));
    out.certificate = std::move(k);
  }
  return out;
}

GaugeTransform trivializing_gauge(const DiscreteSpacetime& spacetime, const DiscreteConnection& connection) {
  if (spacetime.kind != SpacetimeKind::path) throw InputError("only path graphs are gauge trivial in general");
  if (connection.transport.empty()) return identity_gauge(spacetime, 1);
  const int n = static_cast<int>(connection.transport.front().matrix.rows());
  return propagate(spacetime, connection, identity_connection(spacetime, n), Eigen::MatrixXd::Identity(n, n));
}

Classification classify(const DiscreteSpacetime& spacetime, const ResidualGroup& group,
                        const std::vector<DiscreteConnection>& connections, double tol) {
  if (connections.empty()) throw InputError("classification needs at least one connection");
  const std::size_t k = connections.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (find(i) == find(j)) continue;
      if (equivalent(spacetime, group, connections[i], connections[j], tol).equivalent) {
        const auto a = find(i), b = find(j);
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  Classification out;
  out.label.assign(k, -1);
  std::vector<int> class_of_root(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = find(i);
    if (class_of_root[r] < 0) {
      class_of_root[r] = out.classes();
      out.representatives.push_back(static_cast<int>(i));
    }
    out.label[i] = class_of_root[r];
  }
  return out;
}

double rotation_angle(const Eigen::MatrixXd& r) {
  if (r.rows() != 2 || r.cols() != 2) throw InputError("rotation_angle expects a 2x2 matrix");
  double a = std::atan2(r(1, 0), r(0, 0));
  if (a < 0) a += 2.0 * std::numbers::pi;
  return a;
}

}  // namespace ymh
