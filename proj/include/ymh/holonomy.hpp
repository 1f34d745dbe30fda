#pragma once

// Flat connections on graph spacetimes with values in the residual group H.
//
// A path graph is the simply connected case: every connection is gauge
// trivial. A cycle has one independent loop whose holonomy, up to conjugation
// in H, classifies connections up to gauge. Bundle (non)triviality itself is
// not modelled, only holonomy.

#include "ymh/rep.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ymh {

enum class SpacetimeKind { path, cycle };

struct DiscreteSpacetime {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // oriented; edge i runs i -> i+1 (mod n for cycles)
  SpacetimeKind kind = SpacetimeKind::path;
  int base = 0;

  static DiscreteSpacetime path(int n);
  static DiscreteSpacetime cycle(int n);
};

/// A compact connected matrix group exp(span{X_k}) in SO(N), X_k antisymmetric.
class ResidualGroup {
 public:
  ResidualGroup(std::vector<Eigen::MatrixXd> generators, int n);

  /// SO(2) acting on R^2.
  static ResidualGroup u1();
  /// Image of the stabilizer subalgebra (columns of lie_h) under the representation.
  static ResidualGroup from_stabilizer(const Representationd& rep, const Eigen::MatrixXd& lie_h);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(generators_.size()); }
  bool abelian() const { return abelian_; }
  const std::vector<Eigen::MatrixXd>& generators() const { return generators_; }

  GroupElementd element(const Eigen::VectorXd& theta) const;
  GroupElementd random_element(std::uint64_t seed, double scale) const;

 private:
  std::vector<Eigen::MatrixXd> generators_;
  int n_ = 0;
  bool abelian_ = true;
};

struct DiscreteConnection {
  std::vector<GroupElementd> transport;  // one per edge
};

struct GaugeTransform {
  std::vector<GroupElementd> at_vertex;
};

/// Throws InputError on shape mismatch or a non-special-orthogonal transport.
void validate_connection(const DiscreteSpacetime& spacetime, const ResidualGroup& group,
                         const DiscreteConnection& connection, double tol_orth = 1e-9);

/// exp(sum_k params[e]_k X_k) on every edge e.
DiscreteConnection connection_from_parameters(const DiscreteSpacetime& spacetime, const ResidualGroup& group,
                                              const std::vector<Eigen::VectorXd>& params);

/// Loop holonomies based at spacetime.base; empty for paths.
std::vector<GroupElementd> holonomy(const DiscreteSpacetime& spacetime, const DiscreteConnection& connection);

/// Edge (u -> v) transport h becomes g_u h g_v^{-1}.
DiscreteConnection apply_gauge(const DiscreteSpacetime& spacetime, const DiscreteConnection& connection,
                               const GaugeTransform& gauge);

/// Pointwise product (g2 o g1)_v = g2_v g1_v.
GaugeTransform compose(const GaugeTransform& second, const GaugeTransform& first);

GaugeTransform identity_gauge(const DiscreteSpacetime& spacetime, int n);
DiscreteConnection identity_connection(const DiscreteSpacetime& spacetime, int n);

struct Equivalence {
  bool equivalent = false;
  std::optional<GaugeTransform> certificate;  // maps the first connection onto the second
  double residual = 0;                        // max entry error of the certificate, or conjugator misfit
};

/// Paths: always equivalent, with a constructive certificate. Cycles: the loop
/// holonomies must be conjugate in H, decided exactly (equality) for abelian H
/// and by eigenvalue comparison plus a conjugator search for nonabelian H.
Equivalence equivalent(const DiscreteSpacetime& spacetime, const ResidualGroup& group,
                       const DiscreteConnection& first, const DiscreteConnection& second, double tol = 1e-8,
                       std::uint64_t seed = 1);

/// Gauge transform mapping `connection` to identity transports (paths only).
GaugeTransform trivializing_gauge(const DiscreteSpacetime& spacetime, const DiscreteConnection& connection);

struct Classification {
  std::vector<int> label;            // class index per input connection
  std::vector<int> representatives;  // first member of each class
  int classes() const { return static_cast<int>(representatives.size()); }
};

Classification classify(const DiscreteSpacetime& spacetime, const ResidualGroup& group,
                        const std::vector<DiscreteConnection>& connections, double tol = 1e-8);

/// Rotation angle in [0, 2pi) of a 2x2 rotation matrix.
double rotation_angle(const Eigen::MatrixXd& r);

}  // namespace ymh
