#pragma once

#include <memory>
#include <vector>

#include "geoecc/geometry.hpp"
#include "geoecc/netgen.hpp"
#include "geoecc/netgraph.hpp"

namespace geoecc {

/// Canonical simulation with respect to H = G^k. Zones are unions of
/// Voronoi cells of the apparent positions; holes are represented by the
/// set of forbidden cell boundaries (adjacent cells whose owners are not
/// H-neighbours), treated as closed segments removed from the space.
class CanonicalSimulation {
 public:
  /// Throws Disconnected, or std::invalid_argument for k < 1.
  static CanonicalSimulation build(const LocalizedNetwork& net, int k);
  /// Reuses an existing subdivision of the apparent positions.
  static CanonicalSimulation build(std::shared_ptr<const LocalizedNetwork> net,
                                   std::shared_ptr<const PlanarSubdivision> sub, int k);

  const LocalizedNetwork& net() const { return *net_; }
  const PlanarSubdivision& sub() const { return *sub_; }
  const KnowledgeGraph& H() const { return h_; }
  int k() const { return h_.k(); }
  int size() const { return net_->size(); }
  Point2 position(NodeId u) const { return net_->apparent_positions[u]; }

  /// {u} and its H-neighbours, sorted.
  const std::vector<NodeId>& zone(NodeId u) const { return zones_[u]; }
  const std::vector<std::vector<NodeId>>& zones() const { return zones_; }
  const std::vector<NodePair>& forbidden() const { return forbidden_; }
  bool is_forbidden(NodeId a, NodeId b) const;
  bool h_adjacent(NodeId u, NodeId v) const { return u != v && h_.contains(u, v); }
  bool zone_has_cell(NodeId u, NodeId cell) const;

  /// False iff two of the given owners share a forbidden boundary.
  bool owners_free(const std::vector<NodeId>& owners) const;
  bool in_space(Point2 p) const;
  bool zone_contains(NodeId u, Point2 p) const;
  /// Throws GeocastViolation.
  NodeId geocast_target(NodeId u, Point2 p) const;
  /// Owners of the cells entered from p in direction dir, sorted.
  std::vector<NodeId> cells_entered(Point2 p, Point2 dir) const;
  /// Throws PreconditionViolated or HandoverStuck.
  NodeId handover_target(NodeId u, Point2 p, Point2 dir) const;

 private:
  CanonicalSimulation(std::shared_ptr<const LocalizedNetwork> net, std::shared_ptr<const PlanarSubdivision> sub,
                      KnowledgeGraph h);

  std::shared_ptr<const LocalizedNetwork> net_;
  std::shared_ptr<const PlanarSubdivision> sub_;
  KnowledgeGraph h_;
  std::vector<std::vector<NodeId>> zones_;
  std::vector<NodePair> forbidden_;
};

}  // namespace geoecc
