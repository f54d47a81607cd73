#include "geoecc/canonical.hpp"

#include <algorithm>

#include "geoecc/eccentricity.hpp"
#include "geoecc/errors.hpp"
#include "geoecc/predicates.hpp"

namespace geoecc {

CanonicalSimulation::CanonicalSimulation(std::shared_ptr<const LocalizedNetwork> net,
                                         std::shared_ptr<const PlanarSubdivision> sub, KnowledgeGraph h)
    : net_(std::move(net)), sub_(std::move(sub)), h_(std::move(h)) {}

CanonicalSimulation CanonicalSimulation::build(const LocalizedNetwork& net, int k) {
  auto shared = std::make_shared<const LocalizedNetwork>(net);
  auto sub = std::make_shared<const PlanarSubdivision>(build_apparent_subdivision(net));
  return build(shared, sub, k);
}

CanonicalSimulation CanonicalSimulation::build(std::shared_ptr<const LocalizedNetwork> net,
                                               std::shared_ptr<const PlanarSubdivision> sub, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!is_connected(net->graph)) throw Disconnected();
  KnowledgeGraph h = power_graph(net->graph, k);
  CanonicalSimulation sim(net, sub, std::move(h));
  const int n = net->size();
  sim.zones_.resize(n);
  for (int u = 0; u < n; ++u) {
    auto& z = sim.zones_[u];
    z = sim.h_.neighbors(u);
    z.insert(std::lower_bound(z.begin(), z.end(), u), u);
  }
  for (const NodePair& e : sim.sub_->adjacent_pairs()) {
    if (!sim.h_.contains(e.first, e.second)) sim.forbidden_.push_back(e);
  }
  return sim;
}

bool CanonicalSimulation::is_forbidden(NodeId a, NodeId b) const {
  return std::binary_search(forbidden_.begin(), forbidden_.end(), NodePair::of(a, b));
}

bool CanonicalSimulation::zone_has_cell(NodeId u, NodeId cell) const {
  return std::binary_search(zones_[u].begin(), zones_[u].end(), cell);
}

bool CanonicalSimulation::owners_free(const std::vector<NodeId>& owners) const {
  for (std::size_t i = 0; i < owners.size(); ++i)
    for (std::size_t j = i + 1; j < owners.size(); ++j)
      if (is_forbidden(owners[i], owners[j])) return false;
  return true;
}

bool CanonicalSimulation::in_space(Point2 p) const {
  return sub_->box().contains(p) && owners_free(sub_->owners(p));
}

bool CanonicalSimulation::zone_contains(NodeId u, Point2 p) const {
  if (!sub_->box().contains(p)) return false;
  const auto owners = sub_->owners(p);
  if (!owners_free(owners)) return false;
  return std::any_of(owners.begin(), owners.end(), [&](NodeId c) { return zone_has_cell(u, c); });
}

NodeId CanonicalSimulation::geocast_target(NodeId u, Point2 p) const {
  const auto owners = sub_->owners(p);
  for (NodeId c : owners) {
    if (c == u || h_adjacent(u, c)) return c;
  }
  throw GeocastViolation(u, owners.front());
}

std::vector<NodeId> CanonicalSimulation::cells_entered(Point2 p, Point2 dir) const {
  const auto owners = sub_->owners(p);
  const predicates::SegmentPencil pen(p, p + dir);
  NodeId top = owners.front();
  for (NodeId c : owners)
    if (pen.compare_slope(sub_->position(c), sub_->position(top)) > 0) top = c;
  std::vector<NodeId> out;
  for (NodeId c : owners)
    if (pen.compare_slope(sub_->position(c), sub_->position(top)) == 0) out.push_back(c);
  return out;
}

NodeId CanonicalSimulation::handover_target(NodeId u, Point2 p, Point2 dir) const {
  const auto entered = cells_entered(p, dir);
  if (std::find(entered.begin(), entered.end(), u) != entered.end()) {
    throw PreconditionViolated("handover from node " + std::to_string(u) + " into its own cell");
  }
  if (!owners_free(sub_->owners(p))) throw HandoverStuck(u);
  for (NodeId v : h_.neighbors(u)) {
    for (NodeId c : entered)
      if (zone_has_cell(v, c)) return v;
  }
  throw HandoverStuck(u);
}

}  // namespace geoecc
