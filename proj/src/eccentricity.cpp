#include "geoecc/eccentricity.hpp"

#include <algorithm>

#include "geoecc/errors.hpp"

namespace geoecc {

namespace {

SegmentTrace reversed(const SegmentTrace& tr) {
  SegmentTrace r;
  r.start_owners = tr.end_owners;
  r.end_owners = tr.start_owners;
  for (auto it = tr.pieces.rbegin(); it != tr.pieces.rend(); ++it) r.pieces.push_back({1.0 - it->t1, 1.0 - it->t0, it->owners});
  for (auto it = tr.events.rbegin(); it != tr.events.rend(); ++it) r.events.push_back({1.0 - it->t, it->tied});
  return r;
}

EdgeRequirement requirement(const PlanarSubdivision& sub, const HopDistances& dist, NodePair e) {
  EdgeRequirement req{e, 1, 1};
  for (const auto& order : traversal_orders(sub, e.first, e.second)) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) req.embed = std::max(req.embed, dist(order[i], order[i + 1]));
    for (NodeId w : order) req.geo = std::max({req.geo, dist(e.first, w), dist(e.second, w)});
  }
  req.geo = std::max(req.geo, req.embed);
  return req;
}

}  // namespace

PlanarSubdivision build_apparent_subdivision(const LocalizedNetwork& net) {
  std::vector<Site> sites;
  sites.reserve(net.size());
  for (int i = 0; i < net.size(); ++i) sites.push_back({i, net.apparent_positions[i]});
  return PlanarSubdivision::build(std::move(sites), net.clip_box());
}

std::vector<std::vector<NodeId>> traversal_orders(const PlanarSubdivision& sub, NodeId u, NodeId v) {
  const SegmentTrace tr = sub.trace_from_site(u, sub.position(v));
  return {flatten_trace(tr), flatten_trace(reversed(tr))};
}

std::vector<EdgeRequirement> edge_requirements(const PlanarSubdivision& sub, const CommGraph& g,
                                               const HopDistances& dist, bool parallel) {
  const std::vector<NodePair> edges = g.edges();
  std::vector<EdgeRequirement> out(edges.size());
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(edges.size());
#pragma omp parallel for schedule(dynamic, 32) if (parallel)
  for (std::ptrdiff_t i = 0; i < m; ++i) out[i] = requirement(sub, dist, edges[i]);
  return out;
}

EccentricityReport assemble_report(const PlanarSubdivision& sub, const CommGraph& g, const HopDistances& dist,
                                   const std::vector<EdgeRequirement>& reqs) {
  EccentricityReport r;
  r.D = dist.diameter();
  r.edges = g.edge_count();
  r.k_T = 1;
  for (const NodePair& e : sub.delaunay_edges()) r.k_T = std::max(r.k_T, dist(e.first, e.second));
  r.k_e = 1;
  r.k_g = 1;
  for (const auto& q : reqs) {
    r.k_e = std::max(r.k_e, q.embed);
    r.k_g = std::max(r.k_g, q.geo);
  }
  if (r.k_e > r.k_g || r.k_g > std::max(r.D, 1)) throw Error("eccentricity bounds violated");
  const auto sizes = dist.neighborhood_sizes(std::max(r.k_g, 1));
  for (int i : {1, r.k_e, r.k_g}) r.N[i] = sizes[i - 1];
  r.dk = r.k_g - r.k_e;
  r.dN = r.N[r.k_g] - r.N[r.k_e];
  r.kT_le_kg = r.k_T <= r.k_g;
  return r;
}

EccentricityReport full_report(const LocalizedNetwork& net, bool parallel) {
  HopDistances dist(net.graph, HopDistances::kDefaultBudget, parallel);
  dist.diameter();
  const PlanarSubdivision sub = build_apparent_subdivision(net);
  return assemble_report(sub, net.graph, dist, edge_requirements(sub, net.graph, dist, parallel));
}

int delaunay_locality(const LocalizedNetwork& net) { return full_report(net).k_T; }
int embedding_locality(const LocalizedNetwork& net) { return full_report(net).k_e; }
int geographic_eccentricity(const LocalizedNetwork& net) { return full_report(net).k_g; }

}  // namespace geoecc
