#pragma once

#include <map>
#include <vector>

#include "geoecc/geometry.hpp"
#include "geoecc/netgen.hpp"
#include "geoecc/netgraph.hpp"

namespace geoecc {

/// Hop requirements of one link of G, taken over both directions.
struct EdgeRequirement {
  NodePair edge;
  int embed = 1;  // max hop distance between consecutive traversed cells
  int geo = 1;    // max of `embed` and the distance from either endpoint to any traversed cell
};

struct EccentricityReport {
  int D = 0;
  std::map<int, double> N;  // N_i for i in {1, k_e, k_g}
  int k_T = 0;
  int k_e = 0;
  int k_g = 0;
  int dk = 0;
  double dN = 0.0;
  bool kT_le_kg = true;
  std::size_t edges = 0;
};

/// Subdivision of the apparent positions over the network's clip box.
PlanarSubdivision build_apparent_subdivision(const LocalizedNetwork& net);

/// Traversed cells of the segment p_u p_v, listed walking from u and
/// walking from v (orders can differ at Voronoi vertices).
std::vector<std::vector<NodeId>> traversal_orders(const PlanarSubdivision& sub, NodeId u, NodeId v);

std::vector<EdgeRequirement> edge_requirements(const PlanarSubdivision& sub, const CommGraph& g,
                                               const HopDistances& dist, bool parallel = true);

/// All throw Disconnected.
int delaunay_locality(const LocalizedNetwork& net);
int embedding_locality(const LocalizedNetwork& net);
int geographic_eccentricity(const LocalizedNetwork& net);
EccentricityReport full_report(const LocalizedNetwork& net, bool parallel = true);

/// Report from precomputed parts.
EccentricityReport assemble_report(const PlanarSubdivision& sub, const CommGraph& g, const HopDistances& dist,
                                   const std::vector<EdgeRequirement>& reqs);

}  // namespace geoecc
