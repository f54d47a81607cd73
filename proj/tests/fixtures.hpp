#pragma once

#include <vector>

#include "geoecc/netgen.hpp"

namespace fixtures {

using namespace geoecc;

inline LocalizedNetwork hand_net(std::vector<Point2> pos, std::vector<NodePair> edges, double L) {
  LocalizedNetwork net;
  net.true_positions = net.apparent_positions = pos;
  net.params.L = L;
  net.params.n = static_cast<int>(pos.size());
  net.graph = CommGraph::from_edges(static_cast<int>(pos.size()), edges);
  return net;
}

inline std::vector<NodePair> all_pairs(int n) {
  std::vector<NodePair> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return e;
}

// Nodes at x = 0, 1, 2 on a line; 0 and 1 only talk through 2.
inline LocalizedNetwork three_collinear() { return hand_net({{0, 0}, {1, 0}, {2, 0}}, {{0, 2}, {1, 2}}, 0.5); }

inline LocalizedNetwork k5() {
  return hand_net({{0, 0}, {1.1, 0.2}, {0.3, 0.9}, {1.7, 0.8}, {0.9, 0.45}}, all_pairs(5), 0.5);
}

}  // namespace fixtures
