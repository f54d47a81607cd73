#include <random>

#include "doctest.h"
#include "geoecc/errors.hpp"
#include "geoecc/netgraph.hpp"

using namespace geoecc;

namespace {

CommGraph path(int n) {
  std::vector<NodePair> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return CommGraph::from_edges(n, e);
}

CommGraph complete(int n) {
  std::vector<NodePair> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return CommGraph::from_edges(n, e);
}

CommGraph random_connected(int n, double p, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<NodePair> e;
  for (int i = 1; i < n; ++i) e.push_back({static_cast<int>(rng() % i), i});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.push_back({i, j});
  return CommGraph::from_edges(n, e);
}

std::vector<std::vector<int>> floyd(const CommGraph& g) {
  const int n = g.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j : g.neighbors(i)) d[i][j] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& r : d)
    for (int& x : r)
      if (x >= inf) x = kUnreachable;
  return d;
}

}  // namespace

TEST_CASE("bfs distances") {
  CHECK(bfs_distances(path(3), 0) == std::vector<int>{0, 1, 2});
  CHECK(bfs_distances(CommGraph(2), 0) == std::vector<int>{0, kUnreachable});
  for (unsigned seed = 1; seed <= 5; ++seed) {
    auto g = random_connected(30, 0.05, seed);
    auto fw = floyd(g);
    for (int u = 0; u < 30; ++u) CHECK(bfs_distances(g, u) == fw[u]);
  }
}

TEST_CASE("diameter") {
  CHECK(diameter(complete(5)) == 1);
  CHECK(diameter(path(4)) == 3);
  CHECK_THROWS_AS(diameter(CommGraph(2)), Disconnected);
  for (unsigned seed = 1; seed <= 5; ++seed) {
    auto g = random_connected(30, 0.03, seed);
    auto fw = floyd(g);
    int m = 0;
    for (auto& r : fw)
      for (int x : r) m = std::max(m, x);
    CHECK(diameter(g) == m);
    HopDistances lazy(g, 0);
    CHECK_FALSE(lazy.materialized());
    CHECK(lazy.diameter() == m);
  }
}

TEST_CASE("power graph") {
  auto g = random_connected(30, 0.04, 9);
  auto g1 = power_graph(g, 1);
  for (int u = 0; u < 30; ++u) CHECK(g1.neighbors(u) == g.neighbors(u));
  auto p = power_graph(path(4), 2);
  CHECK(p.neighbors(0) == std::vector<NodeId>{1, 2});
  CHECK(p.neighbors(1) == std::vector<NodeId>{0, 2, 3});
  CHECK(p.neighbors(3) == std::vector<NodeId>{1, 2});
  auto fw = floyd(g);
  auto g3 = power_graph(g, 3);
  for (int u = 0; u < 30; ++u)
    for (int v = 0; v < 30; ++v) CHECK(g3.contains(u, v) == (u != v && fw[u][v] <= 3));
  auto gd = power_graph(g, diameter(g));
  for (int u = 0; u < 30; ++u) CHECK(gd.neighbors(u).size() == 29);
  CHECK_THROWS_AS(power_graph(g, 0), std::invalid_argument);
}

TEST_CASE("neighborhood sizes") {
  CHECK(avg_neighborhood_size(complete(5), 1) == doctest::Approx(4.0));
  CHECK(avg_neighborhood_size(path(3), 1) == doctest::Approx(4.0 / 3.0));
  auto g = random_connected(40, 0.02, 3);
  const int d = diameter(g);
  CHECK(avg_neighborhood_size(g, d) == doctest::Approx(39.0));
  HopDistances hd(g);
  auto sizes = hd.neighborhood_sizes(d);
  for (int i = 1; i <= d; ++i) {
    CHECK(sizes[i - 1] == doctest::Approx(avg_neighborhood_size(g, i)));
    if (i > 1) CHECK(sizes[i - 1] >= sizes[i - 2]);
  }
}

TEST_CASE("serial and parallel all-pairs agree") {
  auto g = random_connected(200, 0.01, 5);
  CHECK(all_pairs_serial(g) == all_pairs_parallel(g));
}

TEST_CASE("graph construction errors") {
  CHECK_THROWS_AS(CommGraph::from_edges(2, std::vector<NodePair>{{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(CommGraph::from_edges(2, std::vector<NodePair>{{0, 2}}), std::invalid_argument);
}
