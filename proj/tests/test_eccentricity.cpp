#include "doctest.h"
#include "geoecc/eccentricity.hpp"
#include "geoecc/errors.hpp"
#include "oracles.hpp"

using namespace geoecc;

namespace {

LocalizedNetwork hand_net(std::vector<Point2> pos, std::vector<NodePair> edges, double L) {
  LocalizedNetwork net;
  net.true_positions = net.apparent_positions = pos;
  net.params.L = L;
  net.graph = CommGraph::from_edges(static_cast<int>(pos.size()), edges);
  return net;
}

std::vector<NodePair> all_pairs(int n) {
  std::vector<NodePair> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return e;
}

}  // namespace

TEST_CASE("three collinear nodes") {
  auto net = hand_net({{0, 0}, {1, 0}, {2, 0}}, {{0, 2}, {1, 2}}, 0.5);
  auto r = full_report(net);
  CHECK(r.D == 2);
  CHECK(r.k_T == 2);
  CHECK(r.k_e == 2);
  CHECK(r.k_g == 2);
  CHECK(r.dk == 0);
  CHECK(r.kT_le_kg);
}

TEST_CASE("complete graphs") {
  auto sq = hand_net({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, all_pairs(4), 0.25);
  auto r = full_report(sq);
  CHECK(r.k_e == 1);
  CHECK(r.k_g == 1);
  CHECK(r.k_T == 1);
  auto k5 = hand_net({{0, 0}, {1.1, 0.2}, {0.3, 0.9}, {1.7, 0.8}, {0.9, 0.45}}, all_pairs(5), 0.5);
  auto r5 = full_report(k5);
  CHECK(r5.D == 1);
  CHECK(r5.k_e == 1);
  CHECK(r5.k_g == 1);
  CHECK(r5.dk == 0);
  CHECK(r5.dN == 0.0);
  CHECK(r5.N.at(1) == doctest::Approx(4.0));
}

TEST_CASE("disconnected network is rejected") {
  auto net = hand_net({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}}, 0.5);
  CHECK_THROWS_AS(full_report(net), Disconnected);
}

TEST_CASE("metrics agree with per-k brute force") {
  const std::vector<GenParams> setups = [] {
    std::vector<GenParams> v;
    GenParams a;
    a.L = 3;
    a.model = SinrModel{1.6, 2.24};
    v.push_back(a);
    GenParams b = a;
    b.model = SinrModel{1, 5};
    v.push_back(b);
    GenParams c = a;
    c.model = ExponentialModel{1.5};
    c.sigma_err = 0.2;
    v.push_back(c);
    GenParams d = a;
    d.L = 5;
    d.model = RandomModel{0.12};
    v.push_back(d);
    GenParams e = a;
    e.L = 4;
    e.sigma_err = 0.4;
    v.push_back(e);
    return v;
  }();
  int instance = 0;
  for (const auto& p : setups) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed, ++instance) {
      CAPTURE(instance);
      auto net = generate(p, seed);
      auto sub = build_apparent_subdivision(net);
      auto d = oracle::floyd(net.graph);
      auto r = full_report(net);
      // k_T straight from the definition.
      int kt = 1;
      for (auto e : sub.delaunay_edges()) kt = std::max(kt, d[e.first][e.second]);
      CHECK(r.k_T == kt);
      int ke = -1, kg = -1;
      const auto walks = oracle::all_walks(net, sub);
      for (int k = 1; k <= r.D; ++k) {
        auto c = oracle::check_at(walks, d, k);
        if (ke < 0 && c.embed) ke = k;
        if (kg < 0 && c.geo) kg = k;
        if (ke >= 0) CHECK(c.embed);
        if (kg >= 0) CHECK(c.geo);
      }
      CHECK(r.k_e == ke);
      CHECK(r.k_g == kg);
      CHECK(r.k_e <= r.k_g);
      CHECK(r.dk == r.k_g - r.k_e);
    }
  }
}

TEST_CASE("library traversal agrees with exact scan") {
  GenParams p;
  p.L = 4;
  p.model = SinrModel{1, 2};
  p.sigma_err = 0.3;
  auto net = generate(p, 5);
  auto sub = build_apparent_subdivision(net);
  for (const NodePair& e : net.graph.edges()) {
    auto orders = traversal_orders(sub, e.first, e.second);
    CHECK(orders[0] == oracle::traversed(sub.sites(), net.apparent_positions[e.first], net.apparent_positions[e.second]));
    CHECK(orders[1] == oracle::traversed(sub.sites(), net.apparent_positions[e.second], net.apparent_positions[e.first]));
  }
}

TEST_CASE("grid with cocircular vertices agrees with exact scan") {
  std::vector<Point2> pos;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j) pos.push_back({double(i), double(j)});
  auto net = hand_net(pos, all_pairs(20), 4);
  auto sub = build_apparent_subdivision(net);
  for (const NodePair& e : net.graph.edges()) {
    CHECK(sub.cells_traversed({pos[e.first], pos[e.second]}) == oracle::traversed(sub.sites(), pos[e.first], pos[e.second]));
  }
}

TEST_CASE("serial and parallel requirements agree") {
  GenParams p;
  p.L = 5;
  p.model = SinrModel{1.2, 3};
  auto net = generate(p, 2);
  auto sub = build_apparent_subdivision(net);
  HopDistances d(net.graph);
  auto a = edge_requirements(sub, net.graph, d, false);
  auto b = edge_requirements(sub, net.graph, d, true);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].embed == b[i].embed);
    CHECK(a[i].geo == b[i].geo);
  }
}

TEST_CASE("scale invariance") {
  GenParams p;
  p.L = 4;
  p.model = SinrModel{1.2, 2.5};
  auto net = generate(p, 8);
  auto scaled = net;
  for (auto* v : {&scaled.true_positions, &scaled.apparent_positions})
    for (auto& q : *v) q = 4.0 * q;
  scaled.params.L *= 4;
  auto a = full_report(net), b = full_report(scaled);
  CHECK(a.k_T == b.k_T);
  CHECK(a.k_e == b.k_e);
  CHECK(a.k_g == b.k_g);
}
