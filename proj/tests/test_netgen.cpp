#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "geoecc/errors.hpp"
#include "geoecc/netgen.hpp"

using namespace geoecc;

TEST_CASE("link probability") {
  CHECK(link_probability(SinrModel{1, 2}, 0.5) == 1.0);
  CHECK(link_probability(SinrModel{1, 2}, std::sqrt(2.0)) == doctest::Approx(1.0 / 3.0));
  CHECK(link_probability(SinrModel{1, 2}, 2.0) == 0.0);
  CHECK(link_probability(SinrModel{1, 2}, 1.0) == 1.0);
  CHECK(link_probability(ExponentialModel{2}, 2) == doctest::Approx(0.36788).epsilon(1e-4));
  CHECK(link_probability(RandomModel{0.3}, 100) == 0.3);
  CHECK_THROWS_AS(validate_model(SinrModel{2, 1}), ConfigError);
  CHECK_THROWS_AS(validate_model(RandomModel{0}), ConfigError);
  CHECK_THROWS_AS(validate_model(ExponentialModel{-1}), ConfigError);
}

TEST_CASE("empirical link frequency matches the model") {
  const std::vector<std::pair<LinkModel, double>> cases = {
      {SinrModel{1, 2}, 1.3}, {SinrModel{1, 2}, 1.8}, {ExponentialModel{1.5}, 1.0}, {RandomModel{0.2}, 5.0}};
  const int trials = 20000;
  for (const auto& [m, d] : cases) {
    const std::vector<Point2> pos{{0, 0}, {d, 0}};
    int hits = 0;
    for (int t = 0; t < trials; ++t) hits += static_cast<int>(sample_links(pos, m, splitmix64(t + 1)).size());
    const double p = link_probability(m, d);
    const double chi2 = std::pow(hits - trials * p, 2) / (trials * p * (1 - p));
    CHECK(chi2 < 6.635);  // 1% critical value, one degree of freedom
  }
}

TEST_CASE("serial and parallel link sampling agree") {
  auto pos = scatter(300, 5, 11);
  CHECK(sample_links(pos, SinrModel{1, 2}, 5) == sample_links_serial(pos, SinrModel{1, 2}, 5));
}

TEST_CASE("error injection") {
  std::vector<Point2> base(100000, Point2{0, 0});
  CHECK(inject_error(base, 0.0, 1) == base);
  auto moved = inject_error(base, 1.0, 42);
  double mx = 0, my = 0;
  std::vector<double> r;
  for (Point2 p : moved) {
    mx += p.x;
    my += p.y;
    r.push_back(norm(p));
  }
  const double n = static_cast<double>(moved.size());
  mx /= n;
  my /= n;
  // Each component has variance 1/2 under the signed-radius construction.
  const double se = std::sqrt(0.5 / n);
  CHECK(std::abs(mx) < 3 * se);
  CHECK(std::abs(my) < 3 * se);
  std::sort(r.begin(), r.end());
  double ks = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double f = std::erf(r[i] / std::sqrt(2.0));
    ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  CHECK(ks < 1.628 / std::sqrt(n));
}

TEST_CASE("generate") {
  GenParams p;
  p.L = 1;
  p.n = 5;
  p.model = RandomModel{1.0};
  auto net = generate(p, 3);
  CHECK(net.graph.edge_count() == 10);

  GenParams s;
  s.L = 3;
  s.model = SinrModel{1, 1.4};
  auto a = generate(s, 99);
  auto b = generate(s, 99);
  CHECK(a.true_positions == b.true_positions);
  CHECK(a.graph == b.graph);
  CHECK(a.size() == 36);
  for (int u = 0; u < a.size(); ++u)
    for (int v = u + 1; v < a.size(); ++v) {
      const double d = distance(a.true_positions[u], a.true_positions[v]);
      if (d <= 1) CHECK(a.graph.has_edge(u, v));
      if (d >= 1.4) CHECK_FALSE(a.graph.has_edge(u, v));
    }
  for (Point2 q : a.true_positions) CHECK(s.deployment().contains(q));

  // Changing the error does not move the scatter.
  GenParams e = s;
  e.sigma_err = 0.3;
  auto c = generate(e, 99);
  if (c.discarded == a.discarded) CHECK(c.true_positions == a.true_positions);
  CHECK(c.apparent_positions != c.true_positions);

  GenParams bad;
  bad.L = 3;
  bad.model = RandomModel{0.001};
  bad.max_attempts = 5;
  CHECK_THROWS_AS(generate(bad, 1), ConnectivityExhausted);
}

TEST_CASE("remove long links") {
  LocalizedNetwork net;
  net.true_positions = net.apparent_positions = {{0, 0}, {3, 0}};
  net.graph = CommGraph::from_edges(2, std::vector<NodePair>{{0, 1}});
  CHECK(remove_long_links(net, 2).graph.edge_count() == 0);
  CHECK(remove_long_links(net, INFINITY).graph == net.graph);

  GenParams p;
  p.L = 3;
  p.model = ExponentialModel{1.5};
  p.sigma_err = 0.2;
  auto g = generate(p, 4);
  std::size_t prev = g.graph.edge_count();
  for (double bound : {6.0, 4.0, 3.0, 2.0, 1.0}) {
    const std::size_t m = remove_long_links(g, bound).graph.edge_count();
    CHECK(m <= prev);
    prev = m;
  }
}

TEST_CASE("network file round trip") {
  GenParams p;
  p.L = 2;
  p.model = SinrModel{1, 2};
  p.sigma_err = 0.1;
  p.max_apparent_range = 2.5;
  auto net = generate(p, 7);
  std::stringstream ss;
  save_network(ss, net);
  auto back = load_network(ss);
  CHECK(back.true_positions == net.true_positions);
  CHECK(back.apparent_positions == net.apparent_positions);
  CHECK(back.graph == net.graph);
  CHECK(back.seed == 7);
  CHECK(*back.params.max_apparent_range == 2.5);

  std::istringstream bad("geoecc-net v1\nparams L=1 n=1 model=sinr r=1 R=2\nnode 0 0 0 0 x\n");
  try {
    load_network(bad);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  std::istringstream nohdr("hello\n");
  CHECK_THROWS_AS(load_network(nohdr), ParseError);
}
