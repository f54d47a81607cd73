#include "doctest.h"
#include "fixtures.hpp"
#include "geoecc/canonical.hpp"
#include "geoecc/eccentricity.hpp"
#include "geoecc/errors.hpp"

using namespace geoecc;

TEST_CASE("three collinear nodes, k = 2") {
  auto sim = CanonicalSimulation::build(fixtures::three_collinear(), 2);
  for (int u = 0; u < 3; ++u) CHECK(sim.zone(u) == std::vector<NodeId>{0, 1, 2});
  CHECK(sim.forbidden().empty());
  CHECK(sim.handover_target(0, {0.5, 0}, {1, 0}) == 1);
  CHECK(sim.handover_target(1, {0.5, 0}, {-1, 0}) == 0);
}

TEST_CASE("three collinear nodes, k = 1") {
  auto sim = CanonicalSimulation::build(fixtures::three_collinear(), 1);
  CHECK(sim.forbidden() == std::vector<NodePair>{{0, 1}});
  CHECK(sim.zone(0) == std::vector<NodeId>{0, 2});
  CHECK(sim.zone_contains(0, {0, 0}));
  CHECK(sim.zone_contains(0, {0.2, 0.3}));
  CHECK_FALSE(sim.zone_contains(0, {0.5, 0}));  // on the forbidden boundary
  CHECK_FALSE(sim.zone_contains(0, {0.9, 0}));  // interior of a non-neighbour's cell
  CHECK(sim.zone_contains(0, {1.5, 0}));        // boundary of cells 1 and 2, 2 is a neighbour
  CHECK_THROWS_AS(sim.handover_target(0, {0.5, 0}, {1, 0}), HandoverStuck);
  CHECK_THROWS_AS(sim.handover_target(0, {0.5, 0}, {-1, 0}), PreconditionViolated);
  CHECK(sim.geocast_target(0, {0, 0}) == 0);
  CHECK(sim.geocast_target(0, {1.8, 0.1}) == 2);
  CHECK(sim.geocast_target(2, {1.5, 0.3}) == 1);  // bisector of 1 and 2: smallest id
  CHECK_THROWS_AS(sim.geocast_target(0, {0.9, 0}), GeocastViolation);
}

TEST_CASE("k equal to the diameter gives the whole box") {
  auto net = fixtures::three_collinear();
  auto sim = CanonicalSimulation::build(net, 2);
  for (int u = 0; u < 3; ++u) CHECK(sim.zone(u).size() == 3);
  CHECK(sim.forbidden().empty());
}

TEST_CASE("build errors") {
  auto net = fixtures::hand_net({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}}, 0.5);
  CHECK_THROWS_AS(CanonicalSimulation::build(net, 1), Disconnected);
  CHECK_THROWS_AS(CanonicalSimulation::build(fixtures::three_collinear(), 0), std::invalid_argument);
}
