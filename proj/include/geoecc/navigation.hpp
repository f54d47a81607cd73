#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geoecc/canonical.hpp"
#include "geoecc/walls.hpp"

namespace geoecc {

enum class NavStatus { Arrived, ZoneBoundary, Dead };
std::string to_string(NavStatus s);

/// Where a message sits relative to the walls of S. On an edge, `half` has
/// the message's side on its left and `lambda` is the distance from its
/// tail. At a corner, `half` is the half-edge arriving at the vertex; the
/// free wedge lies between it and its successor. Turning around the vertex
/// crosses the cells of the wedge one after the other, listed from the
/// arriving half-edge to its successor.
struct Contact {
  enum class Kind { Free, Edge, Corner };
  Kind kind = Kind::Free;
  int half = -1;
  double lambda = 0.0;
  int swept = 0;  // at a corner, index of the wedge cell holding the message
};

struct NavState {
  std::optional<double> d_o;
  Contact contact;
};

struct NavOutput {
  Point2 p_next;
  std::optional<Point2> dir;
  NavStatus status = NavStatus::Dead;
  NodeId next_cell = kNoNode;  // cell entered when leaving the zone
  NavState aux;
  std::vector<Point2> path;  // trajectory corners passed during the step, ending at p_next
};

/// Navigation context: the canonical simulation plus its wall graph.
class Navigator {
 public:
  explicit Navigator(const CanonicalSimulation& sim);

  const CanonicalSimulation& sim() const { return *sim_; }
  const WallGraph& walls() const { return walls_; }

  /// Steepest gradient (straight lines and wall stretches). Throws
  /// PreconditionViolated when p is not in the zone of u.
  NavOutput gradient_step(NodeId u, Point2 p, Point2 target) const;
  NavOutput gradient_step(NodeId u, Point2 p, Point2 target, const Contact& contact) const;
  /// Gradient with right-hand perimeter walks. Throws PerimeterLoop.
  NavOutput gradient_perimeter_step(NodeId u, Point2 p, Point2 target, std::optional<double> d_o) const;
  NavOutput gradient_perimeter_step(NodeId u, Point2 p, Point2 target, const NavState& state) const;

  /// Contact implied by a position given with no history.
  Contact locate(Point2 p) const;

 private:
  struct Motion;
  NavOutput gradient_from(NodeId u, Point2 p, Point2 target, Contact c, std::vector<Point2>& path) const;

  const CanonicalSimulation* sim_;
  WallGraph walls_;
  struct WedgeCell {
    NodeId cell;
    double lo, hi;  // angular extent, counterclockwise from next(h)
  };
  std::vector<std::vector<WedgeCell>> wedges_;  // cells met turning from h to next(h)
};

enum class Engine { Gradient, GradientPerimeter };
enum class Outcome { Delivered, DeadEnd, HopCapExceeded };
std::string to_string(Outcome o);

struct RouteHop {
  NodeId node;
  Point2 at;
  NavStatus via;
};

struct RouteTrace {
  std::vector<NodeId> hops;
  std::vector<Point2> trajectory;
  std::vector<RouteHop> log;
  int handovers = 0;
  Outcome outcome = Outcome::DeadEnd;
  Point2 dead_end{};
  int hop_count = 0;
  double stretch = 0.0;
};

/// Generic geographic routing loop over H = G^k. hop_cap defaults to 10 n.
RouteTrace route(const Navigator& nav, Engine engine, NodeId source, NodeId dest, int hop_cap = -1);
RouteTrace route(const CanonicalSimulation& sim, Engine engine, NodeId source, NodeId dest, int hop_cap = -1);

/// One line per hop: `hop <node> at (<x>,<y>) via <status>`.
void write_trace(std::ostream& out, const RouteTrace& trace);

}  // namespace geoecc
