#pragma once

#include <vector>

#include "geoecc/canonical.hpp"

namespace geoecc {

/// Boundary of the simulated space as a planar graph: forbidden cell
/// boundaries plus the bounding box. Half-edges come in twin pairs
/// (h ^ 1); the free space of a usable half-edge lies on its left.
class WallGraph {
 public:
  struct Half {
    int from = -1;
    int to = -1;
    NodeId left_cell = kNoNode;  // owner of the cell on the left, kNoNode along the box
    bool usable = true;          // false for the outward side of box edges
    NodePair sites{};            // forbidden pair, {-1,-1} for box edges
  };

  explicit WallGraph(const CanonicalSimulation& sim);

  const std::vector<Point2>& vertices() const { return verts_; }
  const Half& half(int h) const { return halves_[h]; }
  int half_count() const { return static_cast<int>(halves_.size()); }
  static int twin(int h) { return h ^ 1; }
  /// Next half-edge when walking with the wall on the right.
  int next(int h) const { return next_[h]; }
  int prev(int h) const { return prev_[h]; }
  Point2 tail(int h) const { return verts_[halves_[h].from]; }
  Point2 head(int h) const { return verts_[halves_[h].to]; }
  double length(int h) const { return distance(tail(h), head(h)); }
  Point2 unit(int h) const;
  double angle(int h) const;
  double total_length() const { return total_length_; }
  double tol() const { return tol_; }
  /// Outgoing half-edges at a vertex, by increasing angle.
  const std::vector<int>& outgoing(int v) const { return out_[v]; }

 private:
  int vertex_at(Point2 p);
  void add_wall(Point2 a, Point2 b, NodeId left, NodeId right, bool box, NodePair sites);

  std::vector<Point2> verts_;
  std::vector<Half> halves_;
  std::vector<int> next_, prev_;
  std::vector<std::vector<int>> out_;
  double total_length_ = 0.0;
  double tol_ = 0.0;
};

}  // namespace geoecc
