#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "geoecc/errors.hpp"
#include "geoecc/types.hpp"

namespace geoecc {

struct Site {
  NodeId id = kNoNode;
  Point2 p;
};

/// Delaunay triangulation of a point set, computed by divide and conquer on
/// a quad-edge structure with exact predicates. Vertices are indices into
/// the input span. Cocircular configurations are triangulated arbitrarily
/// (but deterministically); `is_delaunay_edge` tells which edges are genuine
/// Delaunay-graph edges, i.e. carry a Voronoi edge of positive length.
class Triangulation {
 public:
  /// Throws DuplicateSites (with input indices) if two points coincide.
  explicit Triangulation(std::span<const Point2> points);

  std::size_t size() const { return neighbors_.size(); }
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  /// Undirected triangulation edges (i < j), sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool is_delaunay_edge(int i, int j) const;

 private:
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<bool> genuine_;  // parallel to edges_
};

/// Convex Voronoi cell, counterclockwise. Edge i runs from vertices[i] to
/// vertices[(i + 1) % n] and separates the cell from `across[i]`
/// (kNoNode for the bounding box).
struct VoronoiCell {
  std::vector<Point2> vertices;
  std::vector<NodeId> across;
};

/// One maximal stretch of a segment over which the set of nearest sites is
/// constant. Owners are sorted by id; more than one owner means the segment
/// runs along a cell boundary.
struct TracePiece {
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<NodeId> owners;
};

/// Breakpoint between consecutive pieces: every site nearest at that point.
struct TraceEvent {
  double t = 0.0;
  std::vector<NodeId> tied;
};

struct SegmentTrace {
  std::vector<NodeId> start_owners;
  std::vector<TracePiece> pieces;
  std::vector<TraceEvent> events;  // events[i] separates pieces[i] and pieces[i+1]
  std::vector<NodeId> end_owners;
};

/// Delaunay triangulation plus Voronoi cells clipped to a bounding box.
class PlanarSubdivision {
 public:
  /// Throws DuplicateSites, SiteOutsideBox, or std::invalid_argument for an
  /// empty site list or a degenerate box.
  static PlanarSubdivision build(std::vector<Site> sites, BoundingBox box);

  const std::vector<Site>& sites() const { return sites_; }
  const BoundingBox& box() const { return box_; }
  std::size_t size() const { return sites_.size(); }

  /// Pairs carrying a Voronoi edge of positive length in the unclipped diagram.
  const std::vector<NodePair>& delaunay_edges() const { return delaunay_edges_; }
  /// Pairs whose clipped cells share a boundary of positive length.
  const std::vector<NodePair>& adjacent_pairs() const { return adjacent_pairs_; }

  bool is_delaunay_edge(NodeId a, NodeId b) const;
  bool adjacent(NodeId a, NodeId b) const;
  bool contains_site(NodeId id) const { return index_of(id).has_value(); }

  const VoronoiCell& cell(NodeId id) const;
  Point2 position(NodeId id) const;
  std::optional<int> index_of(NodeId id) const;
  NodeId id_at(int index) const { return sites_[index].id; }
  const Triangulation& triangulation() const { return tri_; }
  /// Cells sharing a positive-length boundary with `id`, sorted.
  const std::vector<NodeId>& cell_neighbors(NodeId id) const;

  /// All sites nearest to p (the owners of the closed cells containing p),
  /// sorted by id. Exact.
  std::vector<NodeId> owners(Point2 p) const;

  /// Lower-envelope walk along the segment. Exact combinatorics; the t
  /// values are rounded.
  SegmentTrace trace(Segment seg) const;

  /// Ordered owners of the cells met by the segment (see README for the
  /// tie convention at Voronoi vertices). Throws OutsideBox.
  std::vector<NodeId> cells_traversed(Segment seg) const;

  /// Trace of the segment from site `u` to `end`; cheaper than `trace`
  /// because the start owner is known.
  SegmentTrace trace_from_site(NodeId u, Point2 end) const;

 private:
  int locate_index(Point2 p, int hint) const;
  std::vector<int> owner_indices(Point2 p, int hint) const;
  SegmentTrace trace_from(Segment seg, std::vector<int> start) const;

  std::vector<Site> sites_;
  BoundingBox box_;
  Triangulation tri_;
  std::vector<std::pair<NodeId, int>> id_index_;  // sorted by id
  std::vector<VoronoiCell> cells_;
  std::vector<std::vector<NodeId>> cell_neighbors_;
  std::vector<NodePair> delaunay_edges_;
  std::vector<NodePair> adjacent_pairs_;

  PlanarSubdivision(std::vector<Site> sites, BoundingBox box, Triangulation tri);
};

/// Flattens a trace into the ordered list of traversed cells. At every
/// breakpoint the cells owning the stretch before come first, then the
/// remaining tied cells by id, then the cells owning the stretch after;
/// consecutive duplicates are removed.
std::vector<NodeId> flatten_trace(const SegmentTrace& trace);

/// True iff the open segments meet in a single interior point of both, or
/// overlap collinearly with positive length. Shared endpoints do not count.
bool segments_cross(const Segment& s1, const Segment& s2);

struct GabrielViolation {
  NodePair edge;
  NodeId witness = kNoNode;
  friend bool operator==(const GabrielViolation&, const GabrielViolation&) = default;
};

/// Every (edge, w) with w strictly inside the disc of diameter [p_u, p_v].
std::vector<GabrielViolation> gabriel_violations(std::span<const Site> sites,
                                                 std::span<const NodePair> edges);

/// Mean distance from each point to its nearest other point (needs >= 2).
double mean_nn_spacing(std::span<const Point2> positions);

/// Clip-window default: positions' bounding box inflated by twice the mean
/// nearest-neighbour spacing (1.0 when there is a single site).
BoundingBox default_clip_box(std::span<const Point2> positions, double margin_factor = 2.0);

}  // namespace geoecc
