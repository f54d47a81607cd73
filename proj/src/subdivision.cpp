#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geoecc/geometry.hpp"
#include "geoecc/predicates.hpp"

namespace geoecc {
namespace {

using predicates::compare_distance;
using predicates::orient2d;
using predicates::SegmentPencil;

// Clips a convex polygon to the half-plane closer to `s` than to `t`.
void clip_bisector(VoronoiCell& cell, Point2 s, Point2 t, NodeId t_id) {
  const Point2 m = 0.5 * (s + t);
  const Point2 n = t - s;
  auto f = [&](Point2 x) { return dot(x - m, n); };
  const std::size_t k = cell.vertices.size();
  VoronoiCell out;
  for (std::size_t i = 0; i < k; ++i) {
    const Point2 p = cell.vertices[i], q = cell.vertices[(i + 1) % k];
    const NodeId tag = cell.across[i];
    const double fp = f(p), fq = f(q);
    if (fp <= 0) {
      out.vertices.push_back(p);
      out.across.push_back(tag);
      if (fq > 0) {
        out.vertices.push_back(lerp(p, q, fp / (fp - fq)));
        out.across.push_back(t_id);
      }
    } else if (fq <= 0) {
      out.vertices.push_back(lerp(p, q, fp / (fp - fq)));
      out.across.push_back(tag);
    }
  }
  // Drop zero-length edges; the surviving vertex keeps the outgoing tag.
  VoronoiCell clean;
  const std::size_t m2 = out.vertices.size();
  for (std::size_t i = 0; i < m2; ++i) {
    if (out.vertices[i] == out.vertices[(i + 1) % m2] && m2 > 1) continue;
    clean.vertices.push_back(out.vertices[i]);
    clean.across.push_back(out.across[i]);
  }
  cell = std::move(clean);
}

double shared_length(const VoronoiCell& cell, NodeId other) {
  double len = 0.0;
  const std::size_t k = cell.vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (cell.across[i] == other) len += distance(cell.vertices[i], cell.vertices[(i + 1) % k]);
  }
  return len;
}

std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool has(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::vector<Point2> positions_of(const std::vector<Site>& sites) {
  std::vector<Point2> pts;
  pts.reserve(sites.size());
  for (const auto& s : sites) pts.push_back(s.p);
  return pts;
}

Triangulation triangulate(const std::vector<Site>& sites) {
  const auto pts = positions_of(sites);
  try {
    return Triangulation(pts);
  } catch (const DuplicateSites& e) {
    throw DuplicateSites(std::min(sites[e.ids[0]].id, sites[e.ids[1]].id),
                         std::max(sites[e.ids[0]].id, sites[e.ids[1]].id));
  }
}

}  // namespace

PlanarSubdivision::PlanarSubdivision(std::vector<Site> sites, BoundingBox box, Triangulation tri)
    : sites_(std::move(sites)), box_(box), tri_(std::move(tri)) {}

PlanarSubdivision PlanarSubdivision::build(std::vector<Site> sites, BoundingBox box) {
  if (sites.empty()) throw std::invalid_argument("no sites");
  if (!is_finite(box.min) || !is_finite(box.max) || !(box.width() > 0) || !(box.height() > 0)) {
    throw std::invalid_argument("degenerate bounding box");
  }
  {
    std::vector<NodeId> ids;
    for (const auto& s : sites) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      throw std::invalid_argument("repeated site id");
    }
    NodeId outside = kNoNode;
    for (const auto& s : sites) {
      if (!is_finite(s.p) || !box.contains(s.p)) {
        if (outside == kNoNode || s.id < outside) outside = s.id;
      }
    }
    if (outside != kNoNode) throw SiteOutsideBox(outside);
  }

  Triangulation tri = triangulate(sites);
  PlanarSubdivision sub(std::move(sites), box, std::move(tri));
  const int n = static_cast<int>(sub.sites_.size());

  sub.id_index_.reserve(n);
  for (int i = 0; i < n; ++i) sub.id_index_.emplace_back(sub.sites_[i].id, i);
  std::sort(sub.id_index_.begin(), sub.id_index_.end());

  sub.cells_.resize(n);
  for (int i = 0; i < n; ++i) {
    VoronoiCell& c = sub.cells_[i];
    c.vertices = {box.min, {box.max.x, box.min.y}, box.max, {box.min.x, box.max.y}};
    c.across.assign(4, kNoNode);
    for (int j : sub.tri_.neighbors(i)) {
      clip_bisector(c, sub.sites_[i].p, sub.sites_[j].p, sub.sites_[j].id);
    }
  }

  const double tol = 1e-9 * box.diagonal();
  sub.cell_neighbors_.resize(n);
  for (const auto& [i, j] : sub.tri_.edges()) {
    if (!sub.tri_.is_delaunay_edge(i, j)) continue;
    const NodeId a = sub.sites_[i].id, b = sub.sites_[j].id;
    sub.delaunay_edges_.push_back(NodePair::of(a, b));
    const double len = std::max(shared_length(sub.cells_[i], b), shared_length(sub.cells_[j], a));
    if (len > tol) {
      sub.adjacent_pairs_.push_back(NodePair::of(a, b));
      sub.cell_neighbors_[i].push_back(b);
      sub.cell_neighbors_[j].push_back(a);
    }
  }
  std::sort(sub.delaunay_edges_.begin(), sub.delaunay_edges_.end());
  std::sort(sub.adjacent_pairs_.begin(), sub.adjacent_pairs_.end());
  for (auto& v : sub.cell_neighbors_) std::sort(v.begin(), v.end());
  return sub;
}

std::optional<int> PlanarSubdivision::index_of(NodeId id) const {
  auto it = std::lower_bound(id_index_.begin(), id_index_.end(), std::make_pair(id, -1));
  if (it == id_index_.end() || it->first != id) return std::nullopt;
  return it->second;
}

namespace {
int require(std::optional<int> i, NodeId id) {
  if (!i) throw std::out_of_range("unknown site " + std::to_string(id));
  return *i;
}
}  // namespace

const VoronoiCell& PlanarSubdivision::cell(NodeId id) const { return cells_[require(index_of(id), id)]; }
Point2 PlanarSubdivision::position(NodeId id) const { return sites_[require(index_of(id), id)].p; }
const std::vector<NodeId>& PlanarSubdivision::cell_neighbors(NodeId id) const {
  return cell_neighbors_[require(index_of(id), id)];
}

bool PlanarSubdivision::is_delaunay_edge(NodeId a, NodeId b) const {
  return std::binary_search(delaunay_edges_.begin(), delaunay_edges_.end(), NodePair::of(a, b));
}

bool PlanarSubdivision::adjacent(NodeId a, NodeId b) const {
  return std::binary_search(adjacent_pairs_.begin(), adjacent_pairs_.end(), NodePair::of(a, b));
}

int PlanarSubdivision::locate_index(Point2 p, int hint) const {
  int cur = hint;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int nb : tri_.neighbors(cur)) {
      if (compare_distance(p, sites_[nb].p, sites_[cur].p) < 0) {
        cur = nb;
        moved = true;
        break;
      }
    }
  }
  return cur;
}

std::vector<int> PlanarSubdivision::owner_indices(Point2 p, int hint) const {
  const int first = locate_index(p, hint);
  std::vector<int> tied{first};
  std::vector<int> seen{first};
  for (std::size_t k = 0; k < tied.size(); ++k) {
    for (int nb : tri_.neighbors(tied[k])) {
      if (has(seen, nb)) continue;
      seen.push_back(nb);
      if (compare_distance(p, sites_[nb].p, sites_[first].p) == 0) tied.push_back(nb);
    }
  }
  return tied;
}

std::vector<NodeId> PlanarSubdivision::owners(Point2 p) const {
  std::vector<NodeId> ids;
  for (int i : owner_indices(p, 0)) ids.push_back(sites_[i].id);
  return sorted_unique(std::move(ids));
}

SegmentTrace PlanarSubdivision::trace(Segment seg) const {
  if (!box_.contains(seg.a) || !box_.contains(seg.b)) throw OutsideBox();
  return trace_from(seg, owner_indices(seg.a, 0));
}

SegmentTrace PlanarSubdivision::trace_from_site(NodeId u, Point2 end) const {
  const int i = require(index_of(u), u);
  if (!box_.contains(end)) throw OutsideBox();
  return trace_from({sites_[i].p, end}, {i});
}

SegmentTrace PlanarSubdivision::trace_from(Segment seg, std::vector<int> start) const {
  auto ids = [&](const std::vector<int>& idx) {
    std::vector<NodeId> out;
    for (int i : idx) out.push_back(sites_[i].id);
    return sorted_unique(std::move(out));
  };
  SegmentTrace tr;
  tr.start_owners = ids(start);
  if (seg.a == seg.b) {
    tr.pieces.push_back({0.0, 1.0, tr.start_owners});
    tr.end_owners = tr.start_owners;
    return tr;
  }
  const SegmentPencil pen(seg.a, seg.b);
  auto P = [&](int i) { return sites_[i].p; };
  auto steepest = [&](const std::vector<int>& set) {
    int top = set[0];
    for (int x : set) {
      if (pen.compare_slope(P(x), P(top)) > 0) top = x;
    }
    std::vector<int> group;
    for (int x : set) {
      if (pen.compare_slope(P(x), P(top)) == 0) group.push_back(x);
    }
    return group;
  };

  std::vector<int> cur = steepest(start);
  double t = 0.0;
  for (;;) {
    const int c = cur[0];
    int best = -1;
    std::vector<int> seen = cur;
    for (int m : cur) {
      for (int w : tri_.neighbors(m)) {
        if (has(seen, w)) continue;
        seen.push_back(w);
        if (pen.compare_slope(P(w), P(c)) <= 0) continue;
        if (best < 0 || pen.crossing_det(P(c), P(best), P(w)) < 0) best = w;
      }
    }
    if (best < 0 || pen.compare_crossing_to(P(c), P(best), 1) >= 0) {
      tr.pieces.push_back({t, 1.0, ids(cur)});
      break;
    }
    const double tc = std::clamp(pen.crossing_time(P(c), P(best)), t, 1.0);
    std::vector<int> tied = cur;
    tied.push_back(best);
    std::vector<int> visited = tied;
    for (std::size_t k = 0; k < tied.size(); ++k) {
      for (int y : tri_.neighbors(tied[k])) {
        if (has(visited, y)) continue;
        visited.push_back(y);
        if (pen.crossing_det(P(c), P(best), P(y)) == 0) tied.push_back(y);
      }
    }
    tr.pieces.push_back({t, tc, ids(cur)});
    tr.events.push_back({tc, ids(tied)});
    cur = steepest(tied);
    t = tc;
  }
  tr.end_owners = ids(owner_indices(seg.b, cur[0]));
  return tr;
}

std::vector<NodeId> flatten_trace(const SegmentTrace& tr) {
  std::vector<NodeId> out;
  auto emit = [&](NodeId x) {
    if (out.empty() || out.back() != x) out.push_back(x);
  };
  auto contains = [](const std::vector<NodeId>& v, NodeId x) { return std::find(v.begin(), v.end(), x) != v.end(); };
  auto breakpoint = [&](const std::vector<NodeId>* before, const std::vector<NodeId>& tied,
                        const std::vector<NodeId>* after) {
    // `before` was emitted as the previous `after`.
    for (NodeId x : tied) {
      if ((before && contains(*before, x)) || (after && contains(*after, x))) continue;
      emit(x);
    }
    if (after) for (NodeId x : *after) emit(x);
  };
  if (tr.pieces.empty()) return tr.start_owners;
  breakpoint(nullptr, tr.start_owners, &tr.pieces.front().owners);
  for (std::size_t i = 0; i < tr.events.size(); ++i) {
    breakpoint(&tr.pieces[i].owners, tr.events[i].tied, &tr.pieces[i + 1].owners);
  }
  breakpoint(&tr.pieces.back().owners, tr.end_owners, nullptr);
  return out;
}

std::vector<NodeId> PlanarSubdivision::cells_traversed(Segment seg) const { return flatten_trace(trace(seg)); }

bool segments_cross(const Segment& s1, const Segment& s2) {
  const Point2 a = s1.a, b = s1.b, c = s2.a, d = s2.b;
  if (a == b || c == d) return false;
  const int o1 = orient2d(a, b, c), o2 = orient2d(a, b, d);
  const int o3 = orient2d(c, d, a), o4 = orient2d(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 != 0 || o2 != 0) return false;
  // Collinear: compare along the dominant axis.
  const bool use_x = a.x != b.x;
  auto key = [use_x](Point2 p) { return use_x ? p.x : p.y; };
  const double lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
  const double lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
  return std::min(hi1, hi2) > std::max(lo1, lo2);
}

std::vector<GabrielViolation> gabriel_violations(std::span<const Site> sites, std::span<const NodePair> edges) {
  std::vector<std::pair<NodeId, Point2>> by_id;
  for (const auto& s : sites) by_id.emplace_back(s.id, s.p);
  std::sort(by_id.begin(), by_id.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  auto pos = [&](NodeId id) {
    auto it = std::lower_bound(by_id.begin(), by_id.end(), id,
                               [](const auto& e, NodeId v) { return e.first < v; });
    if (it == by_id.end() || it->first != id) throw std::out_of_range("unknown site " + std::to_string(id));
    return it->second;
  };
  std::vector<GabrielViolation> out;
  for (const NodePair& e : edges) {
    const Point2 u = pos(e.first), v = pos(e.second);
    for (const auto& [id, w] : by_id) {
      if (id == e.first || id == e.second) continue;
      if (predicates::diametral(u, v, w) < 0) out.push_back({e, id});
    }
  }
  return out;
}

double mean_nn_spacing(std::span<const Point2> positions) {
  if (positions.size() < 2) throw std::invalid_argument("need at least two positions");
  Triangulation tri(positions);
  double total = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    double best = INFINITY;
    for (int j : tri.neighbors(static_cast<int>(i))) best = std::min(best, distance(positions[i], positions[j]));
    total += best;
  }
  return total / static_cast<double>(positions.size());
}

BoundingBox default_clip_box(std::span<const Point2> positions, double margin_factor) {
  if (positions.empty()) throw std::invalid_argument("no positions");
  BoundingBox bb{positions[0], positions[0]};
  for (Point2 p : positions) {
    bb.min.x = std::min(bb.min.x, p.x);
    bb.min.y = std::min(bb.min.y, p.y);
    bb.max.x = std::max(bb.max.x, p.x);
    bb.max.y = std::max(bb.max.y, p.y);
  }
  if (positions.size() == 1) return bb.inflated(1.0);
  return bb.inflated(margin_factor * mean_nn_spacing(positions));
}

}  // namespace geoecc
