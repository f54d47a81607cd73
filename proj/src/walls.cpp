#include "geoecc/walls.hpp"

#include <algorithm>
#include <cmath>

namespace geoecc {

namespace {

// Position of p along the box boundary, counterclockwise from min corner.
double box_param(const BoundingBox& b, Point2 p, double tol) {
  const double w = b.width(), h = b.height();
  if (std::abs(p.y - b.min.y) <= tol) return p.x - b.min.x;
  if (std::abs(p.x - b.max.x) <= tol) return w + (p.y - b.min.y);
  if (std::abs(p.y - b.max.y) <= tol) return w + h + (b.max.x - p.x);
  return 2 * w + h + (b.max.y - p.y);
}

bool on_box_boundary(const BoundingBox& b, Point2 p, double tol) {
  return std::abs(p.x - b.min.x) <= tol || std::abs(p.x - b.max.x) <= tol || std::abs(p.y - b.min.y) <= tol ||
         std::abs(p.y - b.max.y) <= tol;
}

}  // namespace

int WallGraph::vertex_at(Point2 p) {
  for (std::size_t i = 0; i < verts_.size(); ++i)
    if (distance(verts_[i], p) <= tol_) return static_cast<int>(i);
  verts_.push_back(p);
  out_.emplace_back();
  return static_cast<int>(verts_.size()) - 1;
}

void WallGraph::add_wall(Point2 a, Point2 b, NodeId left, NodeId right, bool box, NodePair sites) {
  const int va = vertex_at(a), vb = vertex_at(b);
  if (va == vb) return;
  halves_.push_back({va, vb, left, true, sites});
  halves_.push_back({vb, va, right, !box, sites});
  total_length_ += distance(verts_[va], verts_[vb]);
}

Point2 WallGraph::unit(int h) const {
  const Point2 d = head(h) - tail(h);
  return (1.0 / norm(d)) * d;
}

double WallGraph::angle(int h) const {
  const Point2 d = head(h) - tail(h);
  return std::atan2(d.y, d.x);
}

WallGraph::WallGraph(const CanonicalSimulation& sim) {
  const PlanarSubdivision& sub = sim.sub();
  const BoundingBox box = sub.box();
  tol_ = 1e-9 * box.diagonal();

  std::vector<Point2> box_stops = {box.min, {box.max.x, box.min.y}, box.max, {box.min.x, box.max.y}};
  for (const NodePair& f : sim.forbidden()) {
    const VoronoiCell& c = sub.cell(f.first);
    const std::size_t k = c.vertices.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (c.across[i] != f.second) continue;
      const Point2 a = c.vertices[i], b = c.vertices[(i + 1) % k];
      if (distance(a, b) <= tol_) continue;
      // Cells are counterclockwise, so the cell of f.first is on the left.
      add_wall(a, b, f.first, f.second, false, f);
      for (Point2 p : {a, b})
        if (on_box_boundary(box, p, tol_)) box_stops.push_back(p);
    }
  }
  std::sort(box_stops.begin(), box_stops.end(),
            [&](Point2 l, Point2 r) { return box_param(box, l, tol_) < box_param(box, r, tol_); });
  for (std::size_t i = 0; i < box_stops.size(); ++i) {
    const Point2 a = box_stops[i], b = box_stops[(i + 1) % box_stops.size()];
    if (distance(a, b) > tol_) add_wall(a, b, kNoNode, kNoNode, true, NodePair{kNoNode, kNoNode});
  }

  for (int h = 0; h < half_count(); ++h) out_[halves_[h].from].push_back(h);
  for (auto& o : out_) std::sort(o.begin(), o.end(), [&](int l, int r) { return angle(l) < angle(r); });
  next_.assign(halves_.size(), -1);
  prev_.assign(halves_.size(), -1);
  for (int h = 0; h < half_count(); ++h) {
    const int t = twin(h);
    const auto& o = out_[halves_[h].to];
    const auto it = std::find(o.begin(), o.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - o.begin());
    const int n = o[(i + o.size() - 1) % o.size()];
    next_[h] = n;
    prev_[n] = h;
  }
}

}  // namespace geoecc
