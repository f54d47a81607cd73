#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "geoecc/geometry.hpp"
#include "geoecc/predicates.hpp"

namespace geoecc {
namespace {

using predicates::incircle;
using predicates::orient2d;

// Quad-edge store. Edge e = 4*q + r; r = 0, 2 are the primal directions,
// r = 1, 3 the dual ones. Only primal origins are stored.
class QuadEdges {
 public:
  explicit QuadEdges(std::span<const Point2> pts) : pts_(pts) {}

  static int rot(int e) { return (e & ~3) | ((e + 1) & 3); }
  static int sym(int e) { return e ^ 2; }
  static int invrot(int e) { return (e & ~3) | ((e + 3) & 3); }

  int onext(int e) const { return next_[e]; }
  int oprev(int e) const { return rot(onext(rot(e))); }
  int lnext(int e) const { return rot(onext(invrot(e))); }
  int rprev(int e) const { return onext(sym(e)); }
  int org(int e) const { return org_[e]; }
  int dest(int e) const { return org_[sym(e)]; }
  Point2 p(int v) const { return pts_[v]; }

  int make_edge(int a, int b) {
    const int e = static_cast<int>(next_.size());
    next_.insert(next_.end(), {e, e + 3, e + 2, e + 1});
    org_.insert(org_.end(), {a, -1, b, -1});
    alive_.push_back(true);
    return e;
  }

  void splice(int a, int b) {
    const int alpha = rot(onext(a));
    const int beta = rot(onext(b));
    std::swap(next_[a], next_[b]);
    std::swap(next_[alpha], next_[beta]);
  }

  int connect(int a, int b) {
    const int e = make_edge(dest(a), org(b));
    splice(e, lnext(a));
    splice(sym(e), b);
    return e;
  }

  void remove(int e) {
    splice(e, oprev(e));
    splice(sym(e), oprev(sym(e)));
    alive_[e >> 2] = false;
  }

  bool alive(int quad) const { return alive_[quad]; }
  int quads() const { return static_cast<int>(alive_.size()); }

  bool left_of(int v, int e) const { return orient2d(p(v), p(org(e)), p(dest(e))) > 0; }
  bool right_of(int v, int e) const { return orient2d(p(v), p(dest(e)), p(org(e))) > 0; }

 private:
  std::span<const Point2> pts_;
  std::vector<int> next_;
  std::vector<int> org_;
  std::vector<bool> alive_;
};

struct Builder {
  QuadEdges& q;
  const std::vector<int>& order;

  // Returns the counterclockwise hull edge out of the leftmost vertex and
  // the clockwise hull edge out of the rightmost vertex.
  std::pair<int, int> run(int lo, int hi) {
    const int n = hi - lo;
    if (n == 2) {
      const int a = q.make_edge(order[lo], order[lo + 1]);
      return {a, QuadEdges::sym(a)};
    }
    if (n == 3) {
      const int s1 = order[lo], s2 = order[lo + 1], s3 = order[lo + 2];
      const int a = q.make_edge(s1, s2);
      const int b = q.make_edge(s2, s3);
      q.splice(QuadEdges::sym(a), b);
      const int o = orient2d(q.p(s1), q.p(s2), q.p(s3));
      if (o > 0) {
        q.connect(b, a);
        return {a, QuadEdges::sym(b)};
      }
      if (o < 0) {
        const int c = q.connect(b, a);
        return {QuadEdges::sym(c), c};
      }
      return {a, QuadEdges::sym(b)};
    }
    const int mid = lo + n / 2;
    auto [ldo, ldi] = run(lo, mid);
    auto [rdi, rdo] = run(mid, hi);
    for (;;) {
      if (q.left_of(q.org(rdi), ldi)) {
        ldi = q.lnext(ldi);
      } else if (q.right_of(q.org(ldi), rdi)) {
        rdi = q.rprev(rdi);
      } else {
        break;
      }
    }
    int basel = q.connect(QuadEdges::sym(rdi), ldi);
    if (q.org(ldi) == q.org(ldo)) ldo = QuadEdges::sym(basel);
    if (q.org(rdi) == q.org(rdo)) rdo = basel;
    auto valid = [&](int e) { return q.right_of(q.dest(e), basel); };
    for (;;) {
      int lcand = q.onext(QuadEdges::sym(basel));
      if (valid(lcand)) {
        while (incircle(q.p(q.dest(basel)), q.p(q.org(basel)), q.p(q.dest(lcand)),
                        q.p(q.dest(q.onext(lcand)))) > 0) {
          const int t = q.onext(lcand);
          q.remove(lcand);
          lcand = t;
        }
      }
      int rcand = q.oprev(basel);
      if (valid(rcand)) {
        while (incircle(q.p(q.dest(basel)), q.p(q.org(basel)), q.p(q.dest(rcand)),
                        q.p(q.dest(q.oprev(rcand)))) > 0) {
          const int t = q.oprev(rcand);
          q.remove(rcand);
          rcand = t;
        }
      }
      const bool lv = valid(lcand), rv = valid(rcand);
      if (!lv && !rv) break;
      if (!lv || (rv && incircle(q.p(q.dest(lcand)), q.p(q.org(lcand)), q.p(q.org(rcand)),
                                 q.p(q.dest(rcand))) > 0)) {
        basel = q.connect(rcand, QuadEdges::sym(basel));
      } else {
        basel = q.connect(QuadEdges::sym(basel), QuadEdges::sym(lcand));
      }
    }
    return {ldo, rdo};
  }
};

}  // namespace

Triangulation::Triangulation(std::span<const Point2> points) : neighbors_(points.size()) {
  const int n = static_cast<int>(points.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    if (points[a].y != points[b].y) return points[a].y < points[b].y;
    return a < b;
  });
  for (int i = 1; i < n; ++i) {
    if (points[order[i]] == points[order[i - 1]]) {
      throw DuplicateSites(std::min(order[i], order[i - 1]), std::max(order[i], order[i - 1]));
    }
  }
  if (n < 2) return;

  QuadEdges q(points);
  Builder{q, order}.run(0, n);

  // Third vertex of the triangle left of each directed edge, if any.
  std::unordered_map<long long, int> left_apex;
  auto key = [n](int a, int b) { return static_cast<long long>(a) * n + b; };
  for (int quad = 0; quad < q.quads(); ++quad) {
    if (!q.alive(quad)) continue;
    for (int e : {4 * quad, 4 * quad + 2}) {
      const int a = q.org(e), b = q.dest(e);
      if (a < b) edges_.emplace_back(a, b);
      const int f = q.lnext(e);
      const int g = q.lnext(f);
      if (q.lnext(g) != e) continue;
      const int c = q.dest(f);
      if (orient2d(points[a], points[b], points[c]) <= 0) continue;
      left_apex[key(a, b)] = c;
      if (a < b && a < c) triangles_.push_back({a, b, c});
    }
  }
  std::sort(edges_.begin(), edges_.end());
  std::sort(triangles_.begin(), triangles_.end());
  genuine_.assign(edges_.size(), true);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto [a, b] = edges_[i];
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
    auto l = left_apex.find(key(a, b));
    auto r = left_apex.find(key(b, a));
    if (l != left_apex.end() && r != left_apex.end() &&
        incircle(points[a], points[b], points[l->second], points[r->second]) == 0) {
      genuine_[i] = false;
    }
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

bool Triangulation::is_delaunay_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(i, j));
  return it != edges_.end() && *it == std::make_pair(i, j) && genuine_[it - edges_.begin()];
}

}  // namespace geoecc
