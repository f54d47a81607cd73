#include "geoecc/navigation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "geoecc/errors.hpp"

namespace geoecc {

namespace {

constexpr double kAngleTol = 1e-12;
constexpr double kCloser = 1e-12;  // relative margin for "strictly closer"
constexpr int kStepLimit = 100000;

double wrap(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0 ? a + two_pi : a;
}

Point2 unit_of(Point2 d) { return (1.0 / norm(d)) * d; }

}  // namespace

std::string to_string(NavStatus s) {
  switch (s) {
    case NavStatus::Arrived: return "Arrived";
    case NavStatus::ZoneBoundary: return "ZoneBoundary";
    case NavStatus::Dead: return "Dead";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Delivered: return "Delivered";
    case Outcome::DeadEnd: return "DeadEnd";
    case Outcome::HopCapExceeded: return "HopCapExceeded";
  }
  return "?";
}

namespace {

// Cells around the head of g inside its free wedge with their angular
// extents, in the order met when turning clockwise from twin(g) to next(g).
template <class Cell>
std::vector<Cell> wedge_cells(const CanonicalSimulation& sim, const WallGraph& W, int g) {
  const PlanarSubdivision& sub = sim.sub();
  const Point2 v = W.head(g);
  const double tol = W.tol();
  std::vector<NodeId> cand = sub.owners(v);
  for (std::size_t i = 0, n = cand.size(); i < n; ++i)
    for (NodeId c : sub.cell_neighbors(cand[i])) cand.push_back(c);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  const int h = W.next(g);
  const double start = W.angle(h);
  const double size = h == WallGraph::twin(g) ? 2.0 * std::numbers::pi : wrap(W.angle(WallGraph::twin(g)) - start);
  std::vector<Cell> found;
  for (NodeId c : cand) {
    const auto& poly = sub.cell(c).vertices;
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (distance(poly[i], v) > tol) continue;
      std::size_t a = (i + 1) % k, b = (i + k - 1) % k;
      while (a != i && distance(poly[a], v) <= tol) a = (a + 1) % k;
      while (b != i && distance(poly[b], v) <= tol) b = (b + k - 1) % k;
      if (a == i || b == i) break;
      const double out = std::atan2((poly[a] - v).y, (poly[a] - v).x);
      const double in = std::atan2((poly[b] - v).y, (poly[b] - v).x);
      const double span = wrap(in - out);
      const double mid = wrap(out + 0.5 * span - start);
      if (mid > 0.0 && mid < size) found.push_back({c, mid - 0.5 * span, mid + 0.5 * span});
      break;
    }
  }
  std::sort(found.begin(), found.end(), [](const Cell& l, const Cell& r) { return l.lo > r.lo; });
  return found;
}

}  // namespace

Navigator::Navigator(const CanonicalSimulation& sim) : sim_(&sim), walls_(sim) {
  wedges_.resize(walls_.half_count());
  for (int g = 0; g < walls_.half_count(); ++g)
    if (walls_.half(g).usable) wedges_[g] = wedge_cells<WedgeCell>(sim, walls_, g);
}

namespace {

struct Exit {
  double t;
  NodeId cell;
};

// First point of a->b leaving the zone of u. With a fixed side cell the
// whole motion is in that cell.
std::optional<Exit> zone_exit(const CanonicalSimulation& sim, NodeId u, Point2 a, Point2 b, NodeId fixed,
                              double tol) {
  if (fixed != kNoNode) {
    if (sim.zone_has_cell(u, fixed)) return std::nullopt;
    return Exit{0.0, fixed};
  }
  const double len = distance(a, b);
  if (len <= tol) return std::nullopt;
  const BoundingBox& box = sim.sub().box();
  auto clamp = [&](Point2 p) {
    return Point2{std::clamp(p.x, box.min.x, box.max.x), std::clamp(p.y, box.min.y, box.max.y)};
  };
  const SegmentTrace tr = sim.sub().trace({clamp(a), clamp(b)});
  for (std::size_t i = 0; i < tr.pieces.size(); ++i) {
    const TracePiece& pc = tr.pieces[i];
    const bool inside = std::any_of(pc.owners.begin(), pc.owners.end(),
                                    [&](NodeId c) { return sim.zone_has_cell(u, c); });
    if (inside) continue;
    if ((pc.t1 - pc.t0) * len <= tol) continue;
    return Exit{pc.t0, pc.owners.front()};
  }
  return std::nullopt;
}

}  // namespace

struct Navigator::Motion {
  const Navigator& nav;
  NodeId u;
  Point2 target;
  std::vector<Point2>& path;

  const WallGraph& W() const { return nav.walls_; }
  double tol() const { return nav.walls_.tol(); }

  // Wedge at the head of g: counterclockwise from next(g) to twin(g).
  bool in_wedge(int g, double theta) const {
    const int h = W().next(g);
    const double start = W().angle(h);
    double size = wrap(W().angle(WallGraph::twin(g)) - start);
    if (h == WallGraph::twin(g)) size = 2.0 * std::numbers::pi;
    const double off = wrap(theta - start);
    return off <= size + kAngleTol || off >= 2.0 * std::numbers::pi - kAngleTol;
  }

  int corner_containing(int v, double theta) const {
    for (int h : W().outgoing(v)) {
      const int g = W().prev(h);
      if (!W().half(h).usable) continue;
      if (in_wedge(g, theta)) return g;
    }
    return W().prev(W().outgoing(v).front());
  }

  Contact normalize(Contact c) const {
    if (c.kind != Contact::Kind::Edge) return c;
    const double len = W().length(c.half);
    if (c.lambda <= tol()) {
      const int g = W().prev(c.half);
      return {Contact::Kind::Corner, g, 0.0, last_cell(g)};
    }
    if (c.lambda >= len - tol()) return {Contact::Kind::Corner, c.half, 0.0};
    return c;
  }

  Point2 at(int h, double lambda) const { return W().tail(h) + lambda * W().unit(h); }

  NodeId side_cell(int h) const { return W().half(h).left_cell; }

  NavOutput finish(NavStatus s, Point2 p, Contact c, std::optional<Point2> dir = std::nullopt,
                   NodeId next_cell = kNoNode) const {
    NavOutput out;
    out.status = s;
    out.p_next = p;
    out.dir = dir;
    out.next_cell = next_cell;
    out.aux.contact = c;
    if (path.empty() || !(path.back() == p)) path.push_back(p);
    return out;
  }

  struct Hit {
    double t = 2.0;
    int wall = -1;
    int vertex = -1;
    Point2 x;
  };

  // Nearest wall met by p -> target, skipping walls touching the contact.
  Hit cast(Point2 p, const Contact& c) const {
    const Point2 d = target - p;
    const double dlen = norm(d);
    Hit best;
    int skip_vertex = -1;
    if (c.kind == Contact::Kind::Corner) skip_vertex = W().half(c.half).to;
    for (int w = 0; w < W().half_count(); w += 2) {
      const auto& hw = W().half(w);
      if (c.kind == Contact::Kind::Edge && (c.half >> 1) == (w >> 1)) continue;
      if (hw.from == skip_vertex || hw.to == skip_vertex) continue;
      const Point2 A = W().tail(w), B = W().head(w);
      Point2 m, n;
      if (hw.sites.first != kNoNode) {
        const Point2 sa = nav.sim_->position(hw.sites.first), sb = nav.sim_->position(hw.sites.second);
        m = 0.5 * (sa + sb);
        n = sb - sa;
      } else {
        m = A;
        n = {-(B - A).y, (B - A).x};
      }
      const double denom = dot(d, n);
      if (std::abs(denom) <= 1e-15 * norm(d) * norm(n)) continue;
      const double t = dot(m - p, n) / denom;
      if (!(t > 1e-14) || t > 1.0 || t >= best.t) continue;
      const Point2 x = p + t * d;
      const double L = distance(A, B);
      const double s = dot(x - A, B - A) / (L * L);
      if (s * L < -tol() || (1.0 - s) * L < -tol()) continue;
      best.t = t;
      best.wall = w;
      best.x = x;
      best.vertex = -1;
      if (distance(x, A) <= tol()) best.vertex = hw.from;
      else if (distance(x, B) <= tol()) best.vertex = hw.to;
    }
    (void)dlen;
    return best;
  }

  int last_cell(int g) const { return std::max(0, static_cast<int>(nav.wedges_[g].size()) - 1); }

  // Wedge cell at the head of g containing direction theta.
  int cell_toward(int g, double theta) const {
    const auto& cells = nav.wedges_[g];
    const double off = wrap(theta - W().angle(W().next(g)));
    int best = 0;
    double gap = 1e300;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
      const double d = off < cells[i].lo ? cells[i].lo - off : off > cells[i].hi ? off - cells[i].hi : 0.0;
      if (d < gap) gap = d, best = i;
    }
    return best;
  }

  // Turn around the corner to wedge cell `to`; leaves the zone at the first
  // foreign cell on the way.
  std::optional<NavOutput> sweep(const Contact& c, int to, Point2 dir) const {
    const auto& cells = nav.wedges_[c.half];
    if (cells.empty()) return std::nullopt;
    const int step = to >= c.swept ? 1 : -1;
    for (int i = std::clamp(c.swept, 0, last_cell(c.half));; i += step) {
      if (!nav.sim_->zone_has_cell(u, cells[i].cell)) {
        Contact r = c;
        r.swept = i;
        return finish(NavStatus::ZoneBoundary, W().head(c.half), r, dir, cells[i].cell);
      }
      if (i == to) break;
    }
    return std::nullopt;
  }

  // Slides along h (sgn = +1 toward the head, -1 toward the tail).
  std::optional<NavOutput> slide(Point2& p, Contact& c, int h, double lambda, int sgn) const {
    const double L = W().length(h);
    const double foot = dot(target - W().tail(h), W().unit(h));
    double stop = sgn > 0 ? L : 0.0;
    bool dead = false;
    if (sgn > 0 && foot > lambda && foot < L - tol()) stop = foot, dead = true;
    if (sgn < 0 && foot < lambda && foot > tol()) stop = foot, dead = true;
    const Point2 from = at(h, lambda), to = at(h, stop);
    if (auto ex = zone_exit(*nav.sim_, u, from, to, side_cell(h), tol())) {
      const double le = lambda + ex->t * (stop - lambda);
      return finish(NavStatus::ZoneBoundary, at(h, le), normalize({Contact::Kind::Edge, h, le}),
                    unit_of(to - from), ex->cell);
    }
    path.push_back(to);
    p = to;
    if (dead) {
      c = {Contact::Kind::Edge, h, stop};
      return finish(NavStatus::Dead, p, c);
    }
    c = sgn > 0 ? Contact{Contact::Kind::Corner, h, 0.0, 0}
                : Contact{Contact::Kind::Corner, W().prev(h), 0.0, last_cell(W().prev(h))};
    p = W().vertices()[W().half(c.half).to];
    return std::nullopt;
  }

  // Straight motion toward the target until a wall, the target, or a zone exit.
  std::optional<NavOutput> fly(Point2& p, Contact& c) const {
    const Hit hit = cast(p, c);
    const Point2 to = hit.wall < 0 ? target : hit.x;
    if (auto ex = zone_exit(*nav.sim_, u, p, to, kNoNode, tol())) {
      const Point2 x = lerp(p, to, ex->t);
      return finish(NavStatus::ZoneBoundary, x, {}, unit_of(target - p), ex->cell);
    }
    if (hit.wall < 0) {
      p = target;
      return finish(NavStatus::Arrived, target, {});
    }
    const Point2 d = target - p;
    path.push_back(hit.x);
    if (hit.vertex >= 0) {
      p = W().vertices()[hit.vertex];
      const Point2 back = -1.0 * d;
      const double theta = std::atan2(back.y, back.x);
      const int g = corner_containing(hit.vertex, theta);
      c = {Contact::Kind::Corner, g, 0.0, cell_toward(g, theta)};
      return std::nullopt;
    }
    int h = hit.wall;
    if (cross(W().head(h) - W().tail(h), p - W().tail(h)) < 0) h = WallGraph::twin(h);
    p = hit.x;
    c = normalize({Contact::Kind::Edge, h, dot(hit.x - W().tail(h), W().unit(h))});
    return std::nullopt;
  }

  NavOutput gradient(Point2 p, Contact c) const {
    for (int step = 0; step < kStepLimit; ++step) {
      c = normalize(c);
      const Point2 d = target - p;
      if (norm(d) <= 0.0) return finish(NavStatus::Arrived, target, c);
      const Point2 dh = unit_of(d);
      if (c.kind == Contact::Kind::Free) {
        if (auto out = fly(p, c)) return *out;
        continue;
      }
      if (c.kind == Contact::Kind::Edge) {
        const int h = c.half;
        const Point2 e = W().unit(h);
        const Point2 nrm{-e.y, e.x};
        const double cn = dot(dh, nrm), ce = dot(dh, e);
        if (cn > kAngleTol) {
          if (auto out = fly(p, c)) return *out;
          continue;
        }
        if (std::abs(ce) <= kAngleTol) return finish(NavStatus::Dead, p, c);
        if (auto out = slide(p, c, h, c.lambda, ce > 0 ? 1 : -1)) return *out;
        continue;
      }
      // Corner at the head of g.
      const int g = c.half;
      const int h = W().next(g);
      const int back = WallGraph::twin(g);
      const double theta = std::atan2(d.y, d.x);
      const double ch = dot(dh, W().unit(h)), cg = dot(dh, W().unit(back));
      auto forward = [&] {
        if (auto out = sweep(c, last_cell(g), W().unit(h))) return out;
        return slide(p, c, h, 0.0, 1);
      };
      auto backward = [&] {
        if (auto out = sweep(c, 0, W().unit(back))) return out;
        return slide(p, c, g, W().length(g), -1);
      };
      std::optional<NavOutput> out;
      if (in_wedge(g, theta)) {
        if (ch >= 1.0 - kAngleTol) {
          out = forward();
        } else if (cg >= 1.0 - kAngleTol) {
          out = backward();
        } else {
          out = sweep(c, cell_toward(g, theta), dh);
          if (!out) out = fly(p, c);
        }
      } else if (std::max(ch, cg) <= kAngleTol) {
        return finish(NavStatus::Dead, p, c);
      } else {
        out = ch >= cg ? forward() : backward();
      }
      if (out) return *out;
    }
    return finish(NavStatus::Dead, p, c);
  }

  struct WalkResult {
    std::optional<NavOutput> out;
    Point2 p;
    Contact c;
  };

  // Right-hand walk from a dead point until strictly closer than d_o.
  // First point of h past lambda where gradient can resume: strictly closer
  // than d_o, or no farther than d_o with the target on the free side.
  std::optional<double> leave_point(int h, double lambda, double d_o, double goal) const {
    const double L = W().length(h);
    const Point2 e = W().unit(h), rel = target - W().tail(h);
    const double foot = dot(rel, e);
    std::optional<double> best;
    const double f = std::clamp(foot, lambda, L);
    if (distance(at(h, f), target) < goal) best = f;
    const double side = cross(e, rel);
    const double reach = d_o * (1.0 + 1e-9);
    if (side > kAngleTol * norm(rel) && reach >= side) {
      const double r = std::sqrt(reach * reach - side * side);
      const double eps = std::min(1e3 * tol(), 0.5 * L);
      const double lo = std::max({lambda, foot - r, eps});
      if (lo <= std::min(foot + r, L - eps)) best = best ? std::min(*best, lo) : lo;
    }
    return best;
  }

  WalkResult walk(Point2 p, Contact c, double d_o) const {
    c = normalize(c);
    if (c.kind == Contact::Kind::Free) throw PerimeterLoop(p);
    std::optional<Contact> turn;
    int h = c.half;
    double lambda = c.lambda;
    if (c.kind == Contact::Kind::Corner) turn = c;
    double walked = 0.0;
    const double budget = 2.0 * W().total_length() + 10.0 * tol();
    const double goal = d_o * (1.0 - kCloser);
    for (int step = 0; step < kStepLimit; ++step) {
      if (turn) {
        if (auto out = sweep(*turn, last_cell(turn->half), W().unit(W().next(turn->half)))) {
          out->aux.d_o = d_o;
          return {out, p, c};
        }
        h = W().next(turn->half);
        lambda = 0.0;
        turn.reset();
      }
      const double L = W().length(h);
      const Point2 from = at(h, lambda);
      const auto leave = leave_point(h, lambda, d_o, goal);
      const bool improves = leave.has_value();
      const double stop = improves ? *leave : L;
      const Point2 to = at(h, stop);
      if (auto ex = zone_exit(*nav.sim_, u, from, to, side_cell(h), tol())) {
        const double le = lambda + ex->t * (stop - lambda);
        NavOutput out = finish(NavStatus::ZoneBoundary, at(h, le), normalize({Contact::Kind::Edge, h, le}),
                               W().unit(h), ex->cell);
        out.aux.d_o = d_o;
        return {out, p, c};
      }
      path.push_back(to);
      if (improves) return {std::nullopt, to, normalize({Contact::Kind::Edge, h, stop})};
      walked += L - lambda;
      if (walked > budget) throw PerimeterLoop(p);
      turn = Contact{Contact::Kind::Corner, h, 0.0};
    }
    throw PerimeterLoop(p);
  }
};

Contact Navigator::locate(Point2 p) const {
  const double tol = walls_.tol();
  for (int v = 0; v < static_cast<int>(walls_.vertices().size()); ++v) {
    if (distance(walls_.vertices()[v], p) > tol) continue;
    const BoundingBox& b = sim_->sub().box();
    const Point2 inward = 0.5 * (b.min + b.max) - p;
    std::vector<Point2> dummy;
    Motion m{*this, kNoNode, p, dummy};
    return {Contact::Kind::Corner, m.corner_containing(v, std::atan2(inward.y, inward.x)), 0.0};
  }
  for (int h = 0; h < walls_.half_count(); ++h) {
    if (!walls_.half(h).usable || walls_.half(h).sites.first != kNoNode) continue;
    const Point2 a = walls_.tail(h);
    const Point2 e = walls_.unit(h);
    const double lambda = dot(p - a, e);
    if (lambda < 0 || lambda > walls_.length(h)) continue;
    if (std::abs(cross(e, p - a)) <= tol) return {Contact::Kind::Edge, h, lambda};
  }
  return {};
}

NavOutput Navigator::gradient_step(NodeId u, Point2 p, Point2 target) const {
  if (!sim_->zone_contains(u, p)) throw PreconditionViolated("position not in the zone of node " + std::to_string(u));
  return gradient_step(u, p, target, locate(p));
}

NavOutput Navigator::gradient_step(NodeId u, Point2 p, Point2 target, const Contact& contact) const {
  std::vector<Point2> path;
  NavOutput out = gradient_from(u, p, target, contact, path);
  out.path = std::move(path);
  return out;
}

NavOutput Navigator::gradient_from(NodeId u, Point2 p, Point2 target, Contact c, std::vector<Point2>& path) const {
  Motion m{*this, u, target, path};
  return m.gradient(p, c);
}

NavOutput Navigator::gradient_perimeter_step(NodeId u, Point2 p, Point2 target, std::optional<double> d_o) const {
  if (!sim_->zone_contains(u, p)) throw PreconditionViolated("position not in the zone of node " + std::to_string(u));
  return gradient_perimeter_step(u, p, target, NavState{d_o, locate(p)});
}

NavOutput Navigator::gradient_perimeter_step(NodeId u, Point2 p, Point2 target, const NavState& state) const {
  std::vector<Point2> path;
  Motion m{*this, u, target, path};
  double d_o = state.d_o ? *state.d_o : distance(p, target);
  Contact c = state.contact;
  for (int round = 0; round < kStepLimit; ++round) {
    if (distance(p, target) <= d_o) {
      NavOutput out = m.gradient(p, c);
      if (out.status != NavStatus::Dead) {
        out.aux.d_o = d_o;
        out.path = std::move(path);
        return out;
      }
      p = out.p_next;
      c = out.aux.contact;
      d_o = distance(p, target);
    }
    auto w = m.walk(p, c, d_o);
    if (w.out) {
      w.out->path = std::move(path);
      return *w.out;
    }
    p = w.p;
    c = w.c;
    d_o = std::max(d_o, distance(p, target));
  }
  throw PerimeterLoop();
}

RouteTrace route(const CanonicalSimulation& sim, Engine engine, NodeId source, NodeId dest, int hop_cap) {
  return route(Navigator(sim), engine, source, dest, hop_cap);
}

RouteTrace route(const Navigator& nav, Engine engine, NodeId source, NodeId dest, int hop_cap) {
  const CanonicalSimulation& sim = nav.sim();
  if (source < 0 || dest < 0 || source >= sim.size() || dest >= sim.size()) {
    throw std::out_of_range("route endpoint out of range");
  }
  if (hop_cap < 0) hop_cap = 10 * sim.size();
  RouteTrace tr;
  const Point2 target = sim.position(dest);
  NodeId u = source;
  Point2 p = sim.position(source);
  NavState state;
  tr.hops.push_back(u);
  tr.trajectory.push_back(p);
  auto dead = [&](Point2 at) {
    tr.outcome = Outcome::DeadEnd;
    tr.dead_end = at;
    if (!(tr.trajectory.back() == at)) tr.trajectory.push_back(at);
    tr.log.push_back({u, at, NavStatus::Dead});
  };
  for (;;) {
    if (sim.zone_contains(u, target)) {
      const NodeId v = sim.geocast_target(u, target);
      if (v != u) tr.hops.push_back(v);
      if (!(tr.trajectory.back() == target)) tr.trajectory.push_back(target);
      tr.log.push_back({v, target, NavStatus::Arrived});
      tr.outcome = Outcome::Delivered;
      break;
    }
    if (tr.handovers >= hop_cap) {
      tr.outcome = Outcome::HopCapExceeded;
      break;
    }
    NavOutput out;
    try {
      out = engine == Engine::Gradient ? nav.gradient_step(u, p, target, state.contact)
                                       : nav.gradient_perimeter_step(u, p, target, state);
    } catch (const PerimeterLoop& e) {
      dead(e.at.value_or(p));
      break;
    }
    for (Point2 q : out.path)
      if (!(tr.trajectory.back() == q)) tr.trajectory.push_back(q);
    if (out.status != NavStatus::ZoneBoundary) {
      dead(out.p_next);
      break;
    }
    NodeId next = kNoNode;
    for (NodeId v : sim.H().neighbors(u)) {
      if (sim.zone_has_cell(v, out.next_cell)) {
        next = v;
        break;
      }
    }
    if (next == kNoNode) {
      dead(out.p_next);
      break;
    }
    u = next;
    p = out.p_next;
    state = out.aux;
    ++tr.handovers;
    tr.hops.push_back(u);
    tr.log.push_back({u, p, NavStatus::ZoneBoundary});
  }
  tr.hop_count = static_cast<int>(tr.hops.size()) - 1;
  const int d = bfs_distances(sim.net().graph, source)[dest];
  tr.stretch = d > 0 ? static_cast<double>(tr.hop_count) / d : 1.0;
  return tr;
}

void write_trace(std::ostream& out, const RouteTrace& trace) {
  for (const RouteHop& h : trace.log) {
    out << "hop " << h.node << " at (" << h.at.x << "," << h.at.y << ") via " << to_string(h.via) << '\n';
  }
}

}  // namespace geoecc
