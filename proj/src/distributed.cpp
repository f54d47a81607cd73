#include "geoecc/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "geoecc/eccentricity.hpp"
#include "geoecc/errors.hpp"

namespace geoecc {

std::string to_string(FailureCause c) {
  switch (c) {
    case FailureCause::NonLocalDelaunayEdge: return "NonLocalDelaunayEdge";
    case FailureCause::CrossingLinks: return "CrossingLinks";
    case FailureCause::NonAdjacentCells: return "NonAdjacentCells";
  }
  return "?";
}

bool Neighborhood::knows(NodeId v) const { return std::binary_search(ids.begin(), ids.end(), v); }

int Neighborhood::hops_to(NodeId v) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), v);
  if (it == ids.end() || *it != v) return kUnreachable;
  return hops[it - ids.begin()];
}

std::vector<NodeId> Face::sites() const {
  std::vector<NodeId> s = walk;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

namespace {

// Keeps the failure reported by the smallest detector, then the smallest witness.
void keep_first(std::optional<GlobalFailure>& best, const GlobalFailure& f) {
  if (!best || std::tie(f.detector, f.witness) < std::tie(best->detector, best->witness)) best = f;
}

// k-hop flooding from every node: receptions per round are the nodes at
// exactly that hop distance.
std::vector<RoundLog> flood_rounds(const std::vector<Neighborhood>& known, int k, int first_round,
                                   const std::string& phase, std::size_t& messages) {
  std::vector<std::size_t> per(k + 1, 0);
  for (const Neighborhood& nb : known)
    for (int h : nb.hops) ++per[h];
  std::vector<RoundLog> out;
  for (int r = 1; r <= k; ++r) {
    out.push_back({first_round + r - 1, per[r], phase});
    messages += per[r];
  }
  return out;
}

std::vector<Site> sites_of(const LocalizedNetwork& net, NodeId self, const std::vector<NodeId>& others) {
  std::vector<Site> s{{self, net.apparent_positions[self]}};
  for (NodeId v : others)
    if (v != self) s.push_back({v, net.apparent_positions[v]});
  return s;
}

}  // namespace

DelaunayPhase run_distributed_delaunay(const LocalizedNetwork& net, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!is_connected(net.graph)) throw Disconnected();
  const int n = net.size();
  const BoundingBox box = net.clip_box();
  DelaunayPhase ph;
  ph.known.resize(n);
  ph.computed.resize(n);
  ph.gamma.resize(n);

  // Steps 1-2: positions and hop counts of the G^k neighbourhood.
#pragma omp parallel for schedule(dynamic, 16)
  for (int u = 0; u < n; ++u) {
    const auto d = bfs_distances_bounded(net.graph, u, k);
    for (int v = 0; v < n; ++v)
      if (v != u && d[v] != kUnreachable) {
        ph.known[u].ids.push_back(v);
        ph.known[u].hops.push_back(d[v]);
      }
  }
  ph.rounds = flood_rounds(ph.known, k, 1, "delaunay", ph.messages);

  // Steps 3-4: local diagram and the adjacent cells met along each link.
  std::vector<std::vector<NodePair>> local_adjacent(n);
  std::vector<std::vector<std::vector<NodeId>>> link_cells(n);  // per link, in neighbour order
#pragma omp parallel for schedule(dynamic, 4)
  for (int u = 0; u < n; ++u) {
    const PlanarSubdivision local = PlanarSubdivision::build(sites_of(net, u, ph.known[u].ids), box);
    local_adjacent[u] = local.adjacent_pairs();
    std::set<NodePair> found;
    for (NodeId v : net.graph.neighbors(u)) {
      std::vector<NodeId> cells;
      for (const auto& order : traversal_orders(local, u, v)) {
        cells.insert(cells.end(), order.begin(), order.end());
        for (std::size_t i = 0; i + 1 < order.size(); ++i)
          if (local.adjacent(order[i], order[i + 1])) found.insert(NodePair::of(order[i], order[i + 1]));
      }
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
      link_cells[u].push_back(std::move(cells));
    }
    ph.computed[u].assign(found.begin(), found.end());
  }

  // Steps 5-6: edges broadcast at k hops.
  auto more = flood_rounds(ph.known, k, k + 1, "delaunay", ph.messages);
  ph.rounds.insert(ph.rounds.end(), more.begin(), more.end());

  // Step 7: a received edge must join cells adjacent in the local diagram.
  // An edge touching the receiver whose other end it never heard of fails too.
  std::vector<std::optional<GlobalFailure>> fail(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int u = 0; u < n; ++u) {
    const Neighborhood& kn = ph.known[u];
    const auto& adj = local_adjacent[u];
    std::set<NodeId> gamma;
    auto check = [&](const NodePair& e) {
      const bool mine = e.first == u || e.second == u;
      const bool known_a = e.first == u || kn.knows(e.first);
      const bool known_b = e.second == u || kn.knows(e.second);
      if (!known_a || !known_b) {
        if (mine) keep_first(fail[u], {FailureCause::NonLocalDelaunayEdge, u, {e}});
        return;
      }
      if (!std::binary_search(adj.begin(), adj.end(), e)) {
        keep_first(fail[u], {FailureCause::NonLocalDelaunayEdge, u, {e}});
        return;
      }
      if (mine) gamma.insert(e.first == u ? e.second : e.first);
    };
    for (const NodePair& e : ph.computed[u]) check(e);
    for (NodeId x : kn.ids)
      for (const NodePair& e : ph.computed[x]) check(e);
    // Cells found by the other end of a link of u must be known to u.
    for (NodeId z : net.graph.neighbors(u)) {
      const auto& zn = net.graph.neighbors(z);
      const std::size_t at = std::lower_bound(zn.begin(), zn.end(), u) - zn.begin();
      for (NodeId w : link_cells[z][at])
        if (w != u && !kn.knows(w)) keep_first(fail[u], {FailureCause::NonLocalDelaunayEdge, u, {NodePair::of(u, z), NodePair::of(u, w)}});
    }
    ph.gamma[u].assign(gamma.begin(), gamma.end());
  }
  for (const auto& f : fail)
    if (f) keep_first(ph.failure, *f);
  return ph;
}

namespace {

struct Rotation {
  std::vector<NodeId> order;  // neighbours by increasing angle
  std::vector<double> angle;
};

// Next node after arriving at b from a: the first neighbour of b met turning
// clockwise from the direction of a.
NodeId right_hand_next(const Rotation& rot, double from_angle, NodeId from) {
  const std::size_t m = rot.order.size();
  // Largest angle strictly below from_angle, cyclically.
  std::size_t pos = std::lower_bound(rot.angle.begin(), rot.angle.end(), from_angle) - rot.angle.begin();
  for (std::size_t step = 0; step < m; ++step) {
    pos = (pos + m - 1) % m;
    if (rot.order[pos] != from || m == 1) return rot.order[pos];
  }
  return from;
}

bool has_crossing(const LocalizedNetwork& net, const std::vector<NodeId>& walk, std::vector<NodePair>& witness) {
  const std::size_t m = walk.size();
  for (std::size_t i = 0; i < m; ++i) {
    const NodeId a = walk[i], b = walk[(i + 1) % m];
    const Segment s1{net.apparent_positions[a], net.apparent_positions[b]};
    for (std::size_t j = i + 1; j < m; ++j) {
      const NodeId c = walk[j], d = walk[(j + 1) % m];
      if (a == c || a == d || b == c || b == d) continue;
      if (segments_cross(s1, {net.apparent_positions[c], net.apparent_positions[d]})) {
        witness = {NodePair::of(a, b), NodePair::of(c, d)};
        return true;
      }
    }
  }
  return false;
}

}  // namespace

ProbePhase run_face_probe(const LocalizedNetwork& net, int k, const DelaunayPhase& del) {
  const int n = net.size();
  const BoundingBox box = net.clip_box();
  ProbePhase ph;
  ph.faces_of.resize(n);

  std::vector<Rotation> rot(n);
  for (int u = 0; u < n; ++u) {
    std::vector<std::pair<double, NodeId>> by_angle;
    for (NodeId v : del.gamma[u]) {
      const Point2 d = net.apparent_positions[v] - net.apparent_positions[u];
      by_angle.push_back({std::atan2(d.y, d.x), v});
    }
    std::sort(by_angle.begin(), by_angle.end());
    for (auto [a, v] : by_angle) {
      rot[u].angle.push_back(a);
      rot[u].order.push_back(v);
    }
  }

  // Every directed triangulation edge launches a probe; probes on the same
  // face retrace the same walk, so each face is walked once here and the
  // lowest initiator on it keeps the probe.
  std::map<NodePair, int> face_of_dart;  // (from, to) -> face
  std::size_t darts = 0;
  for (int u = 0; u < n; ++u) darts += del.gamma[u].size();
  const std::size_t budget = 2 * darts + 2;
  for (int u = 0; u < n; ++u) {
    for (NodeId v : del.gamma[u]) {
      if (face_of_dart.count({u, v})) continue;
      std::vector<std::pair<NodeId, NodeId>> cycle;
      NodeId a = u, b = v;
      while (true) {
        cycle.push_back({a, b});
        if (cycle.size() > budget) throw ProbeLost(u);
        const Point2 back = net.apparent_positions[a] - net.apparent_positions[b];
        const NodeId c = right_hand_next(rot[b], std::atan2(back.y, back.x), a);
        a = b;
        b = c;
        if (a == u && b == v) break;
      }
      const int id = static_cast<int>(ph.faces.size());
      Face f;
      std::size_t start = 0;
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (face_of_dart.count({cycle[i].first, cycle[i].second})) throw ProbeLost(u);
        face_of_dart[{cycle[i].first, cycle[i].second}] = id;
        if (cycle[i].first < cycle[start].first) start = i;
        f.hop_length += del.known[cycle[i].first].hops_to(cycle[i].second);
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) f.walk.push_back(cycle[(start + i) % cycle.size()].first);
      f.initiator = f.walk.front();
      f.probes = cycle.size();
      ph.faces.push_back(std::move(f));
    }
  }

  // Crossing check, face cells and hole strips, computed by each initiator.
  std::vector<std::optional<GlobalFailure>> fail(ph.faces.size());
  const std::ptrdiff_t nf = static_cast<std::ptrdiff_t>(ph.faces.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < nf; ++i) {
    Face& f = ph.faces[i];
    std::vector<NodePair> witness;
    if (has_crossing(net, f.walk, witness)) {
      fail[i] = GlobalFailure{FailureCause::CrossingLinks, f.initiator, witness};
      continue;
    }
    const auto ids = f.sites();
    const NodeId self = f.initiator;
    const PlanarSubdivision local = PlanarSubdivision::build(sites_of(net, self, ids), box);
    for (const NodePair& e : local.adjacent_pairs()) {
      // The probe carries each member's neighbour list.
      if (!del.known[e.first].knows(e.second)) f.holes.push_back(e);
    }
  }
  for (const auto& f : fail)
    if (f) keep_first(ph.failure, *f);

  std::size_t longest = 0;
  for (std::size_t i = 0; i < ph.faces.size(); ++i) {
    const Face& f = ph.faces[i];
    for (NodeId s : f.sites()) ph.faces_of[s].push_back(static_cast<int>(i));
    ph.messages += 2 * f.hop_length;
    ph.messages_raw += f.probes * f.hop_length;
    longest = std::max(longest, 2 * f.hop_length);
  }
  // The probe goes around its face, then the result follows the same way.
  const int first = 2 * k + 1;
  for (std::size_t r = 1; r <= longest; ++r) {
    std::size_t msgs = 0;
    for (const Face& f : ph.faces)
      if (2 * f.hop_length >= r) ++msgs;
    ph.rounds.push_back({first + static_cast<int>(r) - 1, msgs, "face-probe"});
  }
  return ph;
}

namespace {

double polygon_area(const std::vector<Point2>& poly) {
  double a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

// Area shared by two convex counterclockwise polygons.
double overlap_area(const VoronoiCell& a, const VoronoiCell& b) {
  std::vector<Point2> poly = a.vertices;
  const std::size_t m = b.vertices.size();
  for (std::size_t i = 0; i < m && !poly.empty(); ++i) {
    const Point2 p = b.vertices[i], q = b.vertices[(i + 1) % m];
    auto side = [&](Point2 x) { return cross(q - p, x - p); };
    std::vector<Point2> out;
    for (std::size_t j = 0; j < poly.size(); ++j) {
      const Point2 c = poly[j], d = poly[(j + 1) % poly.size()];
      const double sc = side(c), sd = side(d);
      if (sc >= 0) out.push_back(c);
      if ((sc >= 0) != (sd >= 0)) out.push_back(c + (sc / (sc - sd)) * (d - c));
    }
    poly = std::move(out);
  }
  return poly.size() < 3 ? 0.0 : polygon_area(poly);
}

// Parameter range of the segment a-b inside a convex counterclockwise polygon.
std::optional<std::pair<double, double>> clip_segment(const VoronoiCell& c, Point2 a, Point2 b) {
  double lo = 0, hi = 1;
  const std::size_t m = c.vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 p = c.vertices[i], q = c.vertices[(i + 1) % m];
    const double fa = cross(q - p, a - p), fb = cross(q - p, b - p);
    if (fa < 0 && fb < 0) return std::nullopt;
    if (fa < 0) lo = std::max(lo, fa / (fa - fb));
    else if (fb < 0) hi = std::min(hi, fa / (fa - fb));
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

// Smallest pair of cells among `ids` sharing a positive area, found by a
// sweep over their x extents.
std::optional<NodePair> first_overlap(const std::vector<VoronoiCell>& cells, const std::vector<NodeId>& ids,
                                      double min_area) {
  struct Span {
    double x0, x1, y0, y1;
    NodeId id;
  };
  std::vector<Span> spans;
  for (NodeId w : ids) {
    Span s{1e300, -1e300, 1e300, -1e300, w};
    for (Point2 p : cells[w].vertices) {
      s.x0 = std::min(s.x0, p.x), s.x1 = std::max(s.x1, p.x);
      s.y0 = std::min(s.y0, p.y), s.y1 = std::max(s.y1, p.y);
    }
    spans.push_back(s);
  }
  std::sort(spans.begin(), spans.end(), [](const Span& l, const Span& r) { return l.x0 < r.x0; });
  std::optional<NodePair> best;
  for (std::size_t i = 0; i < spans.size(); ++i)
    for (std::size_t j = i + 1; j < spans.size() && spans[j].x0 < spans[i].x1; ++j) {
      if (spans[j].y0 >= spans[i].y1 || spans[i].y0 >= spans[j].y1) continue;
      const NodePair e = NodePair::of(spans[i].id, spans[j].id);
      if ((!best || e < *best) && overlap_area(cells[spans[i].id], cells[spans[j].id]) > min_area) best = e;
    }
  return best;
}

}  // namespace

ZonePhase run_zone_computation(const LocalizedNetwork& net, int k, const DelaunayPhase& del,
                               const ProbePhase& probes) {
  const int n = net.size();
  const BoundingBox box = net.clip_box();
  ZonePhase ph;
  ph.cells.resize(n);
  ph.holes.resize(n);
  ph.zones.resize(n);
  std::vector<std::vector<NodeId>> cell_adjacent(n);

  // Steps 1-3: the intersection of the face cells of u is its cell among
  // the union of the face sites; B_u keeps the flagged boundaries of C_u.
#pragma omp parallel for schedule(dynamic, 8)
  for (int u = 0; u < n; ++u) {
    std::vector<NodeId> ids;
    std::set<NodePair> flagged;
    for (int fi : probes.faces_of[u]) {
      const Face& f = probes.faces[fi];
      const auto s = f.sites();
      ids.insert(ids.end(), s.begin(), s.end());
      for (const NodePair& e : f.holes)
        if (e.first == u || e.second == u) flagged.insert(e);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const PlanarSubdivision local = PlanarSubdivision::build(sites_of(net, u, ids), box);
    ph.cells[u] = local.cell(u);
    cell_adjacent[u] = local.cell_neighbors(u);
    for (const NodePair& e : flagged)
      if (local.adjacent(e.first, e.second)) ph.holes[u].push_back(e);
  }

  // Steps 4-5: cells and holes broadcast at k hops.
  ph.rounds = flood_rounds(del.known, k, 0, "zone", ph.messages);

  // Step 6: Delaunay neighbours must own adjacent cells. The received cells
  // must also agree: no two of them overlap, and together they cover every
  // link of u.
  std::vector<std::optional<GlobalFailure>> fail(n);
  const double min_area = 1e-9 * box.diagonal() * box.diagonal();
  const double gap = 1e-9;
#pragma omp parallel for schedule(dynamic, 8)
  for (int u = 0; u < n; ++u) {
    for (NodeId v : del.gamma[u]) {
      const bool heard = del.known[u].knows(v);
      const bool adj = std::binary_search(cell_adjacent[u].begin(), cell_adjacent[u].end(), v);
      if (!heard || !adj) keep_first(fail[u], {FailureCause::NonAdjacentCells, u, {NodePair::of(u, v)}});
    }
    std::vector<NodeId> mine = del.known[u].ids;
    mine.insert(std::lower_bound(mine.begin(), mine.end(), u), u);
    if (auto e = first_overlap(ph.cells, mine, min_area))
      keep_first(fail[u], {FailureCause::NonAdjacentCells, u, {*e}});
    for (NodeId v : net.graph.neighbors(u)) {
      const Point2 a = net.apparent_positions[u], b = net.apparent_positions[v];
      std::vector<std::pair<double, double>> parts;
      for (NodeId w : mine)
        if (auto r = clip_segment(ph.cells[w], a, b)) parts.push_back(*r);
      std::sort(parts.begin(), parts.end());
      double reach = 0;
      for (const auto& [lo, hi] : parts) {
        if (lo > reach + gap) break;
        reach = std::max(reach, hi);
      }
      if (reach < 1 - gap) keep_first(fail[u], {FailureCause::NonAdjacentCells, u, {NodePair::of(u, v)}});
    }
  }
  for (const auto& f : fail)
    if (f) keep_first(ph.failure, *f);

  // Steps 7-8: zone and holes of S.
  std::set<NodePair> all;
  for (int u = 0; u < n; ++u) {
    ph.zones[u] = del.known[u].ids;
    ph.zones[u].insert(std::lower_bound(ph.zones[u].begin(), ph.zones[u].end(), u), u);
    all.insert(ph.holes[u].begin(), ph.holes[u].end());
  }
  ph.space_holes.assign(all.begin(), all.end());
  return ph;
}

ProtocolRun run_full_protocol(const LocalizedNetwork& net, int k) {
  ProtocolRun run;
  run.k = k;
  auto append = [&](const std::vector<RoundLog>& rounds) {
    for (RoundLog r : rounds) {
      r.round = ++run.rounds;
      run.log.push_back(r);
    }
  };
  const DelaunayPhase del = run_distributed_delaunay(net, k);
  run.messages.delaunay = del.messages;
  append(del.rounds);
  if (del.failure) {
    run.verdict = *del.failure;
    return run;
  }
  const ProbePhase probes = run_face_probe(net, k, del);
  run.messages.probes = probes.messages;
  run.messages.probes_raw = probes.messages_raw;
  append(probes.rounds);
  if (probes.failure) {
    run.verdict = *probes.failure;
    return run;
  }
  ZonePhase zones = run_zone_computation(net, k, del, probes);
  run.messages.zones = zones.messages;
  append(zones.rounds);
  if (zones.failure) {
    run.verdict = *zones.failure;
    return run;
  }
  run.verdict = ProtocolSuccess{std::move(zones.zones), std::move(zones.cells), std::move(zones.space_holes)};
  return run;
}

void write_protocol_log(std::ostream& out, const ProtocolRun& run) {
  for (const RoundLog& r : run.log) out << "round " << r.round << ": " << r.messages << " messages, phase " << r.phase << '\n';
}

}  // namespace geoecc
