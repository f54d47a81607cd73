#include "geoecc/netgraph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "geoecc/errors.hpp"

namespace geoecc {

CommGraph CommGraph::from_edges(int n, std::span<const NodePair> edges) {
  CommGraph g(n);
  for (const auto& e : edges) {
    if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.first == e.second) throw std::invalid_argument("self-loop at node " + std::to_string(e.first));
    g.adj_[e.first].push_back(e.second);
    g.adj_[e.second].push_back(e.first);
  }
  for (auto& nb : g.adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return g;
}

bool CommGraph::has_edge(NodeId u, NodeId v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::size_t CommGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& nb : adj_) total += nb.size();
  return total / 2;
}

std::vector<NodePair> CommGraph::edges() const {
  std::vector<NodePair> out;
  for (int u = 0; u < size(); ++u)
    for (NodeId v : adj_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

std::vector<int> bfs_distances_bounded(const CommGraph& g, NodeId source, int max_depth) {
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<NodeId> frontier{source}, next;
  dist[source] = 0;
  for (int d = 1; d <= max_depth && !frontier.empty(); ++d) {
    next.clear();
    for (NodeId u : frontier)
      for (NodeId v : g.neighbors(u))
        if (dist[v] == kUnreachable) {
          dist[v] = d;
          next.push_back(v);
        }
    frontier.swap(next);
  }
  return dist;
}

std::vector<int> bfs_distances(const CommGraph& g, NodeId source) {
  return bfs_distances_bounded(g, source, kUnreachable - 1);
}

bool is_connected(const CommGraph& g) {
  if (g.size() == 0) return true;
  const auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x == kUnreachable; });
}

int diameter(const CommGraph& g) {
  if (!is_connected(g)) throw Disconnected();
  return HopDistances(g).diameter();
}

double avg_neighborhood_size(const CommGraph& g, int i) {
  if (i < 1) throw std::invalid_argument("i must be positive");
  if (g.size() == 0) return 0.0;
  std::size_t total = 0;
  for (int u = 0; u < g.size(); ++u) {
    const auto d = bfs_distances_bounded(g, u, i);
    total += std::count_if(d.begin(), d.end(), [](int x) { return x != kUnreachable; }) - 1;
  }
  return static_cast<double>(total) / g.size();
}

bool KnowledgeGraph::contains(NodeId u, NodeId v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

KnowledgeGraph power_graph(const CommGraph& g, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<std::vector<NodeId>> adj(g.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (int u = 0; u < g.size(); ++u) {
    const auto d = bfs_distances_bounded(g, u, k);
    for (int v = 0; v < g.size(); ++v)
      if (v != u && d[v] != kUnreachable) adj[u].push_back(v);
  }
  return KnowledgeGraph(g, k, std::move(adj));
}

namespace {

void fill_row(const CommGraph& g, NodeId u, std::uint16_t* row) {
  const auto d = bfs_distances(g, u);
  for (int v = 0; v < g.size(); ++v) row[v] = d[v] == kUnreachable ? 0xFFFF : static_cast<std::uint16_t>(d[v]);
}

}  // namespace

std::vector<std::uint16_t> all_pairs_serial(const CommGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint16_t> m(n * n);
  for (std::size_t u = 0; u < n; ++u) fill_row(g, static_cast<NodeId>(u), m.data() + u * n);
  return m;
}

std::vector<std::uint16_t> all_pairs_parallel(const CommGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint16_t> m(n * n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t u = 0; u < static_cast<std::ptrdiff_t>(n); ++u) {
    fill_row(g, static_cast<NodeId>(u), m.data() + u * n);
  }
  return m;
}

HopDistances::HopDistances(const CommGraph& g, std::size_t memory_budget, bool parallel) : g_(&g), n_(g.size()) {
  const std::size_t bytes = static_cast<std::size_t>(n_) * n_ * sizeof(std::uint16_t);
  if (n_ > 0 && bytes <= memory_budget && n_ < 0xFFFF) {
    matrix_ = parallel ? all_pairs_parallel(g) : all_pairs_serial(g);
    for (std::uint16_t d : matrix_) {
      if (d == kInf) {
        connected_ = false;
      } else {
        diameter_ = std::max<int>(diameter_, d);
      }
    }
  } else if (n_ > 0) {
    connected_ = is_connected(g);
    if (connected_) {
      for (int u = 0; u < n_; ++u) {
        const auto d = bfs_distances(g, u);
        diameter_ = std::max(diameter_, *std::max_element(d.begin(), d.end()));
      }
    }
  }
}

int HopDistances::operator()(NodeId u, NodeId v) const {
  if (!matrix_.empty()) {
    const std::uint16_t d = matrix_[static_cast<std::size_t>(u) * n_ + v];
    return d == kInf ? kUnreachable : d;
  }
  return bfs_distances(*g_, u)[v];
}

bool HopDistances::within(NodeId u, NodeId v, int k) const {
  if (!matrix_.empty()) return (*this)(u, v) <= k;
  return bfs_distances_bounded(*g_, u, k)[v] != kUnreachable;
}

std::vector<int> HopDistances::row(NodeId u) const {
  if (matrix_.empty()) return bfs_distances(*g_, u);
  std::vector<int> r(n_);
  for (int v = 0; v < n_; ++v) r[v] = (*this)(u, v);
  return r;
}

int HopDistances::diameter() const {
  if (!connected_) throw Disconnected();
  return diameter_;
}

std::vector<double> HopDistances::neighborhood_sizes(int max_i) const {
  std::vector<double> out(std::max(max_i, 0), 0.0);
  if (n_ == 0 || max_i < 1) return out;
  std::vector<std::size_t> hist(max_i + 1, 0);
  for (int u = 0; u < n_; ++u) {
    const auto r = row(u);
    for (int v = 0; v < n_; ++v)
      if (v != u && r[v] <= max_i) ++hist[r[v]];
  }
  std::size_t cum = 0;
  for (int i = 1; i <= max_i; ++i) {
    cum += hist[i];
    out[i - 1] = static_cast<double>(cum) / n_;
  }
  return out;
}

}  // namespace geoecc
