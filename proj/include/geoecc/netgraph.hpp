#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "geoecc/types.hpp"

namespace geoecc {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Undirected communication graph on nodes [0, n).
class CommGraph {
 public:
  CommGraph() = default;
  explicit CommGraph(int n) : adj_(n) {}

  /// Throws std::invalid_argument on self-loops or out-of-range ids.
  /// Duplicate edges are merged.
  static CommGraph from_edges(int n, std::span<const NodePair> edges);

  int size() const { return static_cast<int>(adj_.size()); }
  const std::vector<NodeId>& neighbors(NodeId u) const { return adj_[u]; }
  bool has_edge(NodeId u, NodeId v) const;
  std::size_t edge_count() const;
  /// Sorted, first < second.
  std::vector<NodePair> edges() const;

  friend bool operator==(const CommGraph&, const CommGraph&) = default;

 private:
  std::vector<std::vector<NodeId>> adj_;
};

std::vector<int> bfs_distances(const CommGraph& g, NodeId source);
/// Distances up to `max_depth`; farther nodes are kUnreachable.
std::vector<int> bfs_distances_bounded(const CommGraph& g, NodeId source, int max_depth);
bool is_connected(const CommGraph& g);
/// Throws Disconnected.
int diameter(const CommGraph& g);
double avg_neighborhood_size(const CommGraph& g, int i);

/// G^k: u, v adjacent iff their hop distance lies in [1, k].
class KnowledgeGraph {
 public:
  KnowledgeGraph(const CommGraph& base, int k, std::vector<std::vector<NodeId>> adj)
      : base_(&base), k_(k), adj_(std::move(adj)) {}

  const CommGraph& base() const { return *base_; }
  int k() const { return k_; }
  int size() const { return static_cast<int>(adj_.size()); }
  const std::vector<NodeId>& neighbors(NodeId u) const { return adj_[u]; }
  bool contains(NodeId u, NodeId v) const;

 private:
  const CommGraph* base_;
  int k_;
  std::vector<std::vector<NodeId>> adj_;
};

/// Throws std::invalid_argument for k < 1.
KnowledgeGraph power_graph(const CommGraph& g, int k);

/// All-pairs hop distances. Stored as a matrix when it fits the memory
/// budget, otherwise answered by BFS on demand.
class HopDistances {
 public:
  static constexpr std::size_t kDefaultBudget = std::size_t{512} << 20;

  explicit HopDistances(const CommGraph& g, std::size_t memory_budget = kDefaultBudget, bool parallel = true);

  bool materialized() const { return !matrix_.empty() || g_->size() == 0; }
  int operator()(NodeId u, NodeId v) const;
  /// dist(u, v) <= k, using bounded search when not materialized.
  bool within(NodeId u, NodeId v, int k) const;
  /// Row of distances from u.
  std::vector<int> row(NodeId u) const;
  /// Maximum finite distance; Disconnected if any pair is unreachable.
  int diameter() const;
  /// Mean over u of |{v != u : dist(u, v) <= i}| for i = 1..max_i (index i-1).
  std::vector<double> neighborhood_sizes(int max_i) const;

 private:
  static constexpr std::uint16_t kInf = 0xFFFF;
  const CommGraph* g_;
  int n_ = 0;
  std::vector<std::uint16_t> matrix_;
  bool connected_ = true;
  int diameter_ = 0;
};

/// Reference kernels kept for tests and benchmarks.
std::vector<std::uint16_t> all_pairs_serial(const CommGraph& g);
std::vector<std::uint16_t> all_pairs_parallel(const CommGraph& g);

}  // namespace geoecc
