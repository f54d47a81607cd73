#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geoecc/geometry.hpp"
#include "geoecc/netgen.hpp"
#include "geoecc/netgraph.hpp"

namespace geoecc {

enum class FailureCause { NonLocalDelaunayEdge, CrossingLinks, NonAdjacentCells };
std::string to_string(FailureCause c);

struct GlobalFailure {
  FailureCause cause;
  NodeId detector = kNoNode;       // node asserting the failure
  std::vector<NodePair> witness;  // offending edge, crossing links, or cell pair
};

struct RoundLog {
  int round;
  std::size_t messages;
  std::string phase;
};

/// Message receptions per phase. A k-hop broadcast costs one message per
/// node reached; a probe forward along a triangulation edge costs the hop
/// length of that edge in G.
struct MessageCounts {
  std::size_t delaunay = 0;
  std::size_t probes = 0;      // one probe and one result message per face
  std::size_t probes_raw = 0;  // one probe per directed triangulation edge
  std::size_t zones = 0;
  std::size_t total() const { return delaunay + probes + zones; }
};

/// Knowledge a node gathers from the first k-hop broadcast.
struct Neighborhood {
  std::vector<NodeId> ids;  // sorted, excluding the node itself
  std::vector<int> hops;    // hop distance of each id
  bool knows(NodeId v) const;
  int hops_to(NodeId v) const;
};

struct DelaunayPhase {
  std::vector<Neighborhood> known;
  std::vector<std::vector<NodePair>> computed;  // edges found by each node along its links
  std::vector<std::vector<NodeId>> gamma;       // Delaunay neighbours, sorted
  std::optional<GlobalFailure> failure;
  std::size_t messages = 0;
  std::vector<RoundLog> rounds;
};

struct Face {
  std::vector<NodeId> walk;  // right-hand order, starting at the initiator
  NodeId initiator = kNoNode;
  std::size_t hop_length = 0;  // G-hops for one trip around the face
  std::size_t probes = 0;      // probes launched on this face
  std::vector<NodePair> holes;  // adjacent face cells whose owners are not G^k neighbours
  std::vector<NodeId> sites() const;
};

struct ProbePhase {
  std::vector<Face> faces;
  std::vector<std::vector<int>> faces_of;  // face indices per node
  std::optional<GlobalFailure> failure;
  std::size_t messages = 0;
  std::size_t messages_raw = 0;
  std::vector<RoundLog> rounds;
};

struct ZonePhase {
  std::vector<VoronoiCell> cells;            // C_u per node
  std::vector<std::vector<NodePair>> holes;  // B_u per node
  std::vector<std::vector<NodeId>> zones;    // cell ids of Z_u, sorted
  std::vector<NodePair> space_holes;         // union of all B_u, sorted
  std::optional<GlobalFailure> failure;
  std::size_t messages = 0;
  std::vector<RoundLog> rounds;
};

struct ProtocolSuccess {
  std::vector<std::vector<NodeId>> zones;
  std::vector<VoronoiCell> cells;
  std::vector<NodePair> holes;  // forbidden cell boundaries of S
};

struct ProtocolRun {
  int k = 0;
  int rounds = 0;
  MessageCounts messages;
  std::vector<RoundLog> log;
  std::variant<ProtocolSuccess, GlobalFailure> verdict;

  bool success() const { return std::holds_alternative<ProtocolSuccess>(verdict); }
  const ProtocolSuccess& zones() const { return std::get<ProtocolSuccess>(verdict); }
  const GlobalFailure& failure() const { return std::get<GlobalFailure>(verdict); }
};

/// Throws Disconnected, or std::invalid_argument for k < 1.
DelaunayPhase run_distributed_delaunay(const LocalizedNetwork& net, int k);
/// Throws ProbeLost when a probe does not come back.
ProbePhase run_face_probe(const LocalizedNetwork& net, int k, const DelaunayPhase& delaunay);
ZonePhase run_zone_computation(const LocalizedNetwork& net, int k, const DelaunayPhase& delaunay,
                               const ProbePhase& probes);
/// All three phases; stops at the first global failure.
ProtocolRun run_full_protocol(const LocalizedNetwork& net, int k);

/// One line per round: `round <i>: <msgs> messages, phase <name>`.
void write_protocol_log(std::ostream& out, const ProtocolRun& run);

}  // namespace geoecc
