#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoecc/types.hpp"

namespace geoecc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateSites : public Error {
 public:
  DuplicateSites(NodeId a, NodeId b)
      : Error("duplicate site positions: " + std::to_string(a) + " and " + std::to_string(b)), ids{a, b} {}
  std::vector<NodeId> ids;
};

class SiteOutsideBox : public Error {
 public:
  explicit SiteOutsideBox(NodeId id) : Error("site " + std::to_string(id) + " outside bounding box"), id(id) {}
  NodeId id;
};

class OutsideBox : public Error {
 public:
  OutsideBox() : Error("segment endpoint outside bounding box") {}
};

class Disconnected : public Error {
 public:
  Disconnected() : Error("communication graph is disconnected") {}
};

class ConnectivityExhausted : public Error {
 public:
  explicit ConnectivityExhausted(int attempts)
      : Error("no connected network after " + std::to_string(attempts) + " attempts"), attempts(attempts) {}
  int attempts;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class GeocastViolation : public Error {
 public:
  GeocastViolation(NodeId u, NodeId nearest)
      : Error("nearest node " + std::to_string(nearest) + " is not known to node " + std::to_string(u)) {}
};

class HandoverStuck : public Error {
 public:
  explicit HandoverStuck(NodeId u) : Error("no handover neighbor for node " + std::to_string(u)) {}
};

class PerimeterLoop : public Error {
 public:
  PerimeterLoop() : Error("perimeter walk closed without progress") {}
  explicit PerimeterLoop(Point2 at) : Error("perimeter walk closed without progress"), at(at) {}
  std::optional<Point2> at;  // where the walk started
};

class ProbeLost : public Error {
 public:
  explicit ProbeLost(NodeId initiator)
      : Error("face probe from node " + std::to_string(initiator) + " exceeded its step budget") {}
};

}  // namespace geoecc
