#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace geoecc {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline Point2 lerp(Point2 a, Point2 b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

struct Segment {
  Point2 a;
  Point2 b;
};

struct BoundingBox {
  Point2 min;
  Point2 max;

  bool contains(Point2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double diagonal() const { return std::hypot(width(), height()); }
  BoundingBox inflated(double margin) const {
    return {{min.x - margin, min.y - margin}, {max.x + margin, max.y + margin}};
  }
};

// Unordered node pair stored with first < second.
struct NodePair {
  NodeId first = kNoNode;
  NodeId second = kNoNode;

  static NodePair of(NodeId a, NodeId b) { return a < b ? NodePair{a, b} : NodePair{b, a}; }
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

}  // namespace geoecc
