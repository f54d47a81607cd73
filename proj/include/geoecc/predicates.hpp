#pragma once

#include "geoecc/types.hpp"

namespace geoecc::predicates {

// Sign of the orientation determinant: +1 if (a, b, c) turn counterclockwise,
// -1 clockwise, 0 collinear. Exact for all finite double inputs.
int orient2d(Point2 a, Point2 b, Point2 c);

// +1 if d lies strictly inside the circle through a, b, c (given
// counterclockwise), -1 strictly outside, 0 on the circle. Exact.
int incircle(Point2 a, Point2 b, Point2 c, Point2 d);

// sign(|x - p|^2 - |y - p|^2). Exact.
int compare_distance(Point2 p, Point2 x, Point2 y);

// sign(dir . (x - y)). Exact.
int compare_along(Point2 dir, Point2 x, Point2 y);

// sign((w - u).(w - v)): negative iff w is strictly inside the disc with
// diameter [u, v]. Exact.
int diametral(Point2 u, Point2 v, Point2 w);

// Queries on the one-parameter family P(t) = p + t (q - p). Every site s
// induces the line h_s(t) = |s - p|^2 - 2 t (q - p).(s - p), which is the
// squared distance |P(t) - s|^2 minus a term common to all sites, so the
// nearest site along the segment is the lower envelope of these lines.
class SegmentPencil {
 public:
  SegmentPencil(Point2 p, Point2 q) : p_(p), q_(q) {}

  // sign(slope_x - slope_y) where slope = (q - p).(s - p); a larger slope
  // means the site gets closer faster.
  int compare_slope(Point2 x, Point2 y) const;

  // Sign of h_x(t) - h_c(t) evaluated at the crossing time of c and w.
  // Requires slope(w) != slope(c). Zero means x is tied with c and w there.
  // Also orders crossing times: for slope(x) > slope(c) and
  // slope(w) > slope(c), the result is sign(t_cross(c,x) - t_cross(c,w)).
  int crossing_det(Point2 c, Point2 w, Point2 x) const;

  // sign(t_cross(c, w) - t0) for t0 in {0, 1}; requires slope(w) > slope(c).
  int compare_crossing_to(Point2 c, Point2 w, int t0) const;

  // Sign of h_x(0) - h_c(0), i.e. compare_distance at p.
  int compare_at_start(Point2 c, Point2 x) const { return compare_distance(p_, x, c); }

  // Sign of h_x(1) - h_c(1).
  int compare_at_end(Point2 c, Point2 x) const { return compare_distance(q_, x, c); }

  // Floating approximation of the crossing parameter of c and w.
  double crossing_time(Point2 c, Point2 w) const;

  Point2 start() const { return p_; }
  Point2 end() const { return q_; }

 private:
  Point2 p_, q_;
};

}  // namespace geoecc::predicates
