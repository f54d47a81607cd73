#include "geoecc/predicates.hpp"

#include <gmpxx.h>

#include <cmath>

namespace geoecc::predicates {
namespace {

constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;
// Relative filter for the segment-pencil expressions. Every operand is
// formed from differences of input doubles (relative error eps each) and at
// most a few products and sums, so the rounding error is far below this.
constexpr double kPencilBound = 1e-13;

int sign_of(double v) { return (v > 0) - (v < 0); }
int sign_of(const mpq_class& v) { return sgn(v); }

mpq_class q(double v) { return mpq_class(v); }

int orient_exact(Point2 a, Point2 b, Point2 c) {
  mpq_class l = (q(a.x) - q(c.x)) * (q(b.y) - q(c.y));
  mpq_class r = (q(a.y) - q(c.y)) * (q(b.x) - q(c.x));
  return sign_of(mpq_class(l - r));
}

int incircle_exact(Point2 a, Point2 b, Point2 c, Point2 d) {
  mpq_class adx = q(a.x) - q(d.x), ady = q(a.y) - q(d.y);
  mpq_class bdx = q(b.x) - q(d.x), bdy = q(b.y) - q(d.y);
  mpq_class cdx = q(c.x) - q(d.x), cdy = q(c.y) - q(d.y);
  mpq_class alift = adx * adx + ady * ady;
  mpq_class blift = bdx * bdx + bdy * bdy;
  mpq_class clift = cdx * cdx + cdy * cdy;
  mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                  clift * (adx * bdy - bdx * ady);
  return sign_of(det);
}

// Exact pencil quantities relative to p.
struct ExactPencil {
  mpq_class px, py, dx, dy;
  ExactPencil(Point2 p, Point2 qq) : px(q(p.x)), py(q(p.y)), dx(q(qq.x) - px), dy(q(qq.y) - py) {}
  mpq_class a(Point2 s) const {
    mpq_class sx = q(s.x) - px, sy = q(s.y) - py;
    return sx * sx + sy * sy;
  }
  mpq_class b(Point2 s) const { return dx * (q(s.x) - px) + dy * (q(s.y) - py); }
};

struct ApproxTerm {
  double value;
  double magnitude;
};

}  // namespace

int orient2d(Point2 a, Point2 b, Point2 c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  const double detsum = std::abs(detleft) + std::abs(detright);
  if (std::abs(det) > kOrientBound * detsum) return sign_of(det);
  return orient_exact(a, b, c);
}

int incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  // The static bound covers the translated inputs; translation itself is
  // relative-exact up to eps, absorbed by a factor of two.
  if (std::abs(det) > 2.0 * kIncircleBound * permanent) return sign_of(det);
  return incircle_exact(a, b, c, d);
}

int compare_distance(Point2 p, Point2 x, Point2 y) {
  const double xx = x.x - p.x, xy = x.y - p.y, yx = y.x - p.x, yy = y.y - p.y;
  const double ax = xx * xx + xy * xy, ay = yx * yx + yy * yy;
  const double diff = ax - ay;
  if (std::abs(diff) > kPencilBound * (ax + ay)) return sign_of(diff);
  ExactPencil e(p, p);
  return sign_of(mpq_class(e.a(x) - e.a(y)));
}

int compare_along(Point2 dir, Point2 x, Point2 y) {
  const double l = dir.x * x.x + dir.y * x.y;
  const double r = dir.x * y.x + dir.y * y.y;
  const double mag = std::abs(dir.x * x.x) + std::abs(dir.y * x.y) + std::abs(dir.x * y.x) +
                     std::abs(dir.y * y.y);
  const double diff = l - r;
  if (std::abs(diff) > kPencilBound * mag) return sign_of(diff);
  mpq_class v = q(dir.x) * (q(x.x) - q(y.x)) + q(dir.y) * (q(x.y) - q(y.y));
  return sign_of(v);
}

int diametral(Point2 u, Point2 v, Point2 w) {
  const double ax = w.x - u.x, ay = w.y - u.y, bx = w.x - v.x, by = w.y - v.y;
  const double l = ax * bx, r = ay * by;
  const double val = l + r;
  if (std::abs(val) > kPencilBound * (std::abs(l) + std::abs(r))) return sign_of(val);
  mpq_class e = (q(w.x) - q(u.x)) * (q(w.x) - q(v.x)) + (q(w.y) - q(u.y)) * (q(w.y) - q(v.y));
  return sign_of(e);
}

namespace {

struct PencilApprox {
  double dx, dy, px, py;
  PencilApprox(Point2 p, Point2 qq) : dx(qq.x - p.x), dy(qq.y - p.y), px(p.x), py(p.y) {}
  ApproxTerm a(Point2 s) const {
    const double sx = s.x - px, sy = s.y - py;
    const double v = sx * sx + sy * sy;
    return {v, v};
  }
  ApproxTerm b(Point2 s) const {
    const double sx = s.x - px, sy = s.y - py;
    return {dx * sx + dy * sy, std::abs(dx * sx) + std::abs(dy * sy)};
  }
};

ApproxTerm diff(ApproxTerm l, ApproxTerm r) { return {l.value - r.value, l.magnitude + r.magnitude}; }

}  // namespace

int SegmentPencil::compare_slope(Point2 x, Point2 y) const {
  PencilApprox ap(p_, q_);
  ApproxTerm d = diff(ap.b(x), ap.b(y));
  if (std::abs(d.value) > kPencilBound * d.magnitude) return sign_of(d.value);
  ExactPencil ex(p_, q_);
  return sign_of(mpq_class(ex.b(x) - ex.b(y)));
}

int SegmentPencil::crossing_det(Point2 c, Point2 w, Point2 x) const {
  PencilApprox ap(p_, q_);
  const ApproxTerm ac = ap.a(c), bc = ap.b(c);
  const ApproxTerm dax = diff(ap.a(x), ac), dbx = diff(ap.b(x), bc);
  const ApproxTerm daw = diff(ap.a(w), ac), dbw = diff(ap.b(w), bc);
  const double v = dax.value * dbw.value - dbx.value * daw.value;
  const double mag = dax.magnitude * dbw.magnitude + dbx.magnitude * daw.magnitude;
  if (std::abs(v) > kPencilBound * mag) return sign_of(v);
  ExactPencil ex(p_, q_);
  const mpq_class eac = ex.a(c), ebc = ex.b(c);
  mpq_class r = (ex.a(x) - eac) * (ex.b(w) - ebc) - (ex.b(x) - ebc) * (ex.a(w) - eac);
  return sign_of(r);
}

int SegmentPencil::compare_crossing_to(Point2 c, Point2 w, int t0) const {
  PencilApprox ap(p_, q_);
  const ApproxTerm da = diff(ap.a(w), ap.a(c));
  if (t0 == 0) {
    if (std::abs(da.value) > kPencilBound * da.magnitude) return sign_of(da.value);
    ExactPencil ex(p_, q_);
    return sign_of(mpq_class(ex.a(w) - ex.a(c)));
  }
  const ApproxTerm db = diff(ap.b(w), ap.b(c));
  const double v = da.value - 2.0 * db.value;
  const double mag = da.magnitude + 2.0 * db.magnitude;
  if (std::abs(v) > kPencilBound * mag) return sign_of(v);
  ExactPencil ex(p_, q_);
  mpq_class r = (ex.a(w) - ex.a(c)) - 2 * (ex.b(w) - ex.b(c));
  return sign_of(r);
}

double SegmentPencil::crossing_time(Point2 c, Point2 w) const {
  PencilApprox ap(p_, q_);
  const double da = ap.a(w).value - ap.a(c).value;
  const double db = ap.b(w).value - ap.b(c).value;
  return da / (2.0 * db);
}

}  // namespace geoecc::predicates
