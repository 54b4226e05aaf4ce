#include "stratrelease/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stratrelease {

double norm_l2(Vec2 a) { return std::hypot(a.x, a.y); }
double norm_l1(Vec2 a) { return std::abs(a.x) + std::abs(a.y); }
double norm_linf(Vec2 a) { return std::max(std::abs(a.x), std::abs(a.y)); }

double pnorm_dist(Vec2 a, Vec2 b, int pnorm) {
  Vec2 d = a - b;
  switch (pnorm) {
    case 1: return norm_l1(d);
    case 2: return norm_l2(d);
    default: return norm_linf(d);
  }
}

double Box::diameter() const { return norm_l2(hi - lo); }

Box inflate2(const Box& b) {
  Vec2 c = 0.5 * (b.lo + b.hi);
  Vec2 half = 0.5 * (b.hi - b.lo);
  return Box{c - 2.0 * half, c + 2.0 * half};
}

ConvexPolygon box_polygon(const Box& b) {
  return ConvexPolygon{{{b.lo.x, b.lo.y}, {b.hi.x, b.lo.y}, {b.hi.x, b.hi.y}, {b.lo.x, b.hi.y}}};
}

double ConvexPolygon::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vec2 p = vertices[i];
    Vec2 q = vertices[(i + 1) % vertices.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

Vec2 ConvexPolygon::centroid() const {
  // Area-weighted centroid; falls back to the vertex mean for slivers.
  double a = 0.0;
  Vec2 c{0.0, 0.0};
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vec2 p = vertices[i];
    Vec2 q = vertices[(i + 1) % vertices.size()];
    double w = p.x * q.y - q.x * p.y;
    a += w;
    c = c + w * (p + q);
  }
  if (std::abs(a) < 1e-300) {
    Vec2 m{0.0, 0.0};
    for (Vec2 v : vertices) m = m + v;
    return (1.0 / static_cast<double>(vertices.size())) * m;
  }
  return (1.0 / (3.0 * a)) * c;
}

bool ConvexPolygon::contains(Vec2 p, double tol) const {
  if (empty()) return false;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vec2 a = vertices[i];
    Vec2 b = vertices[(i + 1) % vertices.size()];
    double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross < -tol) return false;
  }
  return true;
}

ConvexPolygon clip(const ConvexPolygon& poly, const Halfplane& hp) {
  ConvexPolygon out;
  const auto& v = poly.vertices;
  if (v.empty()) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 cur = v[i];
    Vec2 nxt = v[(i + 1) % v.size()];
    double dc = signed_value(hp, cur);
    double dn = signed_value(hp, nxt);
    if (dc >= 0.0) out.vertices.push_back(cur);
    if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
      double t = dc / (dc - dn);
      out.vertices.push_back(cur + t * (nxt - cur));
    }
  }
  // Collapse consecutive duplicates introduced by vertices on the cut line.
  if (!out.vertices.empty()) {
    std::vector<Vec2> dedup;
    for (Vec2 p : out.vertices) {
      if (dedup.empty() || norm_l2(p - dedup.back()) > 1e-12) dedup.push_back(p);
    }
    while (dedup.size() > 1 && norm_l2(dedup.front() - dedup.back()) <= 1e-12) dedup.pop_back();
    out.vertices = std::move(dedup);
  }
  return out;
}

namespace {

// Nearest point on segment [a, b] to p under the requested norm. For L2 this
// is the usual closed form; for L1/Linf the distance along the segment is
// piecewise linear in the parameter, so it suffices to test the endpoints and
// the parameter values where either coordinate difference vanishes.
Vec2 project_onto_segment(Vec2 p, Vec2 a, Vec2 b, int pnorm) {
  Vec2 d = b - a;
  double len2 = dot(d, d);
  if (len2 < 1e-300) return a;
  if (pnorm == 2) {
    double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return a + t * d;
  }
  std::vector<double> ts = {0.0, 1.0};
  if (std::abs(d.x) > 1e-300) ts.push_back(std::clamp((p.x - a.x) / d.x, 0.0, 1.0));
  if (std::abs(d.y) > 1e-300) ts.push_back(std::clamp((p.y - a.y) / d.y, 0.0, 1.0));
  // Linf kinks also sit where |dx(t)| = |dy(t)|.
  double s1 = (d.x - d.y);
  if (std::abs(s1) > 1e-300)
    ts.push_back(std::clamp(((p.x - a.x) - (p.y - a.y)) / s1, 0.0, 1.0));
  double s2 = (d.x + d.y);
  if (std::abs(s2) > 1e-300)
    ts.push_back(std::clamp(((p.x - a.x) + (p.y - a.y)) / s2, 0.0, 1.0));
  double best = std::numeric_limits<double>::infinity();
  Vec2 best_pt = a;
  for (double t : ts) {
    Vec2 q = a + t * d;
    double dist = pnorm_dist(p, q, pnorm);
    if (dist < best) {
      best = dist;
      best_pt = q;
    }
  }
  return best_pt;
}

}  // namespace

Vec2 project_onto_polygon(Vec2 p, const ConvexPolygon& poly, int pnorm) {
  if (poly.contains(p)) return p;
  double best = std::numeric_limits<double>::infinity();
  Vec2 best_pt{};
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec2 q = project_onto_segment(p, v[i], v[(i + 1) % v.size()], pnorm);
    double dist = pnorm_dist(p, q, pnorm);
    if (dist < best) {
      best = dist;
      best_pt = q;
    }
  }
  return best_pt;
}

}  // namespace stratrelease
