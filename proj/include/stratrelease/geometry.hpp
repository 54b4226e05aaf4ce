#pragma once

#include <vector>

namespace stratrelease {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm_l2(Vec2 a);
double norm_l1(Vec2 a);
double norm_linf(Vec2 a);

struct Box {
  Vec2 lo;
  Vec2 hi;
  double diameter() const;
};

// Box inflated by a factor of two around its center; used to bound
// otherwise-unbounded halfplane intersections before projecting.
Box inflate2(const Box& b);

// Closed halfplane {z : normal . z + offset >= 0}.
struct Halfplane {
  Vec2 normal;
  double offset = 0.0;
};

inline double signed_value(const Halfplane& hp, Vec2 p) {
  return dot(hp.normal, p) + hp.offset;
}

// Convex polygon as a CCW vertex loop. Empty when clipped away.
struct ConvexPolygon {
  std::vector<Vec2> vertices;

  bool empty() const { return vertices.size() < 3; }
  double area() const;
  Vec2 centroid() const;
  bool contains(Vec2 p, double tol = 1e-12) const;
};

ConvexPolygon box_polygon(const Box& b);

// Sutherland-Hodgman clip against one closed halfplane.
ConvexPolygon clip(const ConvexPolygon& poly, const Halfplane& hp);

// Nearest point of the polygon under the given norm (p in {1, 2, inf} as
// 1, 2, 0). Interior points project to themselves; otherwise the minimum is
// taken over boundary edges, each solved as a 1-D subproblem.
Vec2 project_onto_polygon(Vec2 p, const ConvexPolygon& poly, int pnorm);

double pnorm_dist(Vec2 a, Vec2 b, int pnorm);

}  // namespace stratrelease
