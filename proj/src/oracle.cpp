#include "stratrelease/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stratrelease/errors.hpp"

namespace stratrelease {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double retraction_eps(double diameter) { return 1e-9 * std::max(1.0, diameter); }

}  // namespace

Projection project_1d(double x, const std::vector<Classifier>& classifiers, const Region& region,
                      const CostSpec& cost, double domain_diameter) {
  if (cost.kind != CostKind::Abs1D)
    throw ValidationError("project_1d: cost kind must be scaled-absolute-1d");
  double lo = -kInf;  // max positive threshold, inclusive
  double hi = kInf;   // min negative threshold, exclusive
  for (std::size_t i : region.positive_indices)
    lo = std::max(lo, std::get<ThresholdClassifier>(classifiers[i]).threshold);
  for (std::size_t i : region.negative_indices)
    hi = std::min(hi, std::get<ThresholdClassifier>(classifiers[i]).threshold);

  Projection out;
  if (lo >= hi) return out;  // empty [lo, hi)
  out.region_empty = false;

  double z = x;
  if (z < lo) z = lo;
  if (z >= hi) {
    z = hi - retraction_eps(domain_diameter);
    out.retracted = true;
    if (z < lo) return Projection{};  // interval thinner than the retraction
  }
  out.point = {z, 0.0};
  out.cost = cost.cost1(x, z);
  out.feasible = true;
  return out;
}

Projection project_2d(Vec2 x, const std::vector<Classifier>& classifiers, const Region& region,
                      const Box& bbox, const CostSpec& cost) {
  if (cost.kind != CostKind::PNorm2D)
    throw ValidationError("project_2d: cost kind must be p-norm-2d");

  Box big = inflate2(bbox);
  ConvexPolygon poly = box_polygon(big);
  std::vector<Halfplane> strict;  // negative-side constraints, open in truth
  for (std::size_t i : region.positive_indices) {
    const auto& l = std::get<LinearClassifier>(classifiers[i]);
    poly = clip(poly, Halfplane{l.weights, l.bias});
    if (poly.empty()) return Projection{};
  }
  for (std::size_t i : region.negative_indices) {
    const auto& l = std::get<LinearClassifier>(classifiers[i]);
    // closure of {z : h_i(z) = 0}, i.e. w.z + b <= 0
    Halfplane flipped{{-l.weights.x, -l.weights.y}, -l.bias};
    poly = clip(poly, flipped);
    if (poly.empty()) return Projection{};
    strict.push_back(Halfplane{l.weights, l.bias});
  }

  Vec2 z = project_onto_polygon(x, poly, cost.pnorm);

  Projection out;
  out.region_empty = false;

  auto pattern_holds = [&](Vec2 p) {
    for (std::size_t i : region.positive_indices)
      if (!accepts2(classifiers[i], p)) return false;
    for (std::size_t i : region.negative_indices)
      if (accepts2(classifiers[i], p)) return false;
    return true;
  };

  // Boundary landings need cleanup: clip noise can leave the point a last
  // bit outside a closed positive halfplane, and strict negative boundaries
  // are open, so the minimum there is not attained. Blending toward the
  // polygon interior fixes both at once; the ladder starts near the eps
  // retraction scale and escalates only if the pattern still fails.
  if (!pattern_holds(z)) {
    bool off_strict = false;
    for (const auto& hp : strict) off_strict = off_strict || signed_value(hp, z) >= 0.0;
    Vec2 centroid = poly.centroid();
    for (double t : {1e-12, 1e-9, 1e-7, 1e-5}) {
      Vec2 zt = z + t * (centroid - z);
      if (pattern_holds(zt)) {
        z = zt;
        out.retracted = off_strict;
        break;
      }
    }
  }

  bool pattern_ok = pattern_holds(z);

  out.point = z;
  out.cost = cost.cost2(x, z);
  out.feasible = pattern_ok;
  double btol = 1e-9 * std::max(1.0, big.diameter());
  out.on_inflated_boundary = std::abs(z.x - big.lo.x) <= btol || std::abs(z.x - big.hi.x) <= btol ||
                             std::abs(z.y - big.lo.y) <= btol || std::abs(z.y - big.hi.y) <= btol;
  return out;
}

double induced_cost(double x, const std::vector<Classifier>& classifiers,
                    const std::vector<std::size_t>& subset, const CostSpec& cost,
                    double domain_diameter) {
  Region r{subset, {}};
  Projection p = project_1d(x, classifiers, r, cost, domain_diameter);
  return p.feasible ? p.cost : kInf;
}

double induced_cost(Vec2 x, const std::vector<Classifier>& classifiers,
                    const std::vector<std::size_t>& subset, const Box& bbox,
                    const CostSpec& cost) {
  Region r{subset, {}};
  Projection p = project_2d(x, classifiers, r, bbox, cost);
  return p.feasible ? p.cost : kInf;
}

double induced_cost_table(double x, const std::vector<Classifier>& classifiers,
                          const std::vector<std::size_t>& subset,
                          const std::vector<double>& locations, const CostSpec& cost,
                          double* best_target) {
  double best = kInf;
  double target = x;
  for (double z : locations) {
    bool ok = true;
    for (std::size_t i : subset) ok = ok && accepts1(classifiers[i], z);
    if (!ok) continue;
    double c = cost.cost1(x, z);
    if (c < best || (c == best && z < target)) {
      best = c;
      target = z;
    }
  }
  if (best_target) *best_target = target;
  return best;
}

}  // namespace stratrelease
