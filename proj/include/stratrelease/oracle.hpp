#pragma once

#include <vector>

#include "stratrelease/core.hpp"
#include "stratrelease/geometry.hpp"

namespace stratrelease {

// Region given by required-positive and required-negative classifier indices.
struct Region {
  std::vector<std::size_t> positive_indices;
  std::vector<std::size_t> negative_indices;
};

struct Projection {
  Vec2 point;               // y unused for 1-D projections
  double cost = 0.0;
  bool feasible = false;
  bool retracted = false;   // point was eps-shifted off a strict boundary
  bool region_empty = true; // the constraint region itself is empty
  // The nearest feasible point sits on the inflated clipping box, so the
  // true (unbounded) region extends past it.
  bool on_inflated_boundary = false;
};

// Min-cost point whose acceptance pattern satisfies the region, for
// threshold classifiers under the scaled absolute cost. The region reduces
// to [max positive threshold, min negative threshold); a projection landing
// on the open right end is retracted by eps into the region.
Projection project_1d(double x, const std::vector<Classifier>& classifiers, const Region& region,
                      const CostSpec& cost, double domain_diameter = 1.0);

// Same for linear classifiers: the bounding box (inflated x2) is clipped by
// every constraint halfplane, then x is projected onto the resulting convex
// polygon under the p-norm cost.
Projection project_2d(Vec2 x, const std::vector<Classifier>& classifiers, const Region& region,
                      const Box& bbox, const CostSpec& cost);

// Min cost for x to pass every classifier in `subset` (one oracle call with
// all-positive constraints); +inf when infeasible.
double induced_cost(double x, const std::vector<Classifier>& classifiers,
                    const std::vector<std::size_t>& subset, const CostSpec& cost,
                    double domain_diameter = 1.0);
double induced_cost(Vec2 x, const std::vector<Classifier>& classifiers,
                    const std::vector<std::size_t>& subset, const Box& bbox,
                    const CostSpec& cost);

// Finite-world variant: candidate targets are the given locations.
double induced_cost_table(double x, const std::vector<Classifier>& classifiers,
                          const std::vector<std::size_t>& subset,
                          const std::vector<double>& locations, const CostSpec& cost,
                          double* best_target = nullptr);

}  // namespace stratrelease
