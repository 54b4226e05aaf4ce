#pragma once

// Independent oracles used by the tests: plain grid searches and direct
// definitions, kept free of the solver code paths they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stratrelease/best_response.hpp"
#include "stratrelease/core.hpp"
#include "stratrelease/learner.hpp"

namespace testutil {

using namespace stratrelease;

// Smallest x (on a refined grid) whose scanned best response reaches the
// deployed threshold; brackets the transition then bisects.
inline double grid_cutoff(const Instance& inst, const std::vector<std::size_t>& released,
                          double coarse_step = 1e-3) {
  Posterior post = restrict_posterior(inst.prior, released, inst.deployed);
  double h = inst.deployed_threshold();
  double lo = inst.interval().lo;
  double hi = inst.interval().hi;
  auto reaches = [&](double x) { return br_threshold_scan(x, post, inst.cost.k).target.x >= h; };
  if (reaches(lo)) return lo;
  double a = lo, b = hi;
  for (double x = lo; x <= hi + 1e-12; x += coarse_step) {
    if (reaches(x)) {
      b = x;
      break;
    }
    a = x;
  }
  for (int it = 0; it < 80; ++it) {
    double m = 0.5 * (a + b);
    (reaches(m) ? b : a) = m;
  }
  return b;
}

// Two-stage grid minimum of the p-norm distance from x over the region
// {all positives accept, all negatives reject} inside the inflated box.
inline double grid_min_cost_2d(Vec2 x, const std::vector<Classifier>& classifiers,
                               const Region& region, const Box& bbox, int pnorm) {
  Box big = inflate2(bbox);
  auto feasible = [&](Vec2 z) {
    for (std::size_t i : region.positive_indices)
      if (!accepts2(classifiers[i], z)) return false;
    for (std::size_t i : region.negative_indices)
      if (accepts2(classifiers[i], z)) return false;
    return true;
  };
  auto scan = [&](Vec2 lo, Vec2 hi, int steps) {
    double best = std::numeric_limits<double>::infinity();
    Vec2 best_pt{};
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        Vec2 z{lo.x + (hi.x - lo.x) * i / steps, lo.y + (hi.y - lo.y) * j / steps};
        if (!feasible(z)) continue;
        double d = pnorm_dist(x, z, pnorm);
        if (d < best) {
          best = d;
          best_pt = z;
        }
      }
    }
    return std::make_pair(best, best_pt);
  };
  auto [coarse, at] = scan(big.lo, big.hi, 400);
  if (!std::isfinite(coarse)) return coarse;
  double cell = std::max(big.hi.x - big.lo.x, big.hi.y - big.lo.y) / 400.0;
  auto [fine, at2] = scan({at.x - cell, at.y - cell}, {at.x + cell, at.y + cell}, 200);
  double cell2 = 2.0 * cell / 200.0;
  auto [finer, at3] = scan({at2.x - cell2, at2.y - cell2}, {at2.x + cell2, at2.y + cell2}, 100);
  (void)at3;
  return std::min({coarse, fine, finer});
}

// Definition-level best response on a 1-D threshold posterior: argmax of the
// utility over a dense target grid joined with the exact candidate set.
inline double grid_br_1d(double x, const Posterior& post, const CostSpec& cost, double lo,
                         double hi, double step = 1e-4) {
  double best_u = -std::numeric_limits<double>::infinity();
  double best_cost = std::numeric_limits<double>::infinity();
  double best_z = x;
  auto consider = [&](double z) {
    if (z < x) return;
    double u = agent_utility(x, z, post, cost);
    double c = cost.cost1(x, z);
    if (u > best_u + 1e-12 ||
        (std::abs(u - best_u) <= 1e-12 && (c < best_cost - 1e-12 ||
                                           (std::abs(c - best_cost) <= 1e-12 && z < best_z)))) {
      best_u = u;
      best_cost = c;
      best_z = z;
    }
  };
  consider(x);
  for (double z = lo; z <= hi + 1e-12; z += step) consider(z);
  for (const auto& c : post.classifiers)
    consider(std::get<ThresholdClassifier>(c).threshold);
  return best_z;
}

}  // namespace testutil
