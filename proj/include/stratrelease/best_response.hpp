#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stratrelease/core.hpp"
#include "stratrelease/geometry.hpp"
#include "stratrelease/oracle.hpp"

namespace stratrelease {

// Hard cap on subset enumeration; 2^n oracle calls beyond this are refused.
inline constexpr std::size_t kBruteForceMaxSupport = 20;

struct BestResponse {
  Vec2 target;                       // y unused in 1-D
  double utility = 0.0;
  double cost = 0.0;
  std::vector<std::size_t> passed;   // prior-support indices accepted at target
  std::int64_t oracle_calls = 0;
};

// One element of the halfplane arrangement partition.
struct Cell {
  std::uint64_t sign_mask = 0;  // bit i set iff classifier i accepts the cell
  ConvexPolygon polygon;
  Vec2 representative;

  bool accepts(std::size_t i) const { return (sign_mask >> i) & 1u; }
};

// Exhaustive search over released subsets, one oracle call per subset.
// Utility is re-evaluated at the returned point's actual acceptance pattern;
// ties break to lowest cost, then lexicographically smallest target.
BestResponse br_bruteforce(double x, const Posterior& posterior, const CostSpec& cost,
                           double domain_diameter = 1.0);
BestResponse br_bruteforce(Vec2 x, const Posterior& posterior, const CostSpec& cost,
                           const Box& bbox);

// O(n) 1-D solver: the best response is x itself or a posterior-support
// threshold strictly above x; ties go to the smallest target.
BestResponse br_threshold_scan(double x, const Posterior& posterior, double k);

// Closed-form best response under a continuous Uniform[c, d] posterior of
// threshold classifiers: stay when d - c >= 1/k, else move to d exactly when
// d - 1/k < x < d.
BestResponse br_interval_uniform(double x, double c, double d, double k = 1.0);

// Incremental arrangement of the classifier boundary lines inside the box.
// Cell count is at most 1 + n(n+1)/2.
std::vector<Cell> build_arrangement(const std::vector<Classifier>& classifiers, const Box& bbox);

// Arrangement-based exact 2-D solver: one oracle projection per cell.
BestResponse br_linear_2d(Vec2 x, const Posterior& posterior, const Box& bbox,
                          const CostSpec& cost);

struct VSubmodularityReport {
  bool submodular = true;
  std::int64_t checks = 0;
  // First violation found, when any.
  struct Violation {
    double x1 = 0.0, x2 = 0.0;        // agent point (x2 unused in 1-D)
    std::uint64_t subset = 0;          // S
    std::uint64_t superset = 0;        // S'
    std::size_t added = 0;             // h'
    double lhs = 0.0, rhs = 0.0;       // marginal on S vs. marginal on S'
  };
  std::optional<Violation> violation;
};

// Verifies c(x, S u {h'}) - c(x, S) >= c(x, S' u {h'}) - c(x, S') over all
// S subset of S', h' outside S'. Exhaustive up to |V| = 12, randomized
// triples (seeded) beyond that.
VSubmodularityReport check_v_submodular(const CostSpec& cost, const std::vector<Classifier>& V,
                                        const std::vector<double>& x_samples,
                                        std::uint64_t seed = 0, std::size_t random_trials = 20000);
VSubmodularityReport check_v_submodular(const CostSpec& cost, const std::vector<Classifier>& V,
                                        const std::vector<Vec2>& x_samples, const Box& bbox,
                                        std::uint64_t seed = 0, std::size_t random_trials = 20000);

// Approximate solver for V-submodular costs: projected subgradient descent on
// the Lovasz extension of c(x, S) - P(S), rounding to the best threshold
// level set seen. Output utility is within epsilon of the optimum when the
// cost is V-submodular over the posterior support.
BestResponse br_submodular_approx(double x, const Posterior& posterior, const CostSpec& cost,
                                  double epsilon, std::uint64_t seed);

}  // namespace stratrelease
