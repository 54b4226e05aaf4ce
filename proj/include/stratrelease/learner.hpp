#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratrelease/core.hpp"

namespace stratrelease {

enum class Objective { Accuracy, Fpr, Fnr };

Objective parse_objective(const std::string& name);
std::string objective_name(Objective o);

// One examined release candidate; Alg.-3 rows carry (i, l, j) and keep
// rejected cells with their reason for auditability.
struct CandidateRow {
  std::size_t id = 0;
  std::vector<std::size_t> released;
  std::optional<int> i, l, j;            // 1-based positions in the sorted support
  double cutoff = 0.0;                   // unclamped candidate cutoff
  double utility = 0.0;
  std::string rejected_reason;           // empty when the candidate is valid
  bool rejected() const { return !rejected_reason.empty(); }
};

struct ReleaseReport {
  std::vector<std::size_t> released;                    // prior-support indices
  std::optional<std::pair<double, double>> released_interval;  // continuous case
  double cutoff = 0.0;   // manipulation cutoff R_H, clamped to the domain
  double utility = 0.0;
  double fpr = 0.0;      // NaN when the corresponding class is empty
  double fnr = 0.0;
  std::vector<CandidateRow> candidates;
};

// All release metrics evaluated together (they share the cutoff).
struct ReleaseEvaluation {
  double cutoff_raw = 0.0;  // indifference point, may lie below the domain
  double cutoff = 0.0;      // clamped for reporting
  double utility = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
};

ReleaseEvaluation evaluate_release(const Instance& inst, const std::vector<std::size_t>& released);

// Infimum agent position whose best response reaches the deployed threshold,
// computed in closed form from the posterior CDF; clamped to the domain
// lower bound.
double compute_cutoff(const Instance& inst, const std::vector<std::size_t>& released);
// Same without the clamp; used by the utility formulas, which need the exact
// indifference point even when it falls below the domain.
double compute_cutoff_raw(const Instance& inst, const std::vector<std::size_t>& released);

// Expected strategic accuracy of releasing the subset. Finite-point
// instances are evaluated by direct per-atom best response; interval
// instances through the cutoff formula.
double release_utility(const Instance& inst, const std::vector<std::size_t>& released);

// Conditional error rates after manipulation; throw on an empty class.
double release_fpr(const Instance& inst, const std::vector<std::size_t>& released);
double release_fnr(const Instance& inst, const std::vector<std::size_t>& released);

// Enumerates every subset containing the deployed classifier (n <= 20).
// Ties break to the smallest subset, then lexicographic index order.
ReleaseReport optimize_release_bruteforce(const Instance& inst, Objective objective);

// O(n^3) exact optimizer for uniform priors: enumerates candidate cutoffs
// R = h_i - j/(k l) and constructs the canonical release for each.
ReleaseReport optimize_release_uniform(const Instance& inst);

// Closed-form optimal release for a continuous Uniform[a, b] prior.
ReleaseReport optimal_interval_release(double a, double b, double f, double h,
                                       const DataDistribution& data, double k = 1.0);

// Learner utility of releasing [c, d] from a continuous Uniform prior.
double interval_release_utility(double c, double d, double f, double h,
                                const DataDistribution& data, double k = 1.0);

// Hard screening instance built from a subset-sum input: the optimizer
// reaches utility 1 iff some subset of `a` sums to half the total.
Instance generate_subset_sum_instance(const std::vector<long long>& a);
bool subset_sum_feasible(const std::vector<long long>& a);

}  // namespace stratrelease
