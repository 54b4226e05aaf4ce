#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stratrelease/distributions.hpp"
#include "stratrelease/geometry.hpp"

namespace stratrelease {

inline constexpr double kThresholdTol = 1e-12;  // threshold / point equality
inline constexpr double kProbTol = 1e-9;        // probability sums

// h(x) = 1[x >= threshold]; the boundary is accepting.
struct ThresholdClassifier {
  double threshold = 0.0;
};

// h(z) = 1[weights . z + bias >= 0].
struct LinearClassifier {
  Vec2 weights;
  double bias = 0.0;
};

// Classifier on a finite point set, given by the accepted locations.
// Used by fixtures whose hypotheses are not threshold functions.
struct TabularClassifier {
  std::vector<double> accepts;  // sorted accepted 1-D locations

  bool accepts_point(double x) const;
};

using Classifier = std::variant<ThresholdClassifier, LinearClassifier, TabularClassifier>;

bool accepts1(const Classifier& c, double x);
bool accepts2(const Classifier& c, Vec2 z);
bool classifier_equal(const Classifier& a, const Classifier& b, double tol = kThresholdTol);

// Asymmetric move costs on a finite point set; c(x, x) = 0, missing pairs
// are infeasible (+inf).
struct CostTable {
  std::map<std::pair<double, double>, double> entries;

  double cost(double from, double to) const;
};

enum class CostKind { Abs1D, PNorm2D, Table };

// Cost of manipulation. Abs1D: k|x' - x|. PNorm2D: ||x - x'||_p with
// p in {1, 2, inf} (inf stored as 0). Table: explicit finite-world costs.
struct CostSpec {
  CostKind kind = CostKind::Abs1D;
  double k = 1.0;
  int pnorm = 2;
  CostTable table;

  double cost1(double from, double to) const;
  double cost2(Vec2 from, Vec2 to) const;
};

CostSpec abs1d_cost(double k = 1.0);
CostSpec pnorm2d_cost(int pnorm = 2);
CostSpec table_cost(CostTable table);

// Shared belief over the classifiers the learner might have deployed.
// Threshold supports are stored sorted ascending; weights follow their
// classifier, and original_index maps back to pre-sort positions.
struct Prior {
  std::vector<Classifier> support;
  std::vector<double> weights;
  std::vector<std::size_t> original_index;

  std::size_t size() const { return support.size(); }
  double threshold_at(std::size_t i) const;
  bool all_thresholds() const;
};

Prior make_prior(std::vector<Classifier> support, std::vector<double> weights);
Prior make_threshold_prior(std::vector<double> thresholds, std::vector<double> weights);

// Prior conditioned on a released subset: weights renormalized over the
// released classifiers, zero elsewhere.
struct Posterior {
  std::vector<std::size_t> released;     // indices into the prior's support
  std::vector<double> weights;           // renormalized, aligned with released
  std::vector<Classifier> classifiers;   // copies of the released classifiers

  std::size_t size() const { return released.size(); }
  double acceptance_prob1(double x) const;
  double acceptance_prob2(Vec2 z) const;
};

// Projects the prior onto the released subset. When `deployed` is given it
// must be a member of the release (truthfulness).
Posterior restrict_posterior(const Prior& prior, const std::vector<std::size_t>& released,
                             std::optional<std::size_t> deployed = std::nullopt);

// Eq.-style quasi-linear agent utility: acceptance probability under the
// posterior minus the move cost.
double agent_utility(double x, double target, const Posterior& posterior, const CostSpec& cost);
double agent_utility(Vec2 x, Vec2 target, const Posterior& posterior, const CostSpec& cost);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

using Domain = std::variant<Interval, Box>;

// Complete game description. The deployed classifier is stored as an index
// into the prior's support, which keeps it in-support by construction.
struct Instance {
  Domain domain;
  Classifier ground_truth;
  std::size_t deployed = 0;
  Prior prior;
  DataDistribution data;
  CostSpec cost;
  // Continuous Uniform[a, b] prior; the discrete support then only carries h.
  std::optional<std::pair<double, double>> prior_interval;
  // Explicit agent points for 2-D instances (their data lives on points, not
  // a 1-D measure).
  std::vector<Vec2> agents;

  const Classifier& deployed_classifier() const { return prior.support[deployed]; }
  double deployed_threshold() const;
  double ground_truth_threshold() const;
  bool is_1d() const { return std::holds_alternative<Interval>(domain); }
  const Interval& interval() const { return std::get<Interval>(domain); }
  const Box& box() const { return std::get<Box>(domain); }
  double domain_diameter() const;
  // Finite-point world: all data mass sits on atoms and agents move only
  // between atom locations.
  bool finite_points() const;
  std::vector<std::size_t> full_release() const;
};

// Validates cross-field invariants (h in support, h >= f for 1-D threshold
// screening, weight sums, cost/domain consistency) and returns the instance.
Instance make_instance(Instance inst);

}  // namespace stratrelease
