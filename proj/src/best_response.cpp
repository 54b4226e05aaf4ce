#include "stratrelease/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "stratrelease/errors.hpp"

namespace stratrelease {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// utility desc, then cost asc, then lexicographically smallest target
bool better_candidate(double u, double c, Vec2 p, double bu, double bc, Vec2 bp) {
  if (u != bu) return u > bu;
  if (c != bc) return c < bc;
  return lex_less(p, bp);
}

std::vector<std::size_t> passed_at1(const Posterior& post, double z) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < post.size(); ++i) {
    if (accepts1(post.classifiers[i], z)) out.push_back(post.released[i]);
  }
  return out;
}

std::vector<std::size_t> passed_at2(const Posterior& post, Vec2 z) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < post.size(); ++i) {
    if (accepts2(post.classifiers[i], z)) out.push_back(post.released[i]);
  }
  return out;
}

void guard_support(std::size_t n) {
  if (n > kBruteForceMaxSupport)
    throw CapabilityError("support-too-large: brute force is capped at n = 20");
}

// Candidate target locations of a finite-point world: everything named by
// the cost table or a tabular classifier, plus the agent itself.
std::vector<double> finite_world_locations(double x, const std::vector<Classifier>& classifiers,
                                           const CostSpec& cost) {
  std::set<double> locs{x};
  for (const auto& [key, c] : cost.table.entries) {
    locs.insert(key.first);
    locs.insert(key.second);
  }
  for (const auto& c : classifiers) {
    if (const auto* tab = std::get_if<TabularClassifier>(&c))
      locs.insert(tab->accepts.begin(), tab->accepts.end());
  }
  return {locs.begin(), locs.end()};
}

}  // namespace

BestResponse br_bruteforce(double x, const Posterior& posterior, const CostSpec& cost,
                           double domain_diameter) {
  guard_support(posterior.size());
  const std::size_t n = posterior.size();
  BestResponse best;
  best.target = {x, 0.0};
  best.utility = -kInf;
  best.cost = kInf;

  std::vector<double> table_locs;
  if (cost.kind == CostKind::Table)
    table_locs = finite_world_locations(x, posterior.classifiers, cost);

  std::vector<std::size_t> subset;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) subset.push_back(i);
    }
    double z = x;
    double c;
    if (cost.kind == CostKind::Table) {
      c = induced_cost_table(x, posterior.classifiers, subset, table_locs, cost, &z);
    } else {
      Projection p = project_1d(x, posterior.classifiers, Region{subset, {}}, cost,
                                domain_diameter);
      c = p.feasible ? p.cost : kInf;
      z = p.point.x;
    }
    best.oracle_calls++;
    if (!std::isfinite(c)) continue;
    double u = posterior.acceptance_prob1(z) - cost.cost1(x, z);
    double move = cost.cost1(x, z);
    if (better_candidate(u, move, {z, 0.0}, best.utility, best.cost, best.target)) {
      best.utility = u;
      best.cost = move;
      best.target = {z, 0.0};
    }
  }
  best.passed = passed_at1(posterior, best.target.x);
  return best;
}

BestResponse br_bruteforce(Vec2 x, const Posterior& posterior, const CostSpec& cost,
                           const Box& bbox) {
  guard_support(posterior.size());
  const std::size_t n = posterior.size();
  BestResponse best;
  best.target = x;
  best.utility = -kInf;
  best.cost = kInf;

  std::vector<std::size_t> subset;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) subset.push_back(i);
    }
    Projection p = project_2d(x, posterior.classifiers, Region{subset, {}}, bbox, cost);
    best.oracle_calls++;
    if (p.region_empty) continue;
    double move = cost.cost2(x, p.point);
    double u = posterior.acceptance_prob2(p.point) - move;
    if (better_candidate(u, move, p.point, best.utility, best.cost, best.target)) {
      best.utility = u;
      best.cost = move;
      best.target = p.point;
    }
  }
  best.passed = passed_at2(posterior, best.target);
  return best;
}

BestResponse br_threshold_scan(double x, const Posterior& posterior, double k) {
  // Compare candidates through phi(z) = P[accept at z] - k z, which is
  // independent of x; this keeps monotonicity and overtaking exact.
  double best_phi = posterior.acceptance_prob1(x) - k * x;
  double best_t = x;
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    double t = std::get<ThresholdClassifier>(posterior.classifiers[i]).threshold;
    if (t <= x) continue;
    double phi = posterior.acceptance_prob1(t) - k * t;
    if (phi > best_phi) {  // strict: ties keep the smaller target
      best_phi = phi;
      best_t = t;
    }
  }
  BestResponse out;
  out.target = {best_t, 0.0};
  out.cost = k * (best_t - x);
  out.utility = posterior.acceptance_prob1(best_t) - out.cost;
  out.passed = passed_at1(posterior, best_t);
  return out;
}

BestResponse br_interval_uniform(double x, double c, double d, double k) {
  if (!(c <= d)) throw ValidationError("br_interval_uniform: requires c <= d");
  if (!(k > 0.0)) throw ValidationError("br_interval_uniform: requires k > 0");
  double target = x;
  if (d - c < 1.0 / k && d - 1.0 / k < x && x < d) target = d;

  auto cdf = [&](double z) {
    if (d == c) return z >= d ? 1.0 : 0.0;
    return std::clamp((z - c) / (d - c), 0.0, 1.0);
  };
  BestResponse out;
  out.target = {target, 0.0};
  out.cost = k * (target - x);
  out.utility = cdf(target) - out.cost;
  return out;
}

std::vector<Cell> build_arrangement(const std::vector<Classifier>& classifiers, const Box& bbox) {
  if (classifiers.size() > 64)
    throw CapabilityError("build_arrangement: capped at 64 classifiers");
  double tol = 1e-12 * std::max(1.0, bbox.diameter());

  std::vector<Cell> cells{Cell{0, box_polygon(bbox), {}}};
  for (std::size_t i = 0; i < classifiers.size(); ++i) {
    const auto* lin = std::get_if<LinearClassifier>(&classifiers[i]);
    if (!lin) throw ValidationError("build_arrangement: classifiers must be linear");
    double wn = norm_l2(lin->weights);
    if (wn <= 0.0) throw ValidationError("build_arrangement: degenerate (zero-weight) line");
    Halfplane hp{(1.0 / wn) * lin->weights, lin->bias / wn};

    std::vector<Cell> next;
    next.reserve(cells.size() + i + 1);
    for (Cell& cell : cells) {
      bool pos = false, neg = false;
      for (Vec2 v : cell.polygon.vertices) {
        double s = signed_value(hp, v);
        pos = pos || s > tol;
        neg = neg || s < -tol;
      }
      if (pos && neg) {
        ConvexPolygon p_side = clip(cell.polygon, hp);
        ConvexPolygon n_side = clip(cell.polygon, Halfplane{{-hp.normal.x, -hp.normal.y}, -hp.offset});
        if (!p_side.empty())
          next.push_back(Cell{cell.sign_mask | (std::uint64_t{1} << i), std::move(p_side), {}});
        if (!n_side.empty()) next.push_back(Cell{cell.sign_mask, std::move(n_side), {}});
      } else {
        std::uint64_t bit = signed_value(hp, cell.polygon.centroid()) >= 0.0 ? 1 : 0;
        cell.sign_mask |= bit << i;
        next.push_back(std::move(cell));
      }
    }
    cells = std::move(next);
  }
  for (Cell& c : cells) c.representative = c.polygon.centroid();
  return cells;
}

BestResponse br_linear_2d(Vec2 x, const Posterior& posterior, const Box& bbox,
                          const CostSpec& cost) {
  if (cost.kind != CostKind::PNorm2D)
    throw ValidationError("br_linear_2d: cost kind must be p-norm-2d");
  // The arrangement partitions the same inflated box the oracle clips to.
  std::vector<Cell> cells = build_arrangement(posterior.classifiers, inflate2(bbox));

  BestResponse best;
  best.target = x;
  best.utility = -kInf;
  best.cost = kInf;
  for (const Cell& cell : cells) {
    Region region;
    for (std::size_t i = 0; i < posterior.size(); ++i) {
      (cell.accepts(i) ? region.positive_indices : region.negative_indices).push_back(i);
    }
    Projection p = project_2d(x, posterior.classifiers, region, bbox, cost);
    best.oracle_calls++;
    if (p.region_empty) continue;
    double move = cost.cost2(x, p.point);
    double u = posterior.acceptance_prob2(p.point) - move;
    if (better_candidate(u, move, p.point, best.utility, best.cost, best.target)) {
      best.utility = u;
      best.cost = move;
      best.target = p.point;
    }
  }
  best.passed = passed_at2(posterior, best.target);
  return best;
}

namespace {

struct InducedCostFn {
  const CostSpec* cost;
  const std::vector<Classifier>* V;
  const Box* bbox = nullptr;           // 2-D only
  std::vector<double> table_locs;      // table costs only
  double x1 = 0.0;
  Vec2 x2;
  bool two_d = false;

  double operator()(const std::vector<std::size_t>& subset) const {
    if (two_d) return induced_cost(x2, *V, subset, *bbox, *cost);
    if (cost->kind == CostKind::Table)
      return induced_cost_table(x1, *V, subset, table_locs, *cost);
    return induced_cost(x1, *V, subset, *cost);
  }
};

std::vector<std::size_t> mask_to_subset(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1u) s.push_back(i);
  }
  return s;
}

VSubmodularityReport run_submodularity_check(const InducedCostFn& fn, std::size_t n,
                                             double ax1, double ax2, std::uint64_t seed,
                                             std::size_t random_trials) {
  VSubmodularityReport report;
  constexpr double tol = 1e-9;

  auto record = [&](std::uint64_t s, std::uint64_t sp, std::size_t h, double lhs, double rhs) {
    report.submodular = false;
    report.violation = VSubmodularityReport::Violation{ax1, ax2, s, sp, h, lhs, rhs};
  };

  if (n <= 12) {
    std::vector<double> costs(std::uint64_t{1} << n);
    for (std::uint64_t m = 0; m < costs.size(); ++m) costs[m] = fn(mask_to_subset(m, n));
    for (std::uint64_t sp = 0; sp < costs.size(); ++sp) {
      // all submasks of sp, including the empty set
      std::uint64_t s = sp;
      while (true) {
        for (std::size_t h = 0; h < n; ++h) {
          if ((sp >> h) & 1u) continue;
          std::uint64_t bit = std::uint64_t{1} << h;
          double lhs = costs[s | bit] - costs[s];
          double rhs = costs[sp | bit] - costs[sp];
          report.checks++;
          if (lhs < rhs - tol) {
            record(s, sp, h, lhs, rhs);
            return report;
          }
        }
        if (s == 0) break;
        s = (s - 1) & sp;
      }
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> mask_dist(0, (std::uint64_t{1} << n) - 1);
  std::uniform_int_distribution<std::size_t> idx_dist(0, n - 1);
  for (std::size_t t = 0; t < random_trials; ++t) {
    std::uint64_t sp = mask_dist(rng);
    std::uint64_t s = mask_dist(rng) & sp;
    std::size_t h = idx_dist(rng);
    if ((sp >> h) & 1u) continue;
    std::uint64_t bit = std::uint64_t{1} << h;
    double lhs = fn(mask_to_subset(s | bit, n)) - fn(mask_to_subset(s, n));
    double rhs = fn(mask_to_subset(sp | bit, n)) - fn(mask_to_subset(sp, n));
    report.checks++;
    if (lhs < rhs - tol) {
      record(s, sp, h, lhs, rhs);
      return report;
    }
  }
  return report;
}

}  // namespace

VSubmodularityReport check_v_submodular(const CostSpec& cost, const std::vector<Classifier>& V,
                                        const std::vector<double>& x_samples, std::uint64_t seed,
                                        std::size_t random_trials) {
  VSubmodularityReport report;
  for (double x : x_samples) {
    InducedCostFn fn;
    fn.cost = &cost;
    fn.V = &V;
    fn.x1 = x;
    if (cost.kind == CostKind::Table) fn.table_locs = finite_world_locations(x, V, cost);
    VSubmodularityReport r = run_submodularity_check(fn, V.size(), x, 0.0, seed, random_trials);
    report.checks += r.checks;
    if (!r.submodular) {
      report.submodular = false;
      report.violation = r.violation;
      return report;
    }
  }
  return report;
}

VSubmodularityReport check_v_submodular(const CostSpec& cost, const std::vector<Classifier>& V,
                                        const std::vector<Vec2>& x_samples, const Box& bbox,
                                        std::uint64_t seed, std::size_t random_trials) {
  VSubmodularityReport report;
  for (Vec2 x : x_samples) {
    InducedCostFn fn;
    fn.cost = &cost;
    fn.V = &V;
    fn.bbox = &bbox;
    fn.x2 = x;
    fn.two_d = true;
    VSubmodularityReport r = run_submodularity_check(fn, V.size(), x.x, x.y, seed, random_trials);
    report.checks += r.checks;
    if (!r.submodular) {
      report.submodular = false;
      report.violation = r.violation;
      return report;
    }
  }
  return report;
}

BestResponse br_submodular_approx(double x, const Posterior& posterior, const CostSpec& cost,
                                  double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw ValidationError("br_submodular_approx: epsilon must be positive");
  if (cost.kind == CostKind::PNorm2D)
    throw ValidationError("br_submodular_approx: 1-D cost required");
  const std::size_t n = posterior.size();

  std::vector<double> table_locs;
  if (cost.kind == CostKind::Table)
    table_locs = finite_world_locations(x, posterior.classifiers, cost);

  std::int64_t oracle_calls = 0;
  auto subset_cost = [&](const std::vector<std::size_t>& subset) {
    oracle_calls++;
    if (cost.kind == CostKind::Table)
      return induced_cost_table(x, posterior.classifiers, subset, table_locs, cost);
    return induced_cost(x, posterior.classifiers, subset, cost);
  };

  // Spread of the relevant 1-D range; bounds the total marginal cost along
  // any prefix chain, hence the subgradient norm.
  double lo = x, hi = x;
  for (const auto& c : posterior.classifiers) {
    if (const auto* t = std::get_if<ThresholdClassifier>(&c)) {
      lo = std::min(lo, t->threshold);
      hi = std::max(hi, t->threshold);
    }
  }
  for (double t : table_locs) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  double diameter = hi - lo;
  double L = std::max(1.0, cost.k * diameter + 1.0);
  std::size_t T = static_cast<std::size_t>(std::ceil(4.0 * static_cast<double>(n) /
                                                     (epsilon * epsilon)));
  double step = std::sqrt(static_cast<double>(n)) / (L * std::sqrt(static_cast<double>(T)));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> y(n);
  for (double& v : y) v = unit(rng);

  double best_g = -kInf;
  std::uint64_t best_mask = 0;
  auto consider = [&](std::uint64_t mask, double g) {
    if (g > best_g) {
      best_g = g;
      best_mask = mask;
    }
  };
  consider(0, 0.0);  // the empty set: stay put

  std::vector<std::size_t> order(n);
  std::vector<double> grad(n);
  std::vector<std::size_t> prefix;
  std::vector<double> avg(n, 0.0);

  auto sweep = [&](const std::vector<double>& point, std::vector<double>* grad_out) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return point[a] > point[b]; });
    prefix.clear();
    double prev_f = 0.0;  // F(empty) = 0
    double prob = 0.0;
    std::uint64_t mask = 0;
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t idx = order[r];
      prefix.push_back(idx);
      prob += posterior.weights[idx];
      mask |= std::uint64_t{1} << idx;
      double c = subset_cost(prefix);
      double f = c - prob;
      if (grad_out) (*grad_out)[idx] = f - prev_f;
      prev_f = f;
      consider(mask, -f);
    }
  };

  for (std::size_t it = 0; it < T; ++it) {
    sweep(y, &grad);
    for (std::size_t i = 0; i < n; ++i) {
      avg[i] += y[i];
      y[i] = std::clamp(y[i] - step * grad[i], 0.0, 1.0);
    }
  }
  for (double& v : avg) v /= static_cast<double>(std::max<std::size_t>(T, 1));
  sweep(avg, nullptr);

  // Materialize the winning set through the oracle.
  std::vector<std::size_t> chosen = mask_to_subset(best_mask, n);
  double z = x;
  if (cost.kind == CostKind::Table) {
    induced_cost_table(x, posterior.classifiers, chosen, table_locs, cost, &z);
  } else {
    Projection p = project_1d(x, posterior.classifiers, Region{chosen, {}}, cost);
    if (p.feasible) z = p.point.x;
  }
  oracle_calls++;

  BestResponse out;
  out.target = {z, 0.0};
  out.cost = cost.cost1(x, z);
  out.utility = posterior.acceptance_prob1(z) - out.cost;
  out.passed = passed_at1(posterior, z);
  out.oracle_calls = oracle_calls;
  return out;
}

}  // namespace stratrelease
