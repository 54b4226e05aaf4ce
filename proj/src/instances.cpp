#include "stratrelease/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "stratrelease/errors.hpp"

namespace stratrelease {

Instance example_table1() {
  const double x1 = 0.0, x2 = 2.0;
  Instance inst;
  inst.domain = Interval{0.0, 2.0};
  inst.ground_truth = TabularClassifier{{x1}};  // f(x1) = 1, f(x2) = 0
  std::vector<Classifier> support{
      TabularClassifier{{x1}},  // h1 = f
      TabularClassifier{{x2}},  // h2
      TabularClassifier{{}},    // h3 rejects everyone
  };
  inst.prior = make_prior(std::move(support), {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  inst.deployed = 0;  // h = h1
  inst.data = atom_distribution({{x1, 2.0 / 3.0}, {x2, 1.0 / 3.0}});
  CostTable table;
  table.entries[{x1, x2}] = 2.0;
  table.entries[{x2, x1}] = 3.0 / 4.0;
  inst.cost = table_cost(std::move(table));
  return make_instance(std::move(inst));
}

Instance example_thresholds() {
  Instance inst;
  inst.domain = Interval{0.0, 2.0};
  inst.ground_truth = ThresholdClassifier{1.9};
  inst.prior = make_threshold_prior({1.8, 2.0}, {0.9, 0.1});
  inst.deployed = 1;  // h = h_2 (threshold 2.0)
  inst.data = uniform_distribution(0.0, 2.0);
  inst.cost = abs1d_cost(1.0);
  return make_instance(std::move(inst));
}

Instance example_claim_fpr() {
  Instance inst;
  inst.domain = Interval{0.0, 1.0};
  inst.ground_truth = ThresholdClassifier{0.3};
  inst.prior = make_threshold_prior({0.1, 0.5, 0.7}, {0.2, 0.1, 0.7});
  inst.deployed = 1;  // h = h_2 (threshold 0.5)
  inst.data = atom_distribution({{0.0, 0.5}, {0.4, 0.5}});
  inst.cost = abs1d_cost(1.0);
  return make_instance(std::move(inst));
}

Instance random_threshold_instance(std::size_t n, std::uint64_t seed,
                                   const RandomThresholdConfig& cfg) {
  if (n < 1) throw ValidationError("random instance: n must be at least 1");
  if (cfg.h_max < cfg.f_min)
    throw ValidationError("random instance: h range lies below the f range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto in_range = [&](double lo, double hi) { return lo + unit(rng) * (hi - lo); };

  double f = in_range(cfg.f_min, cfg.f_max);
  double h = in_range(std::max(f, cfg.h_min), std::max(f, cfg.h_max));

  std::set<double> uniq{h};
  while (uniq.size() < n) {
    double t = h + (unit(rng) * 2.0 - 1.0) * cfg.spread;
    t = std::clamp(t, cfg.domain_lo, cfg.domain_hi);
    // keep thresholds clearly distinct
    bool ok = true;
    for (double u : uniq) ok = ok && std::abs(u - t) > 1e-6;
    if (ok) uniq.insert(t);
  }
  std::vector<double> thresholds(uniq.begin(), uniq.end());

  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  if (cfg.prior == PriorKind::Dirichlet) {
    std::gamma_distribution<double> gamma(1.0, 1.0);
    double sum = 0.0;
    for (double& w : weights) {
      w = gamma(rng) + 1e-6;
      sum += w;
    }
    for (double& w : weights) w /= sum;
  }

  Instance inst;
  inst.domain = Interval{cfg.domain_lo, cfg.domain_hi};
  inst.ground_truth = ThresholdClassifier{f};
  inst.prior = make_threshold_prior(thresholds, weights);
  inst.deployed = static_cast<std::size_t>(
      std::find_if(inst.prior.support.begin(), inst.prior.support.end(),
                   [&](const Classifier& c) {
                     return std::abs(std::get<ThresholdClassifier>(c).threshold - h) <=
                            kThresholdTol;
                   }) -
      inst.prior.support.begin());

  if (cfg.data == DataKind::Atoms) {
    std::set<double> locs;
    while (locs.size() < cfg.atom_count)
      locs.insert(in_range(cfg.domain_lo, cfg.domain_hi));
    std::vector<DataDistribution::Atom> atoms;
    double sum = 0.0;
    std::vector<double> masses;
    for (std::size_t i = 0; i < locs.size(); ++i) {
      masses.push_back(unit(rng) + 1e-3);
      sum += masses.back();
    }
    std::size_t i = 0;
    for (double loc : locs) atoms.push_back({loc, masses[i++] / sum});
    inst.data = make_distribution(std::move(atoms), {});
  } else {
    inst.data = uniform_distribution(cfg.domain_lo, cfg.domain_hi);
  }
  inst.cost = abs1d_cost(cfg.cost_scale);
  return make_instance(std::move(inst));
}

RandomLinear2D random_linear2d(std::size_t n, std::uint64_t seed, const Box& bbox,
                               std::size_t agent_count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto in_box = [&] {
    return Vec2{bbox.lo.x + unit(rng) * (bbox.hi.x - bbox.lo.x),
                bbox.lo.y + unit(rng) * (bbox.hi.y - bbox.lo.y)};
  };

  std::vector<Classifier> support;
  for (std::size_t i = 0; i < n; ++i) {
    double theta = unit(rng) * 2.0 * M_PI;
    Vec2 w{std::cos(theta), std::sin(theta)};
    Vec2 p = in_box();  // the boundary line passes through p
    support.push_back(LinearClassifier{w, -dot(w, p)});
  }
  std::vector<double> weights(n);
  double sum = 0.0;
  for (double& w : weights) {
    w = unit(rng) + 1e-3;
    sum += w;
  }
  for (double& w : weights) w /= sum;

  RandomLinear2D out;
  out.bbox = bbox;
  out.prior = make_prior(std::move(support), std::move(weights));
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  out.posterior = restrict_posterior(out.prior, all);
  for (std::size_t i = 0; i < agent_count; ++i) out.agents.push_back(in_box());
  return out;
}

}  // namespace stratrelease
