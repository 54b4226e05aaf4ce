#include "stratrelease/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stratrelease/errors.hpp"

namespace stratrelease {

bool TabularClassifier::accepts_point(double x) const {
  for (double a : accepts) {
    if (std::abs(a - x) <= kThresholdTol) return true;
  }
  return false;
}

bool accepts1(const Classifier& c, double x) {
  if (const auto* t = std::get_if<ThresholdClassifier>(&c)) return x >= t->threshold;
  if (const auto* tab = std::get_if<TabularClassifier>(&c)) return tab->accepts_point(x);
  throw ValidationError("classifier: linear classifier queried with a 1-D point");
}

bool accepts2(const Classifier& c, Vec2 z) {
  if (const auto* l = std::get_if<LinearClassifier>(&c))
    return dot(l->weights, z) + l->bias >= 0.0;
  throw ValidationError("classifier: 1-D classifier queried with a 2-D point");
}

bool classifier_equal(const Classifier& a, const Classifier& b, double tol) {
  if (a.index() != b.index()) return false;
  if (const auto* ta = std::get_if<ThresholdClassifier>(&a)) {
    return std::abs(ta->threshold - std::get<ThresholdClassifier>(b).threshold) <= tol;
  }
  if (const auto* la = std::get_if<LinearClassifier>(&a)) {
    const auto& lb = std::get<LinearClassifier>(b);
    return std::abs(la->weights.x - lb.weights.x) <= tol &&
           std::abs(la->weights.y - lb.weights.y) <= tol && std::abs(la->bias - lb.bias) <= tol;
  }
  const auto& ta = std::get<TabularClassifier>(a);
  const auto& tb = std::get<TabularClassifier>(b);
  if (ta.accepts.size() != tb.accepts.size()) return false;
  for (std::size_t i = 0; i < ta.accepts.size(); ++i) {
    if (std::abs(ta.accepts[i] - tb.accepts[i]) > tol) return false;
  }
  return true;
}

double CostTable::cost(double from, double to) const {
  if (std::abs(from - to) <= kThresholdTol) return 0.0;
  for (const auto& [key, c] : entries) {
    if (std::abs(key.first - from) <= kThresholdTol && std::abs(key.second - to) <= kThresholdTol)
      return c;
  }
  return std::numeric_limits<double>::infinity();
}

double CostSpec::cost1(double from, double to) const {
  switch (kind) {
    case CostKind::Abs1D: return k * std::abs(to - from);
    case CostKind::Table: return table.cost(from, to);
    default: throw ValidationError("cost: 2-D cost queried with 1-D points");
  }
}

double CostSpec::cost2(Vec2 from, Vec2 to) const {
  if (kind != CostKind::PNorm2D) throw ValidationError("cost: 1-D cost queried with 2-D points");
  return pnorm_dist(from, to, pnorm);
}

CostSpec abs1d_cost(double k) {
  if (!(k > 0.0)) throw ValidationError("cost: scale k must be positive");
  CostSpec c;
  c.kind = CostKind::Abs1D;
  c.k = k;
  return c;
}

CostSpec pnorm2d_cost(int pnorm) {
  if (pnorm != 1 && pnorm != 2 && pnorm != 0)
    throw ValidationError("cost: p must be 1, 2 or inf (0)");
  CostSpec c;
  c.kind = CostKind::PNorm2D;
  c.pnorm = pnorm;
  return c;
}

CostSpec table_cost(CostTable table) {
  CostSpec c;
  c.kind = CostKind::Table;
  c.table = std::move(table);
  for (const auto& [key, v] : c.table.entries) {
    if (v < 0.0) throw ValidationError("cost: table entries must be nonnegative");
  }
  return c;
}

double Prior::threshold_at(std::size_t i) const {
  return std::get<ThresholdClassifier>(support[i]).threshold;
}

bool Prior::all_thresholds() const {
  return std::all_of(support.begin(), support.end(), [](const Classifier& c) {
    return std::holds_alternative<ThresholdClassifier>(c);
  });
}

Prior make_prior(std::vector<Classifier> support, std::vector<double> weights) {
  if (support.size() != weights.size())
    throw ValidationError("prior: support and weights must have equal length");
  if (support.empty()) throw ValidationError("prior: support must be nonempty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("prior: every weight must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kProbTol) throw ValidationError("prior: weights must sum to 1");

  Prior p;
  p.original_index.resize(support.size());
  std::iota(p.original_index.begin(), p.original_index.end(), std::size_t{0});
  bool thresholds = std::all_of(support.begin(), support.end(), [](const Classifier& c) {
    return std::holds_alternative<ThresholdClassifier>(c);
  });
  if (thresholds) {
    std::stable_sort(p.original_index.begin(), p.original_index.end(),
                     [&](std::size_t a, std::size_t b) {
                       return std::get<ThresholdClassifier>(support[a]).threshold <
                              std::get<ThresholdClassifier>(support[b]).threshold;
                     });
  }
  for (std::size_t i : p.original_index) {
    if (const auto* t = std::get_if<ThresholdClassifier>(&support[i])) {
      if (!std::isfinite(t->threshold)) throw ValidationError("prior: threshold must be finite");
    }
    if (const auto* l = std::get_if<LinearClassifier>(&support[i])) {
      if (norm_l2(l->weights) <= 0.0)
        throw ValidationError("prior: linear classifier weights must be nonzero");
    }
    p.support.push_back(std::move(support[i]));
    p.weights.push_back(weights[i]);
  }
  for (std::size_t i = 0; i + 1 < p.support.size(); ++i) {
    for (std::size_t j = i + 1; j < p.support.size(); ++j) {
      if (classifier_equal(p.support[i], p.support[j]))
        throw ValidationError("prior: support entries must be distinct");
    }
  }
  return p;
}

Prior make_threshold_prior(std::vector<double> thresholds, std::vector<double> weights) {
  std::vector<Classifier> support;
  support.reserve(thresholds.size());
  for (double t : thresholds) support.push_back(ThresholdClassifier{t});
  return make_prior(std::move(support), std::move(weights));
}

double Posterior::acceptance_prob1(double x) const {
  double p = 0.0;
  for (std::size_t i = 0; i < classifiers.size(); ++i) {
    if (accepts1(classifiers[i], x)) p += weights[i];
  }
  return p;
}

double Posterior::acceptance_prob2(Vec2 z) const {
  double p = 0.0;
  for (std::size_t i = 0; i < classifiers.size(); ++i) {
    if (accepts2(classifiers[i], z)) p += weights[i];
  }
  return p;
}

Posterior restrict_posterior(const Prior& prior, const std::vector<std::size_t>& released,
                             std::optional<std::size_t> deployed) {
  std::vector<std::size_t> idx = released;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (std::size_t i : idx) {
    if (i >= prior.size()) throw ValidationError("release: index out of range");
  }
  double mass = 0.0;
  for (std::size_t i : idx) mass += prior.weights[i];
  if (idx.empty() || mass <= 0.0)
    throw ValidationError("empty-release: released subset has zero prior mass");
  if (deployed && std::find(idx.begin(), idx.end(), *deployed) == idx.end())
    throw ValidationError("deployed-excluded: release must contain the deployed classifier");

  Posterior post;
  post.released = idx;
  for (std::size_t i : idx) {
    post.weights.push_back(prior.weights[i] / mass);
    post.classifiers.push_back(prior.support[i]);
  }
  return post;
}

double agent_utility(double x, double target, const Posterior& posterior, const CostSpec& cost) {
  return posterior.acceptance_prob1(target) - cost.cost1(x, target);
}

double agent_utility(Vec2 x, Vec2 target, const Posterior& posterior, const CostSpec& cost) {
  return posterior.acceptance_prob2(target) - cost.cost2(x, target);
}

double Instance::deployed_threshold() const {
  return std::get<ThresholdClassifier>(deployed_classifier()).threshold;
}

double Instance::ground_truth_threshold() const {
  return std::get<ThresholdClassifier>(ground_truth).threshold;
}

double Instance::domain_diameter() const {
  if (is_1d()) return interval().hi - interval().lo;
  return box().diameter();
}

bool Instance::finite_points() const {
  return is_1d() && data.atoms_only() &&
         (cost.kind == CostKind::Table ||
          std::holds_alternative<TabularClassifier>(ground_truth));
}

std::vector<std::size_t> Instance::full_release() const {
  std::vector<std::size_t> all(prior.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

Instance make_instance(Instance inst) {
  if (inst.deployed >= inst.prior.size())
    throw ValidationError("instance: deployed index out of range");
  const bool has_data = !inst.data.atoms.empty() || !inst.data.uniform_pieces.empty();
  if (inst.is_1d() && !has_data)
    throw ValidationError("instance: 1-D instance requires a data distribution");
  if (has_data && std::abs(inst.data.total_mass() - 1.0) > kProbTol)
    throw ValidationError("instance: data distribution must have total mass 1");
  if (inst.prior_interval) {
    auto [a, b] = *inst.prior_interval;
    if (!(a <= b)) throw ValidationError("instance: prior interval needs a <= b");
    if (!inst.is_1d() || !inst.prior.all_thresholds())
      throw ValidationError("instance: continuous prior requires a 1-D threshold instance");
    double h = inst.deployed_threshold();
    if (h < a || h > b)
      throw ValidationError("instance: deployed threshold outside the prior interval");
  }
  if (inst.is_1d()) {
    if (!(inst.interval().lo <= inst.interval().hi))
      throw ValidationError("instance: domain interval needs lo <= hi");
    if (inst.cost.kind == CostKind::PNorm2D)
      throw ValidationError("instance: 1-D instance cannot use a 2-D cost");
    const bool threshold_world =
        std::holds_alternative<ThresholdClassifier>(inst.ground_truth) &&
        inst.prior.all_thresholds();
    if (threshold_world && inst.deployed_threshold() < inst.ground_truth_threshold() - kThresholdTol)
      throw ValidationError("instance: screening requires h >= f");
  } else {
    if (inst.cost.kind != CostKind::PNorm2D)
      throw ValidationError("instance: 2-D instance requires a p-norm cost");
  }
  return inst;
}

}  // namespace stratrelease
