#include "stratrelease/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "stratrelease/best_response.hpp"
#include "stratrelease/errors.hpp"
#include "stratrelease/parallel.hpp"

namespace stratrelease {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_threshold_world(const Instance& inst, const char* who) {
  if (!inst.is_1d() || !inst.prior.all_thresholds() ||
      !std::holds_alternative<ThresholdClassifier>(inst.ground_truth) ||
      inst.cost.kind != CostKind::Abs1D)
    throw ValidationError(std::string(who) + ": requires a 1-D threshold instance");
}

void require_deployed_in(const Instance& inst, const std::vector<std::size_t>& released) {
  if (std::find(released.begin(), released.end(), inst.deployed) == released.end())
    throw ValidationError("deployed-excluded: release must contain the deployed classifier");
}

// Indifference-point computation behind R_H. Works on the posterior CDF:
// with phi(z) = F(z) - k z, the cutoff relative to a target threshold tau in
// the release is the first point past the last blocking threshold where phi
// drops below M = max{phi(t) : released t >= tau}.
double cutoff_raw_for_target(const std::vector<double>& thresholds,
                             const std::vector<double>& weights, double k, double tau) {
  const std::size_t m = thresholds.size();
  std::vector<double> cdf(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += weights[i];
    cdf[i] = acc;
  }
  auto phi = [&](std::size_t i) { return cdf[i] - k * thresholds[i]; };

  double best = -kInf;
  for (std::size_t i = 0; i < m; ++i) {
    if (thresholds[i] >= tau - kThresholdTol) best = std::max(best, phi(i));
  }

  // Largest released threshold below tau whose phi still ties-or-beats M;
  // agents at or below it never pass tau.
  std::ptrdiff_t block = -1;
  for (std::size_t i = 0; i < m; ++i) {
    if (thresholds[i] < tau - kThresholdTol && phi(i) >= best - kThresholdTol)
      block = static_cast<std::ptrdiff_t>(i);
  }

  // Walk the constant-CDF segments above the block until phi crosses below M.
  std::ptrdiff_t idx = block;
  while (true) {
    double seg_cdf = idx >= 0 ? cdf[idx] : 0.0;
    double seg_start = idx >= 0 ? thresholds[idx] : -kInf;
    double seg_end = tau;
    for (std::size_t j = idx + 1; j < m; ++j) {
      if (thresholds[j] < tau - kThresholdTol) {
        seg_end = thresholds[j];
        break;
      }
    }
    double crossing = (seg_cdf - best) / k;
    if (crossing < seg_end || seg_end >= tau - kThresholdTol)
      return std::max(crossing, seg_start);
    idx++;
  }
}

struct PosteriorThresholds {
  std::vector<double> thresholds;
  std::vector<double> weights;
};

PosteriorThresholds posterior_thresholds(const Instance& inst,
                                         const std::vector<std::size_t>& released) {
  Posterior post = restrict_posterior(inst.prior, released, inst.deployed);
  PosteriorThresholds out;
  for (std::size_t i = 0; i < post.size(); ++i) {
    out.thresholds.push_back(std::get<ThresholdClassifier>(post.classifiers[i]).threshold);
    out.weights.push_back(post.weights[i]);
  }
  return out;
}

// Direct best-response target of a finite-world agent: argmax over the
// candidate locations, ties to lowest cost then smallest target.
double finite_br_target(double x, const Posterior& post, const CostSpec& cost,
                        const std::vector<double>& locations) {
  double best_u = -kInf, best_cost = kInf, best_z = x;
  auto consider = [&](double z) {
    double c = cost.cost1(x, z);
    if (!std::isfinite(c)) return;
    double u = post.acceptance_prob1(z) - c;
    if (u > best_u || (u == best_u && (c < best_cost || (c == best_cost && z < best_z)))) {
      best_u = u;
      best_cost = c;
      best_z = z;
    }
  };
  consider(x);
  for (double z : locations) consider(z);
  return best_z;
}

struct AtomOutcome {
  double mass = 0.0;
  bool label = false;     // f(x)
  bool accepted = false;  // h(BR(x, H))
};

std::vector<AtomOutcome> per_atom_outcomes(const Instance& inst,
                                           const std::vector<std::size_t>& released) {
  Posterior post = restrict_posterior(inst.prior, released, inst.deployed);
  std::vector<double> locations;
  for (const auto& a : inst.data.atoms) locations.push_back(a.location);

  const bool threshold_world = inst.prior.all_thresholds() && inst.cost.kind == CostKind::Abs1D;
  std::vector<AtomOutcome> out;
  out.reserve(inst.data.atoms.size());
  for (const auto& atom : inst.data.atoms) {
    double target = threshold_world
                        ? br_threshold_scan(atom.location, post, inst.cost.k).target.x
                        : finite_br_target(atom.location, post, inst.cost, locations);
    AtomOutcome o;
    o.mass = atom.mass;
    o.label = accepts1(inst.ground_truth, atom.location);
    o.accepted = accepts1(inst.deployed_classifier(), target);
    out.push_back(o);
  }
  return out;
}

double positive_mass(const Instance& inst) {
  double f = inst.ground_truth_threshold();
  return interval_prob(inst.data, f, inst.data.max_support(), true, true);
}

double negative_mass(const Instance& inst) {
  double f = inst.ground_truth_threshold();
  return interval_prob(inst.data, inst.data.min_support(), f, true, false);
}

}  // namespace

Objective parse_objective(const std::string& name) {
  if (name == "accuracy") return Objective::Accuracy;
  if (name == "fpr") return Objective::Fpr;
  if (name == "fnr") return Objective::Fnr;
  throw ValidationError("objective must be one of accuracy, fpr, fnr");
}

std::string objective_name(Objective o) {
  switch (o) {
    case Objective::Accuracy: return "accuracy";
    case Objective::Fpr: return "fpr";
    default: return "fnr";
  }
}

double compute_cutoff_raw(const Instance& inst, const std::vector<std::size_t>& released) {
  require_threshold_world(inst, "compute_cutoff");
  require_deployed_in(inst, released);
  PosteriorThresholds pt = posterior_thresholds(inst, released);
  return cutoff_raw_for_target(pt.thresholds, pt.weights, inst.cost.k,
                               inst.deployed_threshold());
}

double compute_cutoff(const Instance& inst, const std::vector<std::size_t>& released) {
  return std::max(compute_cutoff_raw(inst, released), inst.interval().lo);
}

ReleaseEvaluation evaluate_release(const Instance& inst,
                                   const std::vector<std::size_t>& released) {
  require_deployed_in(inst, released);
  ReleaseEvaluation ev;

  if (inst.finite_points()) {
    std::vector<AtomOutcome> outcomes = per_atom_outcomes(inst, released);
    double correct = 0.0, fp = 0.0, fn = 0.0, pos = 0.0, neg = 0.0;
    for (const auto& o : outcomes) {
      if (o.accepted == o.label) correct += o.mass;
      if (o.label) {
        pos += o.mass;
        if (!o.accepted) fn += o.mass;
      } else {
        neg += o.mass;
        if (o.accepted) fp += o.mass;
      }
    }
    ev.utility = correct;
    ev.fpr = neg > 0.0 ? fp / neg : kNaN;
    ev.fnr = pos > 0.0 ? fn / pos : kNaN;
    const bool threshold_world =
        inst.prior.all_thresholds() && inst.cost.kind == CostKind::Abs1D &&
        std::holds_alternative<ThresholdClassifier>(inst.ground_truth);
    ev.cutoff_raw = threshold_world ? compute_cutoff_raw(inst, released) : kNaN;
    ev.cutoff = threshold_world ? std::max(ev.cutoff_raw, inst.interval().lo) : kNaN;
    return ev;
  }

  require_threshold_world(inst, "evaluate_release");
  double rcut = compute_cutoff_raw(inst, released);
  double f = inst.ground_truth_threshold();
  ev.cutoff_raw = rcut;
  ev.cutoff = std::max(rcut, inst.interval().lo);
  if (rcut < f) {
    ev.utility = 1.0 - interval_prob(inst.data, rcut, f, false, false);
  } else {
    ev.utility = 1.0 - interval_prob(inst.data, f, rcut, true, true);
  }
  double pos = positive_mass(inst);
  double neg = negative_mass(inst);
  ev.fpr = neg > 0.0 ? (rcut < f ? interval_prob(inst.data, rcut, f, false, false) / neg : 0.0)
                     : kNaN;
  ev.fnr = pos > 0.0 ? (rcut >= f ? interval_prob(inst.data, f, rcut, true, true) / pos : 0.0)
                     : kNaN;
  return ev;
}

double release_utility(const Instance& inst, const std::vector<std::size_t>& released) {
  return evaluate_release(inst, released).utility;
}

double release_fpr(const Instance& inst, const std::vector<std::size_t>& released) {
  ReleaseEvaluation ev = evaluate_release(inst, released);
  if (std::isnan(ev.fpr)) throw ValidationError("degenerate-class: no negative agents");
  return ev.fpr;
}

double release_fnr(const Instance& inst, const std::vector<std::size_t>& released) {
  ReleaseEvaluation ev = evaluate_release(inst, released);
  if (std::isnan(ev.fnr)) throw ValidationError("degenerate-class: no positive agents");
  return ev.fnr;
}

namespace {

double objective_value(const ReleaseEvaluation& ev, Objective o) {
  switch (o) {
    case Objective::Accuracy: return ev.utility;  // maximized
    case Objective::Fpr: return -ev.fpr;          // minimized
    default: return -ev.fnr;
  }
}

void fill_winner(ReleaseReport& report, const Instance& inst) {
  ReleaseEvaluation ev = evaluate_release(inst, report.released);
  report.cutoff = ev.cutoff;
  report.utility = ev.utility;
  report.fpr = ev.fpr;
  report.fnr = ev.fnr;
}

}  // namespace

ReleaseReport optimize_release_bruteforce(const Instance& inst, Objective objective) {
  const std::size_t n = inst.prior.size();
  if (n > kBruteForceMaxSupport)
    throw CapabilityError("support-too-large: release optimization is capped at n = 20");

  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t deployed_bit = std::uint64_t{1} << inst.deployed;

  // Surface instance-shape errors before fanning out; the per-release
  // evaluation cannot throw once this succeeds.
  evaluate_release(inst, {inst.deployed});

  struct Entry {
    std::vector<std::size_t> released;
    ReleaseEvaluation ev;
    bool valid = false;
  };
  std::vector<Entry> entries(total);
  parallel_for(total, [&](std::size_t mask) {
    if (!(mask & deployed_bit)) return;
    Entry& e = entries[mask];
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) e.released.push_back(i);
    }
    e.ev = evaluate_release(inst, e.released);
    e.valid = true;
  });

  ReleaseReport report;
  double best = -kInf;
  std::size_t best_mask = 0;
  std::size_t id = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!entries[mask].valid) continue;
    const Entry& e = entries[mask];
    CandidateRow row;
    row.id = id++;
    row.released = e.released;
    row.cutoff = e.ev.cutoff_raw;
    row.utility = e.ev.utility;
    report.candidates.push_back(std::move(row));

    double value = objective_value(e.ev, objective);
    if (std::isnan(value))
      throw ValidationError("degenerate-class: objective undefined on this instance");
    bool take = value > best;
    if (value == best) {
      const Entry& b = entries[best_mask];
      if (e.released.size() != b.released.size())
        take = e.released.size() < b.released.size();
      else
        take = e.released < b.released;
    }
    if (take) {
      best = value;
      best_mask = mask;
    }
  }
  report.released = entries[best_mask].released;
  fill_winner(report, inst);
  return report;
}

ReleaseReport optimize_release_uniform(const Instance& inst) {
  require_threshold_world(inst, "optimize_release_uniform");
  const std::size_t n = inst.prior.size();
  for (double w : inst.prior.weights) {
    if (std::abs(w - 1.0 / static_cast<double>(n)) > kProbTol)
      throw ValidationError("non-uniform-prior: Alg.-3 optimizer requires a uniform prior");
  }

  const double k = inst.cost.k;
  const double hones = inst.deployed_threshold();
  const double f = inst.ground_truth_threshold();
  const std::size_t k_idx = inst.deployed;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = inst.prior.threshold_at(i);

  ReleaseReport report;
  double best_u = -kInf;
  std::size_t best_row = 0;
  std::size_t id = 0;

  for (std::size_t i = k_idx; i < n; ++i) {
    for (std::size_t ell = 1; ell <= n; ++ell) {
      for (std::size_t j = 1; j <= ell; ++j) {
        CandidateRow row;
        row.id = id++;
        row.i = static_cast<int>(i) + 1;
        row.l = static_cast<int>(ell);
        row.j = static_cast<int>(j);
        double R = t[i] - static_cast<double>(j) / (k * static_cast<double>(ell));
        row.cutoff = R;
        row.utility = -kInf;

        auto reject = [&](const char* why) {
          row.rejected_reason = why;
          report.candidates.push_back(row);
        };

        std::vector<std::size_t> s1, s2;  // s3 is the tail (i, n)
        for (std::size_t m = 0; m < n; ++m) {
          if (t[m] > R + kThresholdTol && m <= i)
            s1.push_back(m);
          else if (t[m] <= R + kThresholdTol)
            s2.push_back(m);
        }

        if (R >= hones - kThresholdTol) {
          reject("R-not-below-h");
          continue;
        }
        if (s1.size() < j) {
          reject("S1-too-small");
          continue;
        }

        std::set<std::size_t> chosen{k_idx, i};
        if (j < chosen.size()) {
          // Both h and h_i sit inside (R, h_i], so fewer than two elements
          // there is impossible for this cell.
          reject("seed-exceeds-j");
          continue;
        }
        for (auto it = s1.rbegin(); it != s1.rend() && chosen.size() < j; ++it)
          chosen.insert(*it);

        std::size_t fill = ell - j;
        for (auto it = s2.rbegin(); it != s2.rend() && fill > 0; ++it) {
          chosen.insert(*it);
          fill--;
        }
        for (std::size_t m = n; m-- > i + 1 && fill > 0;) {
          chosen.insert(m);
          fill--;
        }
        if (fill > 0) {
          reject("fill-exhausted");
          continue;
        }

        std::vector<std::size_t> released(chosen.begin(), chosen.end());
        row.released = released;

        Posterior post = restrict_posterior(inst.prior, released, inst.deployed);
        double br_at_target = br_threshold_scan(t[i], post, k).target.x;
        if (br_at_target > t[i] + kThresholdTol) {
          reject("br-exceeds-target");
          continue;
        }
        PosteriorThresholds pt = posterior_thresholds(inst, released);
        double realized = cutoff_raw_for_target(pt.thresholds, pt.weights, k, t[i]);
        if (realized > R + 1e-9) {
          reject("inf-above-R");
          continue;
        }

        row.utility = R < f ? 1.0 - interval_prob(inst.data, R, f, false, false)
                            : 1.0 - interval_prob(inst.data, f, R, true, true);
        report.candidates.push_back(row);
        if (row.utility > best_u) {
          best_u = row.utility;
          best_row = report.candidates.size() - 1;
        }
      }
    }
  }

  if (!std::isfinite(best_u))
    throw ValidationError("optimize_release_uniform: no feasible candidate");
  report.released = report.candidates[best_row].released;
  fill_winner(report, inst);
  return report;
}

double interval_release_utility(double c, double d, double f, double h,
                                const DataDistribution& data, double k) {
  if (!(k > 0.0)) throw ValidationError("interval release: k must be positive");
  if (!(c <= d)) throw ValidationError("interval release: requires c <= d");
  if (h < c || h > d) throw ValidationError("interval release: release must contain h");
  double width = 1.0 / k;
  if (d - c >= width) {
    // No one manipulates: accepted iff x >= h.
    return 1.0 - interval_prob(data, f, h, true, false);
  }
  double r = d - width;
  return r < f ? 1.0 - interval_prob(data, r, f, false, false)
               : 1.0 - interval_prob(data, f, r, true, true);
}

ReleaseReport optimal_interval_release(double a, double b, double f, double h,
                                       const DataDistribution& data, double k) {
  if (!(k > 0.0)) throw ValidationError("optimal_interval_release: k must be positive");
  if (h < a || h > b)
    throw ValidationError("optimal_interval_release: h must lie in [a, b]");
  if (h < f) throw ValidationError("optimal_interval_release: requires h >= f");

  const double width = 1.0 / k;
  const double d = std::min(b, std::max(h, f + width));
  const double c = h;  // any admissible left end gives the same utility

  ReleaseReport report;
  double u_c = interval_release_utility(c, d, f, h, data, k);
  CandidateRow hc_row;
  hc_row.id = 0;
  hc_row.cutoff = d - width;
  hc_row.utility = u_c;
  report.candidates.push_back(hc_row);

  bool pick_full = false;
  double u_full = 0.0;
  if (b - a >= width) {
    u_full = interval_release_utility(a, b, f, h, data, k);
    CandidateRow full_row;
    full_row.id = 1;
    full_row.cutoff = h;
    full_row.utility = u_full;
    report.candidates.push_back(full_row);
    pick_full = !(u_c > u_full);
  }

  double pos = interval_prob(data, f, data.max_support(), true, true);
  double neg = interval_prob(data, data.min_support(), f, true, false);
  if (pick_full || d - c >= width) {
    report.released_interval = pick_full ? std::make_pair(a, b) : std::make_pair(c, d);
    report.utility = pick_full ? u_full : u_c;
    report.cutoff = h;  // accepted iff x >= h (no manipulation)
    double fn = interval_prob(data, f, h, true, false);
    report.fpr = neg > 0.0 ? 0.0 : kNaN;
    report.fnr = pos > 0.0 ? fn / pos : kNaN;
  } else {
    report.released_interval = std::make_pair(c, d);
    report.utility = u_c;
    double r = d - width;
    report.cutoff = std::max(r, std::min(data.min_support(), h));
    report.fpr = neg > 0.0 ? (r < f ? interval_prob(data, r, f, false, false) / neg : 0.0)
                           : kNaN;
    report.fnr = pos > 0.0 ? (r >= f ? interval_prob(data, f, r, true, true) / pos : 0.0)
                           : kNaN;
  }
  return report;
}

Instance generate_subset_sum_instance(const std::vector<long long>& a) {
  if (a.empty()) throw ValidationError("subset-sum: input must be nonempty");
  if (a.size() > 16)
    throw CapabilityError("subset-sum: capped at 16 numbers for downstream brute force");
  long long total = 0;
  for (long long v : a) {
    if (v <= 0) throw ValidationError("subset-sum: numbers must be positive");
    total += v;
  }
  double T = static_cast<double>(total) / 2.0;

  std::vector<double> thresholds{2.0 / 3.0};
  std::vector<double> weights{0.5};
  for (std::size_t i = 0; i < a.size(); ++i) {
    thresholds.push_back(100.0 + static_cast<double>(i + 1));
    weights.push_back(static_cast<double>(a[i]) / (4.0 * T));
  }

  Instance inst;
  inst.domain = Interval{-1000.0, 1000.0};
  inst.ground_truth = ThresholdClassifier{0.0};
  inst.prior = make_threshold_prior(std::move(thresholds), std::move(weights));
  inst.deployed = 0;  // 2/3 is the smallest threshold
  inst.data = uniform_distribution(-1000.0, 1000.0);
  inst.cost = abs1d_cost(1.0);
  return make_instance(std::move(inst));
}

bool subset_sum_feasible(const std::vector<long long>& a) {
  long long total = std::accumulate(a.begin(), a.end(), 0LL);
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) s += a[i];
    }
    if (2 * s == total) return true;
  }
  return false;
}

}  // namespace stratrelease
