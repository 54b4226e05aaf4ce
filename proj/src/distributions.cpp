#include "stratrelease/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "stratrelease/errors.hpp"

namespace stratrelease {

double DataDistribution::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.mass;
  for (const auto& p : uniform_pieces) m += p.mass;
  return m;
}

double DataDistribution::min_support() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms) m = std::min(m, a.location);
  for (const auto& p : uniform_pieces) m = std::min(m, p.lo);
  return m;
}

double DataDistribution::max_support() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& a : atoms) m = std::max(m, a.location);
  for (const auto& p : uniform_pieces) m = std::max(m, p.hi);
  return m;
}

DataDistribution make_distribution(std::vector<DataDistribution::Atom> atoms,
                                   std::vector<DataDistribution::Piece> pieces) {
  DataDistribution d{std::move(atoms), std::move(pieces)};
  for (const auto& a : d.atoms) {
    if (a.mass < 0.0) throw ValidationError("distribution: negative atom mass");
  }
  for (const auto& p : d.uniform_pieces) {
    if (p.mass < 0.0) throw ValidationError("distribution: negative piece mass");
    if (!(p.lo < p.hi)) throw ValidationError("distribution: piece needs lo < hi");
  }
  std::sort(d.atoms.begin(), d.atoms.end(),
            [](const auto& a, const auto& b) { return a.location < b.location; });
  for (std::size_t i = 1; i < d.atoms.size(); ++i) {
    if (d.atoms[i].location - d.atoms[i - 1].location <= 1e-12)
      throw ValidationError("distribution: atom locations must be distinct");
  }
  std::sort(d.uniform_pieces.begin(), d.uniform_pieces.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < d.uniform_pieces.size(); ++i) {
    if (d.uniform_pieces[i].lo < d.uniform_pieces[i - 1].hi - 1e-12)
      throw ValidationError("distribution: pieces must not overlap each other");
  }
  if (std::abs(d.total_mass() - 1.0) > 1e-9)
    throw ValidationError("distribution: total mass must be 1");
  return d;
}

DataDistribution uniform_distribution(double lo, double hi) {
  return make_distribution({}, {{lo, hi, 1.0}});
}

DataDistribution atom_distribution(std::vector<DataDistribution::Atom> atoms) {
  return make_distribution(std::move(atoms), {});
}

double interval_prob(const DataDistribution& dist, double lo, double hi, bool lo_inclusive,
                     bool hi_inclusive) {
  if (lo > hi) return 0.0;
  double mass = 0.0;
  for (const auto& a : dist.atoms) {
    if (a.location < lo || a.location > hi) continue;
    if (a.location == lo && !lo_inclusive) continue;
    if (a.location == hi && !hi_inclusive) continue;
    mass += a.mass;
  }
  for (const auto& p : dist.uniform_pieces) {
    double overlap = std::min(hi, p.hi) - std::max(lo, p.lo);
    if (overlap > 0.0) mass += overlap * p.mass / (p.hi - p.lo);
  }
  return mass;
}

std::vector<double> sample(const DataDistribution& dist, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Component selection walks atoms first, then pieces, in stored order.
  std::vector<double> cumulative;
  cumulative.reserve(dist.atoms.size() + dist.uniform_pieces.size());
  double acc = 0.0;
  for (const auto& a : dist.atoms) {
    acc += a.mass;
    cumulative.push_back(acc);
  }
  for (const auto& p : dist.uniform_pieces) {
    acc += p.mass;
    cumulative.push_back(acc);
  }

  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double u = unit(rng) * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
    if (idx < dist.atoms.size()) {
      out.push_back(dist.atoms[idx].location);
    } else {
      const auto& p = dist.uniform_pieces[idx - dist.atoms.size()];
      out.push_back(p.lo + unit(rng) * (p.hi - p.lo));
    }
  }
  return out;
}

}  // namespace stratrelease
