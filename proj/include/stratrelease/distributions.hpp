#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stratrelease {

// Mixed 1-D measure: point masses plus piecewise-uniform density pieces.
// Pieces may overlap atoms but not each other.
struct DataDistribution {
  struct Atom {
    double location = 0.0;
    double mass = 0.0;
  };
  struct Piece {
    double lo = 0.0;
    double hi = 1.0;
    double mass = 0.0;
  };

  std::vector<Atom> atoms;
  std::vector<Piece> uniform_pieces;

  bool atoms_only() const { return uniform_pieces.empty(); }
  double total_mass() const;
  double min_support() const;
  double max_support() const;
};

DataDistribution make_distribution(std::vector<DataDistribution::Atom> atoms,
                                   std::vector<DataDistribution::Piece> pieces);
DataDistribution uniform_distribution(double lo, double hi);
DataDistribution atom_distribution(std::vector<DataDistribution::Atom> atoms);

// Exact probability of the interval. Atoms at an endpoint count only when
// the matching inclusivity flag is set; continuous pieces contribute
// overlap-length x density regardless of the flags. lo > hi yields 0.
double interval_prob(const DataDistribution& dist, double lo, double hi, bool lo_inclusive,
                     bool hi_inclusive);

// PRNG algorithm identifier recorded in run metadata.
inline constexpr const char* kSampleRngId = "mt19937_64";

// Deterministic i.i.d. sample of `count` points for the given seed.
std::vector<double> sample(const DataDistribution& dist, std::size_t count, std::uint64_t seed);

}  // namespace stratrelease
