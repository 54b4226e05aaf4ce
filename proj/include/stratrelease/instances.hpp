#pragma once

#include <cstdint>
#include <vector>

#include "stratrelease/core.hpp"

namespace stratrelease {

// Two-point world with asymmetric tabular costs: the classic case where
// releasing {h1, h2} beats both full and no information release.
Instance example_table1();

// Screening on [0, 2] with prior 0.9 on threshold 1.8 and 0.1 on 2.0;
// releasing the support yields perfect accuracy.
Instance example_thresholds();

// Two-atom instance whose FPR-optimal release is neither {h} nor the full
// support.
Instance example_claim_fpr();

enum class PriorKind { Uniform, Dirichlet };
enum class DataKind { UniformPiece, Atoms };

struct RandomThresholdConfig {
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  double f_min = 0.1;
  double f_max = 0.5;
  double h_min = 0.3;
  double h_max = 0.9;
  double spread = 0.5;  // thresholds drawn within +- spread of h
  PriorKind prior = PriorKind::Uniform;
  DataKind data = DataKind::UniformPiece;
  std::size_t atom_count = 6;
  double cost_scale = 1.0;
};

// Seed-deterministic screening instance: sorted random thresholds containing
// h >= f, uniform or Dirichlet prior, uniform or atomic data.
Instance random_threshold_instance(std::size_t n, std::uint64_t seed,
                                   const RandomThresholdConfig& config = {});

struct RandomLinear2D {
  std::vector<Vec2> agents;
  Posterior posterior;
  Prior prior;
  Box bbox;
};

// Random lines with unit normals through the box plus random agent points.
RandomLinear2D random_linear2d(std::size_t n, std::uint64_t seed, const Box& bbox,
                               std::size_t agent_count = 4);

}  // namespace stratrelease
