// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// Artificial Bee Colony minimizer for bounded black-box objectives.
//
// Each iteration runs three phases over tau food sources:
//   employed  - one neighbor trial per source, greedy replacement;
//   onlooker  - tau fitness-proportional (roulette) picks, one trial each;
//   scout     - sources whose stagnation counter reached the abandonment
//               threshold are replaced by uniform random solutions.
//
// Candidate generation draws from RNG substreams keyed by
// (seed, iteration, phase, slot), and objective values are gathered into
// fixed slots before any greedy decision, so results do not depend on the
// number of worker threads.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace lidarplace::abc {

using Rng = std::mt19937_64;
using Objective = std::function<double(std::span<const double>)>;

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const { return lower.size(); }
  void validate() const;
  void clamp(std::span<double> x) const;
  bool contains(std::span<const double> x) const;
};

struct AbcParams {
  std::size_t num_bees = 200;
  std::size_t max_iterations = 800;
  std::size_t abandonment_threshold = 100;
  std::uint64_t rng_seed = 1;
  /// Perturb every dimension per trial instead of one random dimension.
  bool mutate_all_dimensions = false;
  /// Worker threads for objective evaluation; 0 picks the runtime default.
  int threads = 1;

  void validate() const;
};

struct FoodSource {
  std::vector<double> solution;
  double cost = 0.0;
  double fitness = 1.0;
  std::size_t stagnation = 0;
};

struct IterationStats {
  double best_cost = 0.0;
  double mean_cost = 0.0;
};

struct SolveResult {
  std::vector<double> best_solution;
  double best_cost = 0.0;
  std::vector<IterationStats> history;  // one entry per iteration
  /// Number of times each source slot was abandoned by a scout.
  std::vector<std::size_t> abandonments;
  std::size_t evaluations = 0;
};

/// 1 / (1 + cost). Throws Error(kInvalidArgument) for negative or non-finite
/// cost.
double fitness(double cost);

/// Index i drawn with probability fitnesses[i] / sum(fitnesses).
std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng);

/// Copy of x_i with dimension j moved to x_ij + phi (x_ij - x_kj), clamped
/// into the bounds.
std::vector<double> neighbor(std::span<const double> x_i,
                             std::span<const double> x_k, std::size_t j,
                             double phi, const Bounds& bounds);

/// As above with phi drawn uniformly from [-1, 1].
std::vector<double> neighbor(std::span<const double> x_i,
                             std::span<const double> x_k, std::size_t j,
                             const Bounds& bounds, Rng& rng);

/// Deterministic seed for an independent RNG substream.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t iteration,
                             std::uint64_t phase, std::uint64_t slot);

/// Minimizes a non-negative objective over the box. The objective must be
/// pure and thread-safe when params.threads != 1.
SolveResult optimize(const Objective& objective, const Bounds& bounds,
                     const AbcParams& params);

}  // namespace lidarplace::abc
