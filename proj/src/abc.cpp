// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/abc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lidarplace/error.hpp"

namespace lidarplace::abc {
namespace {

enum Phase : std::uint64_t {
  kInit = 1,
  kEmployed = 2,
  kSelect = 3,
  kOnlooker = 4,
  kScout = 5,
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng stream(std::uint64_t seed, std::uint64_t iteration, Phase phase,
           std::uint64_t slot) {
  return Rng(substream_seed(seed, iteration, phase, slot));
}

std::vector<double> random_solution(const Bounds& bounds, Rng& rng) {
  std::vector<double> x(bounds.dim());
  for (std::size_t j = 0; j < x.size(); ++j) {
    std::uniform_real_distribution<double> u(bounds.lower[j], bounds.upper[j]);
    x[j] = bounds.lower[j] == bounds.upper[j] ? bounds.lower[j] : u(rng);
  }
  bounds.clamp(x);
  return x;
}

std::size_t pick_partner(std::size_t i, std::size_t count, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, count - 2);
  const std::size_t k = pick(rng);
  return k >= i ? k + 1 : k;
}

class Trial {
 public:
  Trial(const Bounds& bounds, bool all_dims) : bounds_(bounds), all_(all_dims) {}

  std::vector<double> operator()(const std::vector<FoodSource>& sources,
                                 std::size_t i, Rng& rng) const {
    const std::size_t k = pick_partner(i, sources.size(), rng);
    const auto& xi = sources[i].solution;
    const auto& xk = sources[k].solution;
    if (!all_) {
      std::uniform_int_distribution<std::size_t> dim(0, bounds_.dim() - 1);
      const std::size_t j = dim(rng);
      return neighbor(xi, xk, j, bounds_, rng);
    }
    std::vector<double> v = xi;
    std::uniform_real_distribution<double> phi(-1.0, 1.0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = xi[j] + phi(rng) * (xi[j] - xk[j]);
    }
    bounds_.clamp(v);
    return v;
  }

 private:
  const Bounds& bounds_;
  bool all_;
};

std::vector<double> evaluate_batch(const Objective& objective,
                                   const std::vector<std::vector<double>>& xs,
                                   int threads) {
  std::vector<double> costs(xs.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      costs[i] = objective(xs[i]);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  (void)threads;
  if (failure) std::rethrow_exception(failure);
  return costs;
}

}  // namespace

void Bounds::validate() const {
  if (lower.empty() || lower.size() != upper.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "bounds need matching non-empty lower/upper vectors");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) ||
        lower[j] > upper[j]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bounds inverted or non-finite in dimension " +
                      std::to_string(j));
    }
  }
}

void Bounds::clamp(std::span<double> x) const {
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = std::clamp(x[j], lower[j], upper[j]);
  }
}

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= lower[j] && x[j] <= upper[j])) return false;
  }
  return true;
}

void AbcParams::validate() const {
  if (num_bees < 2) {
    throw Error(ErrorCode::kInvalidArgument, "abc: need at least 2 bees");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "abc: need at least 1 iteration");
  }
  if (abandonment_threshold < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "abc: abandonment threshold must be >= 1");
  }
  if (threads < 0) {
    throw Error(ErrorCode::kInvalidArgument, "abc: threads must be >= 0");
  }
}

double fitness(double cost) {
  if (!std::isfinite(cost) || cost < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "fitness needs a finite non-negative cost, got " +
                    std::to_string(cost));
  }
  return 1.0 / (1.0 + cost);
}

std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng) {
  double total = 0.0;
  for (double f : fitnesses) total += f;
  std::uniform_real_distribution<double> u(0.0, total);
  const double target = u(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    acc += fitnesses[i];
    if (target < acc) return i;
  }
  return fitnesses.size() - 1;
}

std::vector<double> neighbor(std::span<const double> x_i,
                             std::span<const double> x_k, std::size_t j,
                             double phi, const Bounds& bounds) {
  std::vector<double> v(x_i.begin(), x_i.end());
  v[j] = x_i[j] + phi * (x_i[j] - x_k[j]);
  bounds.clamp(v);
  return v;
}

std::vector<double> neighbor(std::span<const double> x_i,
                             std::span<const double> x_k, std::size_t j,
                             const Bounds& bounds, Rng& rng) {
  std::uniform_real_distribution<double> phi(-1.0, 1.0);
  return neighbor(x_i, x_k, j, phi(rng), bounds);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t iteration,
                             std::uint64_t phase, std::uint64_t slot) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ iteration);
  h = splitmix64(h ^ phase);
  return splitmix64(h ^ slot);
}

SolveResult optimize(const Objective& objective, const Bounds& bounds,
                     const AbcParams& params) {
  bounds.validate();
  params.validate();
  const std::size_t tau = params.num_bees;
  const Trial trial(bounds, params.mutate_all_dimensions);

  SolveResult result;
  result.abandonments.assign(tau, 0);
  result.history.reserve(params.max_iterations);

  std::vector<FoodSource> sources(tau);
  std::vector<std::vector<double>> batch(tau);

  auto accept = [&](FoodSource& src, std::vector<double>&& x, double cost) {
    src.solution = std::move(x);
    src.cost = cost;
    src.fitness = fitness(cost);
    src.stagnation = 0;
  };
  auto track_best = [&](const std::vector<double>& x, double cost) {
    if (result.best_solution.empty() || cost < result.best_cost) {
      result.best_solution = x;
      result.best_cost = cost;
    }
  };
  auto run_batch = [&](const std::vector<std::vector<double>>& xs) {
    result.evaluations += xs.size();
    auto costs = evaluate_batch(objective, xs, params.threads);
    for (double c : costs) fitness(c);  // reject negative / non-finite
    return costs;
  };

  for (std::size_t i = 0; i < tau; ++i) {
    Rng rng = stream(params.rng_seed, 0, kInit, i);
    batch[i] = random_solution(bounds, rng);
  }
  {
    const auto costs = run_batch(batch);
    for (std::size_t i = 0; i < tau; ++i) {
      track_best(batch[i], costs[i]);
      accept(sources[i], std::move(batch[i]), costs[i]);
    }
  }

  std::vector<std::size_t> picks(tau);
  std::vector<double> fits(tau);
  for (std::size_t it = 1; it <= params.max_iterations; ++it) {
    // Employed bees.
    for (std::size_t i = 0; i < tau; ++i) {
      Rng rng = stream(params.rng_seed, it, kEmployed, i);
      batch[i] = trial(sources, i, rng);
    }
    auto costs = run_batch(batch);
    for (std::size_t i = 0; i < tau; ++i) {
      track_best(batch[i], costs[i]);
      if (fitness(costs[i]) > sources[i].fitness) {
        accept(sources[i], std::move(batch[i]), costs[i]);
      } else {
        ++sources[i].stagnation;
      }
    }

    // Onlookers: picks and trials are drawn against the post-employed
    // population, then applied in onlooker order.
    for (std::size_t i = 0; i < tau; ++i) fits[i] = sources[i].fitness;
    Rng select_rng = stream(params.rng_seed, it, kSelect, 0);
    for (std::size_t o = 0; o < tau; ++o) {
      picks[o] = roulette_select(fits, select_rng);
      Rng rng = stream(params.rng_seed, it, kOnlooker, o);
      batch[o] = trial(sources, picks[o], rng);
    }
    costs = run_batch(batch);
    for (std::size_t o = 0; o < tau; ++o) {
      FoodSource& src = sources[picks[o]];
      track_best(batch[o], costs[o]);
      if (fitness(costs[o]) > src.fitness) {
        accept(src, std::move(batch[o]), costs[o]);
      } else {
        ++src.stagnation;
      }
    }

    // Scouts.
    std::vector<std::size_t> abandoned;
    std::vector<std::vector<double>> fresh;
    for (std::size_t i = 0; i < tau; ++i) {
      if (sources[i].stagnation >= params.abandonment_threshold) {
        Rng rng = stream(params.rng_seed, it, kScout, i);
        abandoned.push_back(i);
        fresh.push_back(random_solution(bounds, rng));
      }
    }
    if (!abandoned.empty()) {
      costs = run_batch(fresh);
      for (std::size_t s = 0; s < abandoned.size(); ++s) {
        track_best(fresh[s], costs[s]);
        accept(sources[abandoned[s]], std::move(fresh[s]), costs[s]);
        ++result.abandonments[abandoned[s]];
      }
    }

    double sum = 0.0;
    for (const auto& src : sources) sum += src.cost;
    result.history.push_back({result.best_cost, sum / static_cast<double>(tau)});
  }
  return result;
}

}  // namespace lidarplace::abc
