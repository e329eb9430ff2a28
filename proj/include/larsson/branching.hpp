#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "larsson/cantor.hpp"
#include "larsson/interval_set.hpp"
#include "larsson/params.hpp"
#include "larsson/rng.hpp"
#include "larsson/type_space.hpp"

namespace larsson {

struct Population {
  int generation = 0;
  std::vector<double> types;  // all in the type space
  bool empty() const { return types.empty(); }
};

// One generation: every individual draws four fresh uniforms on [0, t];
// children outside the type space are discarded. Children are appended
// in parent order, within a parent by child index.
Population step(const Population& pop, const Params& p, const TypeSpace& T,
                RngStream& stream);

struct SetCounts {
  Interval set;
  std::vector<std::uint32_t> counts;  // one entry per (unflagged) trial
  double mean() const;
  double std_error() const;  // standard error of the mean
};

struct SimulationResult {
  double start_type = 0.0;
  int generations = 0;
  int trials = 0;
  int flagged_trials = 0;  // hit the population cap, excluded from stats
  int surviving_trials = 0;
  std::vector<SetCounts> sets;
};

// Z_n(A) statistics for each requested set, from `trials` independent
// runs started at x; per-trial RNG streams derived from (seed, trial).
SimulationResult simulate_counts(double x, int n,
                                 std::span<const Interval> sets, int trials,
                                 std::uint64_t seed, const Params& p,
                                 const TypeSpace& T,
                                 std::int64_t population_cap = 10'000'000);

// Same expectations, different coupling: descendants taken from the
// product of two sampled offset trees (offsets shared between squares)
// instead of i.i.d. per-parent uniforms. Means match; laws do not.
SimulationResult simulate_counts_shared(double x, int n,
                                        std::span<const Interval> sets,
                                        int trials, std::uint64_t seed,
                                        const Params& p, const TypeSpace& T);

struct SurvivalFloor {
  double rhat = 0.0;                // min over the x-grid of P_x(W > y)
  std::vector<double> per_x;        // P_x(W_nproxy(A) > y)
  double histogram_drift = 0.0;     // W-histogram change nproxy vs nproxy+5
  int nproxy = 0;
  double threshold_y = 0.0;
};

SurvivalFloor estimate_survival_floor(std::span<const double> xgrid,
                                      Interval A, double y, int trials,
                                      int nproxy, std::uint64_t seed,
                                      const Params& p, const TypeSpace& T,
                                      double rho);

struct MainLemmaEstimate {
  double K = 0.0;
  double delta = 0.0;
  int N = 0;                                // smallest generation tested
  std::vector<int> nrange;
  std::vector<double> xgrid;
  std::vector<std::vector<double>> table;   // [x index][n index] -> prob
  double qhat = 0.0;                        // min over the table
  double ci_half_width = 0.0;               // 95% at the min cell
};

// Empirical P_x(Z_n([-K,0]) > delta rho^n and Z_n([0,K]) > delta rho^n)
// over an x-grid and a range of generations. Throws KTooLarge.
MainLemmaEstimate estimate_main_lemma(const Params& p, const TypeSpace& T,
                                      double rho, double K, double delta,
                                      std::span<const int> nrange,
                                      std::span<const double> xgrid,
                                      int trials, std::uint64_t seed);

// Probability that one generation from x yields both middle children
// (indices 2 and 4) with types in [-K, K].
double estimate_p24(double x, double K, int trials, std::uint64_t seed,
                    const Params& p, const TypeSpace& T);

// Default nice-intersection half-width: min(0.124, 90% of the distance
// from 0 to the boundary of the middle component).
double default_K(const TypeSpace& T);

}  // namespace larsson
