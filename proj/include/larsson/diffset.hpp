#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "larsson/cantor.hpp"
#include "larsson/interval_set.hpp"
#include "larsson/params.hpp"

namespace larsson {

// Shared: all level-n squares come from one pair of sampled offset trees
// (the genuine product construction). Iid: every square subdivides with
// fresh uniforms, which is the branching-process coupling.
enum class ProductMode { Shared, Iid };

struct CoverageReport {
  int depth = 0;
  IntervalSet projection_union;
  bool covers_interval = false;
  double union_length = 0.0;
  std::uint64_t seed = 0;
};

// Union of the 45-degree projections of all level-`depth` squares of one
// sampled construction, tested against I = [-K a^N, K a^N].
CoverageReport run_trial(const Params& p, int depth, double K, int N,
                         std::uint64_t seed,
                         ProductMode mode = ProductMode::Shared);

struct CoverageEstimate {
  double probability = 0.0;  // coverage frequency at the deepest level
  double ci_low = 0.0;       // Wilson 95%
  double ci_high = 0.0;
  int trials = 0;
  int covered = 0;
  std::vector<double> mean_union_length;  // index n-1 for levels 1..depth
  std::vector<int> covered_by_depth;
  int monotonicity_violations = 0;  // covered at n+1 but not at n
};

CoverageEstimate estimate_interval_prob(const Params& p, double K, int N,
                                        int depth, int trials,
                                        std::uint64_t seed,
                                        ProductMode mode = ProductMode::Shared);

// Signed nice-intersection counts: types in [0, K] and [-K, 0] (a type
// of exactly 0 lands in both).
std::pair<long, long> count_nice(std::span<const Square> squares, double x,
                                 double K);

// True iff both signed counts of nice level-(m+n) descendants of Q
// exceed delta * rho^n.
bool check_event_A(const OffsetTree& t1, const OffsetTree& t2, const Square& q,
                   double x, int n, double delta, double rho, double K,
                   const Params& p);

// Recursive tiling of I = [-K a^N, K a^N]: level k splits every level
// (k-1) interval into 4^((k+1)N) equal pieces.
struct SubdivisionScheme {
  double K = 0.0;
  int N = 0;
  int level = 0;
  long exponent = 0;    // (2 + ... + (k+1)) N, so count = 4^exponent
  long g_k = 0;         // (k+1)(k+2) N / 2
  double interval_half = 0.0;  // K a^N, half-length of the tiled interval
  double half_width = 0.0;
  bool length_check_ok = false;  // interval length < 2 K a^{g_k}

  std::uint64_t count() const;        // throws Overflow
  double center(std::uint64_t i) const;  // left to right
};

SubdivisionScheme subdivision(double K, int N, double a, int k);

struct BoundResult {
  double value = 0.0;
  bool divergent = false;  // some factor clamped at zero
  int first_tail_k = -1;   // first factor above 1 - 1e-12
  std::vector<double> factors;
};

// q * prod_{k=1..kmax} (1 - 4^{(2+...+(k+1))N} (1-q)^{delta rho^{kN}}),
// negative factors clamped to zero.
BoundResult palis_lower_bound(double q, double delta, double rho, int N,
                              int kmax);

}  // namespace larsson
