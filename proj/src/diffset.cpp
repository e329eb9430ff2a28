#include "larsson/diffset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "larsson/errors.hpp"
#include "larsson/rng.hpp"

namespace larsson {

namespace {

// LSD radix sort on the usual order-preserving bit transform; much
// faster than comparison sort for the ~4^n projection offsets per trial.
void radix_sort(std::vector<double>& values, std::vector<std::uint64_t>& keys,
                std::vector<std::uint64_t>& scratch) {
  const std::size_t n = values.size();
  keys.resize(n);
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t b = std::bit_cast<std::uint64_t>(values[i]);
    keys[i] = (b & 0x8000000000000000ULL) ? ~b : (b | 0x8000000000000000ULL);
  }
  std::vector<std::size_t> hist(1 << 16);
  for (int pass = 0; pass < 4; ++pass) {
    const int shift = pass * 16;
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t i = 0; i < n; ++i) ++hist[(keys[i] >> shift) & 0xffff];
    std::size_t sum = 0;
    for (auto& h : hist) {
      const std::size_t next = sum + h;
      h = sum;
      sum = next;
    }
    for (std::size_t i = 0; i < n; ++i)
      scratch[hist[(keys[i] >> shift) & 0xffff]++] = keys[i];
    keys.swap(scratch);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t k = keys[i];
    k = (k & 0x8000000000000000ULL) ? (k & ~0x8000000000000000ULL) : ~k;
    values[i] = std::bit_cast<double>(k);
  }
}

// Union length of [d - s, d + s] over sorted offsets d.
double union_length_sorted(const std::vector<double>& d, double s) {
  if (d.empty()) return 0.0;
  double len = 2.0 * s;
  for (std::size_t i = 1; i < d.size(); ++i)
    len += std::min(d[i] - d[i - 1], 2.0 * s);
  return len;
}

bool covers_sorted(const std::vector<double>& d, double s, Interval target) {
  double reach = target.lo;
  for (double v : d) {
    if (v - s > reach) return false;
    reach = std::max(reach, v + s);
    if (reach >= target.hi) return true;
  }
  return reach >= target.hi;
}

// d-values of the shared-offset construction at one level.
void shared_offsets(const OffsetTree& tx, const OffsetTree& ty, int n,
                    std::vector<double>& out) {
  const auto& ex = tx.left_endpoints(n);
  const auto& ey = ty.left_endpoints(n);
  out.clear();
  out.reserve(ex.size() * ey.size());
  for (double y : ey) {
    for (double x : ex) out.push_back(y - x);
  }
}

// Fresh-uniform (branching-coupled) construction: each square subdivides
// independently; offsets derived from the 4-ary square path.
void iid_offsets_rec(const Params& p, double t, std::uint64_t seed, int level,
                     int target, std::uint64_t path, double u, double v,
                     double side, std::vector<double>& out) {
  if (level == target) {
    out.push_back(v - u);
    return;
  }
  std::uint64_t state = derive_state(seed, 0x69696969ULL, path);
  const double u1 = t * to_unit(splitmix64(state));
  const double u2 = t * to_unit(splitmix64(state));
  const double u3 = t * to_unit(splitmix64(state));
  const double u4 = t * to_unit(splitmix64(state));
  const double xs[2] = {u + side * (p.b + u1),
                        u + side * (0.5 + p.a / 2.0 + u2)};
  const double ys[2] = {v + side * (p.b + u3),
                        v + side * (0.5 + p.a / 2.0 + u4)};
  for (int dx = 0; dx < 2; ++dx) {
    for (int dy = 0; dy < 2; ++dy) {
      iid_offsets_rec(p, t, seed, level + 1, target,
                      (path << 2) | static_cast<std::uint64_t>(dx * 2 + dy),
                      xs[dx], ys[dy], side * p.a, out);
    }
  }
}

struct TrialDepthStats {
  bool covers = false;
  double length = 0.0;
};

struct Workspace {
  std::vector<double> d;
  std::vector<std::uint64_t> keys, scratch;
};

TrialDepthStats eval_depth(const Params& p, int n, Interval target,
                           std::vector<double>& d, Workspace& ws) {
  radix_sort(d, ws.keys, ws.scratch);
  const double s = std::pow(p.a, n);
  return {covers_sorted(d, s, target), union_length_sorted(d, s)};
}

}  // namespace

CoverageReport run_trial(const Params& p, int depth, double K, int N,
                         std::uint64_t seed, ProductMode mode) {
  if (depth < 1) throw DepthExceeded("trial depth must be >= 1");
  const double target_half = K * std::pow(p.a, N);
  const Interval target{-target_half, target_half};
  const double t = derive(p).t;

  Workspace ws;
  if (mode == ProductMode::Shared) {
    OffsetTree tx(p, depth, derive_state(seed, 0, 0), 1);
    OffsetTree ty(p, depth, derive_state(seed, 0, 1), 2);
    shared_offsets(tx, ty, depth, ws.d);
  } else {
    iid_offsets_rec(p, t, seed, 0, depth, 1, 0.0, 0.0, 1.0, ws.d);
  }
  const TrialDepthStats stats = eval_depth(p, depth, target, ws.d, ws);

  CoverageReport rep;
  rep.depth = depth;
  rep.seed = seed;
  rep.covers_interval = stats.covers;
  rep.union_length = stats.length;
  const double s = std::pow(p.a, depth);
  std::vector<Interval> parts;
  parts.reserve(ws.d.size());
  for (double v : ws.d) parts.push_back({v - s, v + s});
  rep.projection_union = IntervalSet::normalized(std::move(parts), 1e-15);
  return rep;
}

CoverageEstimate estimate_interval_prob(const Params& p, double K, int N,
                                        int depth, int trials,
                                        std::uint64_t seed, ProductMode mode) {
  if (depth < 1) throw DepthExceeded("trial depth must be >= 1");
  const double target_half = K * std::pow(p.a, N);
  const Interval target{-target_half, target_half};
  const double t = derive(p).t;

  std::vector<std::uint8_t> covered(
      static_cast<std::size_t>(trials) * static_cast<std::size_t>(depth), 0);
  std::vector<double> lengths(covered.size(), 0.0);

#pragma omp parallel
  {
    Workspace ws;
#pragma omp for schedule(dynamic, 4)
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t trial_seed =
          derive_state(seed, 0x64736574ULL, static_cast<std::uint64_t>(trial));
      std::optional<OffsetTree> tx, ty;
      if (mode == ProductMode::Shared) {
        tx.emplace(p, depth, derive_state(trial_seed, 0, 0), 1);
        ty.emplace(p, depth, derive_state(trial_seed, 0, 1), 2);
      }
      for (int n = 1; n <= depth; ++n) {
        if (mode == ProductMode::Shared) {
          shared_offsets(*tx, *ty, n, ws.d);
        } else {
          ws.d.clear();
          iid_offsets_rec(p, t, trial_seed, 0, n, 1, 0.0, 0.0, 1.0, ws.d);
        }
        const TrialDepthStats st = eval_depth(p, n, target, ws.d, ws);
        const std::size_t idx = static_cast<std::size_t>(trial) *
                                    static_cast<std::size_t>(depth) +
                                static_cast<std::size_t>(n - 1);
        covered[idx] = st.covers ? 1 : 0;
        lengths[idx] = st.length;
      }
    }
  }

  CoverageEstimate est;
  est.trials = trials;
  est.covered_by_depth.assign(static_cast<std::size_t>(depth), 0);
  est.mean_union_length.assign(static_cast<std::size_t>(depth), 0.0);
  for (int trial = 0; trial < trials; ++trial) {
    for (int n = 1; n <= depth; ++n) {
      const std::size_t idx = static_cast<std::size_t>(trial) *
                                  static_cast<std::size_t>(depth) +
                              static_cast<std::size_t>(n - 1);
      est.covered_by_depth[static_cast<std::size_t>(n - 1)] += covered[idx];
      est.mean_union_length[static_cast<std::size_t>(n - 1)] += lengths[idx];
      if (n > 1 && covered[idx] && !covered[idx - 1])
        ++est.monotonicity_violations;
    }
  }
  for (double& m : est.mean_union_length) m /= trials;
  est.covered = est.covered_by_depth.back();
  est.probability = static_cast<double>(est.covered) / trials;

  // Wilson score interval at 95%.
  const double z = 1.959963984540054;
  const double n_ = trials;
  const double ph = est.probability;
  const double denom = 1.0 + z * z / n_;
  const double center = ph + z * z / (2.0 * n_);
  const double spread =
      z * std::sqrt(ph * (1.0 - ph) / n_ + z * z / (4.0 * n_ * n_));
  est.ci_low = (center - spread) / denom;
  est.ci_high = (center + spread) / denom;
  return est;
}

std::pair<long, long> count_nice(std::span<const Square> squares, double x,
                                 double K) {
  long lminus = 0, lplus = 0;
  for (const Square& q : squares) {
    const TypeValue tv = phi(q, x);
    if (!tv) continue;
    if (*tv >= -K && *tv <= 0.0) ++lminus;
    if (*tv >= 0.0 && *tv <= K) ++lplus;
  }
  return {lminus, lplus};
}

bool check_event_A(const OffsetTree& t1, const OffsetTree& t2, const Square& q,
                   double x, int n, double delta, double rho, double K,
                   const Params& p) {
  const int target = q.level + n;
  if (target > t1.depth() || target > t2.depth())
    throw DepthExceeded("event level exceeds tree depth");
  const auto& ex = t1.left_endpoints(target);
  const auto& ey = t2.left_endpoints(target);
  const double side = q.side * std::pow(p.a, n);
  const std::uint32_t lo_x = q.ix << n, lo_y = q.iy << n;
  const std::uint32_t span = 1u << n;
  long lminus = 0, lplus = 0;
  for (std::uint32_t i = 0; i < span; ++i) {
    for (std::uint32_t j = 0; j < span; ++j) {
      const Square child{target, ex[lo_x + i], ey[lo_y + j], side, lo_x + i,
                         lo_y + j};
      const TypeValue tv = phi(child, x);
      if (!tv) continue;
      if (*tv >= -K && *tv <= 0.0) ++lminus;
      if (*tv >= 0.0 && *tv <= K) ++lplus;
    }
  }
  const double threshold = delta * std::pow(rho, n);
  return lminus > threshold && lplus > threshold;
}

std::uint64_t SubdivisionScheme::count() const {
  if (2 * exponent >= 63) throw Overflow("too many subdivision intervals");
  return std::uint64_t{1} << (2 * exponent);
}

double SubdivisionScheme::center(std::uint64_t i) const {
  if (i >= count()) throw BadIndex("subdivision index out of range");
  return -interval_half + (static_cast<double>(i) + 0.5) * 2.0 * half_width;
}

SubdivisionScheme subdivision(double K, int N, double a, int k) {
  if (k < 1) throw BadIndex("subdivision level must be >= 1");
  SubdivisionScheme s;
  s.K = K;
  s.N = N;
  s.level = k;
  s.g_k = static_cast<long>(k + 1) * (k + 2) * N / 2;
  s.exponent = s.g_k - N;  // (2 + ... + (k+1)) N
  s.interval_half = K * std::pow(a, N);
  s.half_width =
      s.interval_half * std::pow(4.0, -static_cast<double>(s.exponent));
  s.length_check_ok =
      2.0 * s.half_width < 2.0 * K * std::pow(a, static_cast<double>(s.g_k));
  return s;
}

BoundResult palis_lower_bound(double q, double delta, double rho, int N,
                              int kmax) {
  if (q < 0.0 || q >= 1.0) throw ConfigError("q must lie in [0, 1)");
  if (delta < 0.0) throw ConfigError("delta must be >= 0");
  if (rho <= 0.0 || N < 1 || kmax < 1)
    throw ConfigError("need rho > 0, N >= 1, kmax >= 1");
  BoundResult out;
  out.value = q;
  out.factors.reserve(static_cast<std::size_t>(kmax));
  const double log4 = std::log(4.0);
  const double log1mq = q > 0.0 ? std::log1p(-q) : 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double exponent =
        (static_cast<double>(k + 1) * (k + 2) / 2.0 - 1.0) * N;
    const double rho_kn = std::exp(static_cast<double>(k) * N * std::log(rho));
    double log_term = exponent * log4 + delta * rho_kn * log1mq;
    const double term = std::exp(log_term);
    double factor = 1.0 - term;
    if (factor <= 0.0) {
      factor = 0.0;
      out.divergent = true;
    }
    if (factor > 1.0 - 1e-12 && out.first_tail_k < 0) out.first_tail_k = k;
    out.factors.push_back(factor);
    out.value *= factor;
  }
  return out;
}

}  // namespace larsson
