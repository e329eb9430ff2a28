#include "larsson/branching.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "larsson/errors.hpp"

namespace larsson {

Population step(const Population& pop, const Params& p, const TypeSpace& T,
                RngStream& stream) {
  const double t = derive(p).t;
  Population next;
  next.generation = pop.generation + 1;
  next.types.reserve(pop.types.size() * 2);
  for (double z : pop.types) {
    const double u1 = stream.uniform(0.0, t);
    const double u2 = stream.uniform(0.0, t);
    const double u3 = stream.uniform(0.0, t);
    const double u4 = stream.uniform(0.0, t);
    for (const Offspring& child : offspring_types(z, u1, u2, u3, u4, p)) {
      if (T.contains(child.type)) next.types.push_back(child.type);
    }
  }
  return next;
}

double SetCounts::mean() const {
  if (counts.empty()) return 0.0;
  double sum = 0.0;
  for (std::uint32_t c : counts) sum += c;
  return sum / static_cast<double>(counts.size());
}

double SetCounts::std_error() const {
  if (counts.size() < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (std::uint32_t c : counts) {
    const double d = c - m;
    ss += d * d;
  }
  const double var = ss / (static_cast<double>(counts.size()) - 1.0);
  return std::sqrt(var / static_cast<double>(counts.size()));
}

namespace {

std::uint32_t count_in(const std::vector<double>& types, Interval set) {
  std::uint32_t n = 0;
  for (double z : types) {
    if (set.contains(z)) ++n;
  }
  return n;
}

}  // namespace

SimulationResult simulate_counts(double x, int n,
                                 std::span<const Interval> sets, int trials,
                                 std::uint64_t seed, const Params& p,
                                 const TypeSpace& T,
                                 std::int64_t population_cap) {
  if (!T.contains(x)) throw XOutsideT("start type outside the type space");
  SimulationResult res;
  res.start_type = x;
  res.generations = n;
  res.trials = trials;
  res.sets.reserve(sets.size());
  for (Interval s : sets) res.sets.push_back({s, {}});

  const std::size_t nsets = sets.size();
  std::vector<std::uint32_t> table(static_cast<std::size_t>(trials) * nsets);
  std::vector<std::uint8_t> flagged(static_cast<std::size_t>(trials), 0);
  std::vector<std::uint8_t> survived(static_cast<std::size_t>(trials), 0);

#pragma omp parallel for schedule(dynamic, 64)
  for (int trial = 0; trial < trials; ++trial) {
    RngStream stream(derive_state(seed, 0x7472u, static_cast<std::uint64_t>(trial)));
    Population pop;
    pop.types.push_back(x);
    for (int gen = 0; gen < n; ++gen) {
      pop = step(pop, p, T, stream);
      if (static_cast<std::int64_t>(pop.types.size()) > population_cap) {
        flagged[static_cast<std::size_t>(trial)] = 1;
        break;
      }
      if (pop.empty()) break;
    }
    if (flagged[static_cast<std::size_t>(trial)]) continue;
    survived[static_cast<std::size_t>(trial)] = pop.empty() ? 0 : 1;
    for (std::size_t si = 0; si < nsets; ++si) {
      table[static_cast<std::size_t>(trial) * nsets + si] =
          count_in(pop.types, sets[si]);
    }
  }

  for (int trial = 0; trial < trials; ++trial) {
    if (flagged[static_cast<std::size_t>(trial)]) {
      ++res.flagged_trials;
      continue;
    }
    res.surviving_trials += survived[static_cast<std::size_t>(trial)];
    for (std::size_t si = 0; si < nsets; ++si) {
      res.sets[si].counts.push_back(
          table[static_cast<std::size_t>(trial) * nsets + si]);
    }
  }
  return res;
}

namespace {

// Depth-first walk over the shared-offset product square tree, pruning
// branches whose type leaves T.
void count_shared_rec(const OffsetTree& tx, const OffsetTree& ty,
                      const Params& p, const TypeSpace& T, double x, int level,
                      int target, std::uint32_t ix, std::uint32_t iy,
                      std::span<const Interval> sets,
                      std::span<std::uint32_t> out) {
  const auto& ex = tx.left_endpoints(level + 1);
  const auto& ey = ty.left_endpoints(level + 1);
  const double side = std::pow(p.a, level + 1);
  for (std::uint32_t dx = 0; dx < 2; ++dx) {
    for (std::uint32_t dy = 0; dy < 2; ++dy) {
      const Square child{level + 1, ex[ix * 2 + dx], ey[iy * 2 + dy], side,
                         ix * 2 + dx, iy * 2 + dy};
      const TypeValue tv = phi(child, x);
      if (!tv || !T.contains(*tv)) continue;
      if (level + 1 == target) {
        for (std::size_t si = 0; si < sets.size(); ++si) {
          if (sets[si].contains(*tv)) ++out[si];
        }
      } else {
        count_shared_rec(tx, ty, p, T, x, level + 1, target, ix * 2 + dx,
                         iy * 2 + dy, sets, out);
      }
    }
  }
}

}  // namespace

SimulationResult simulate_counts_shared(double x, int n,
                                        std::span<const Interval> sets,
                                        int trials, std::uint64_t seed,
                                        const Params& p, const TypeSpace& T) {
  if (!T.contains(x)) throw XOutsideT("start type outside the type space");
  SimulationResult res;
  res.start_type = x;
  res.generations = n;
  res.trials = trials;
  for (Interval s : sets) res.sets.push_back({s, {}});
  const std::size_t nsets = sets.size();
  std::vector<std::uint32_t> table(static_cast<std::size_t>(trials) * nsets, 0);
  std::vector<std::uint8_t> survived(static_cast<std::size_t>(trials), 0);

#pragma omp parallel for schedule(dynamic, 16)
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s1 = derive_state(seed, 0x7368u, 2u * trial);
    const std::uint64_t s2 = derive_state(seed, 0x7368u, 2u * trial + 1);
    OffsetTree tx(p, n, s1, 1);
    OffsetTree ty(p, n, s2, 2);
    auto row = std::span<std::uint32_t>(
        table.data() + static_cast<std::size_t>(trial) * nsets, nsets);
    count_shared_rec(tx, ty, p, T, x, 0, n, 0, 0, sets, row);
    std::uint32_t total = 0;
    for (std::uint32_t c : row) total += c;
    survived[static_cast<std::size_t>(trial)] = total > 0 ? 1 : 0;
  }

  for (int trial = 0; trial < trials; ++trial) {
    res.surviving_trials += survived[static_cast<std::size_t>(trial)];
    for (std::size_t si = 0; si < nsets; ++si) {
      res.sets[si].counts.push_back(
          table[static_cast<std::size_t>(trial) * nsets + si]);
    }
  }
  return res;
}

SurvivalFloor estimate_survival_floor(std::span<const double> xgrid,
                                      Interval A, double y, int trials,
                                      int nproxy, std::uint64_t seed,
                                      const Params& p, const TypeSpace& T,
                                      double rho) {
  SurvivalFloor out;
  out.nproxy = nproxy;
  out.threshold_y = y;
  out.rhat = 1.0;
  const double rho_n = std::pow(rho, nproxy);
  const double rho_n5 = std::pow(rho, nproxy + 5);

  // W histograms at nproxy and nproxy + 5 (pooled over the grid) for the
  // stabilization diagnostic.
  constexpr int kBins = 20;
  const double wmax = 8.0;
  std::vector<double> hist_a(kBins, 0.0), hist_b(kBins, 0.0);

  for (std::size_t xi = 0; xi < xgrid.size(); ++xi) {
    int hits = 0;
    for (int trial = 0; trial < trials; ++trial) {
      RngStream stream(
          derive_state(seed, 0x73660000u + xi, static_cast<std::uint64_t>(trial)));
      Population pop;
      pop.types.push_back(xgrid[xi]);
      for (int gen = 0; gen < nproxy && !pop.empty(); ++gen)
        pop = step(pop, p, T, stream);
      const double w = count_in(pop.types, A) / rho_n;
      if (w > y) ++hits;
      hist_a[std::min(kBins - 1, static_cast<int>(w / wmax * kBins))] += 1.0;
      for (int gen = 0; gen < 5 && !pop.empty(); ++gen)
        pop = step(pop, p, T, stream);
      const double w5 = count_in(pop.types, A) / rho_n5;
      hist_b[std::min(kBins - 1, static_cast<int>(w5 / wmax * kBins))] += 1.0;
    }
    const double prob = static_cast<double>(hits) / trials;
    out.per_x.push_back(prob);
    out.rhat = std::min(out.rhat, prob);
  }

  double drift = 0.0, mass = 0.0;
  for (int b = 0; b < kBins; ++b) {
    drift += std::abs(hist_a[static_cast<std::size_t>(b)] -
                      hist_b[static_cast<std::size_t>(b)]);
    mass += hist_a[static_cast<std::size_t>(b)];
  }
  out.histogram_drift = mass > 0.0 ? drift / mass : 0.0;
  return out;
}

MainLemmaEstimate estimate_main_lemma(const Params& p, const TypeSpace& T,
                                      double rho, double K, double delta,
                                      std::span<const int> nrange,
                                      std::span<const double> xgrid,
                                      int trials, std::uint64_t seed) {
  if (!(K < 0.125)) throw KTooLarge("K must be < 1/8");
  if (!T.components.covers({-K, K}))
    throw KTooLarge("[-K, K] must lie inside the type space");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");

  MainLemmaEstimate est;
  est.K = K;
  est.delta = delta;
  est.nrange.assign(nrange.begin(), nrange.end());
  est.N = *std::min_element(est.nrange.begin(), est.nrange.end());
  est.xgrid.assign(xgrid.begin(), xgrid.end());
  const int nmax = *std::max_element(est.nrange.begin(), est.nrange.end());

  est.table.assign(xgrid.size(), std::vector<double>(est.nrange.size(), 0.0));
  std::vector<std::vector<std::uint32_t>> hits(
      xgrid.size(), std::vector<std::uint32_t>(est.nrange.size(), 0));

  for (std::size_t xi = 0; xi < xgrid.size(); ++xi) {
    std::vector<std::uint32_t> local(est.nrange.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (int trial = 0; trial < trials; ++trial) {
      RngStream stream(
          derive_state(seed, 0x6d6c0000u + xi, static_cast<std::uint64_t>(trial)));
      Population pop;
      pop.types.push_back(xgrid[xi]);
      std::vector<std::uint8_t> ok(est.nrange.size(), 0);
      for (int gen = 1; gen <= nmax && !pop.empty(); ++gen) {
        pop = step(pop, p, T, stream);
        for (std::size_t ni = 0; ni < est.nrange.size(); ++ni) {
          if (est.nrange[ni] != gen) continue;
          const double threshold = delta * std::pow(rho, gen);
          const std::uint32_t minus = count_in(pop.types, {-K, 0.0});
          const std::uint32_t plus = count_in(pop.types, {0.0, K});
          ok[ni] = (minus > threshold && plus > threshold) ? 1 : 0;
        }
      }
      for (std::size_t ni = 0; ni < est.nrange.size(); ++ni) {
        if (ok[ni]) {
#pragma omp atomic
          ++local[ni];
        }
      }
    }
    hits[xi] = local;
  }

  est.qhat = 1.0;
  for (std::size_t xi = 0; xi < xgrid.size(); ++xi) {
    for (std::size_t ni = 0; ni < est.nrange.size(); ++ni) {
      const double prob = static_cast<double>(hits[xi][ni]) / trials;
      est.table[xi][ni] = prob;
      est.qhat = std::min(est.qhat, prob);
    }
  }
  est.ci_half_width =
      1.96 * std::sqrt(std::max(est.qhat * (1.0 - est.qhat), 1e-12) / trials);
  return est;
}

double estimate_p24(double x, double K, int trials, std::uint64_t seed,
                    const Params& p, const TypeSpace& T) {
  if (x < -K || x > K) throw ConfigError("start type must lie in [-K, K]");
  const double t = derive(p).t;
  int hits = 0;
  RngStream stream(derive_state(seed, 0x703234u));
  for (int trial = 0; trial < trials; ++trial) {
    const double u1 = stream.uniform(0.0, t);
    const double u2 = stream.uniform(0.0, t);
    const double u3 = stream.uniform(0.0, t);
    const double u4 = stream.uniform(0.0, t);
    bool got2 = false, got4 = false;
    for (const Offspring& child : offspring_types(x, u1, u2, u3, u4, p)) {
      if (!T.contains(child.type) || std::abs(child.type) > K) continue;
      if (child.index == 2) got2 = true;
      if (child.index == 4) got4 = true;
    }
    if (got2 && got4) ++hits;
  }
  return static_cast<double>(hits) / trials;
}

double default_K(const TypeSpace& T) {
  const Interval& mid = T.middle_component();
  const double dist = std::min(-mid.lo, mid.hi);
  return std::min(0.124, 0.9 * dist);
}

}  // namespace larsson
