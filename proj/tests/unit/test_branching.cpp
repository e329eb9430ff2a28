#include <cmath>

#include <doctest.h>

#include "larsson/branching.hpp"
#include "larsson/errors.hpp"
#include "larsson/kernel.hpp"
#include "larsson/spectral.hpp"

using namespace larsson;

namespace {
const Params kSimple = Params{0.26, 0.01};
const Params kGeneral = Params{0.28, 0.05};

double exact_mean_z1(double z, Interval A, const Params& p,
                     const TypeSpace& T) {
  // E_z Z_1(A) = integral over A of m(z, y) dy, exact via the cdf.
  const DerivedConstants k = derive(p);
  double total = 0.0;
  for (const Interval& comp : T.components.intersect(A).parts()) {
    for (int i = 1; i <= 4; ++i) {
      const double s = phi_density_shift(i, z, p);
      const double lo = std::max(comp.lo, -1.0), hi = std::min(comp.hi, 1.0);
      if (lo >= hi) continue;
      total += triangular_cdf(p.a * hi - s, k.t) -
               triangular_cdf(p.a * lo - s, k.t);
    }
  }
  return total;
}

}  // namespace

TEST_SUITE_BEGIN("branching");

TEST_CASE("absorbing empty population and child-count bound") {
  const TypeSpace T = build_type_space(kSimple, default_epsilon(kSimple));
  RngStream stream(3);
  Population empty;
  empty.generation = 3;
  const Population next = step(empty, kSimple, T, stream);
  CHECK(next.empty());
  CHECK(next.generation == 4);

  // One parent never spawns more than two children.
  Population one;
  one.types.push_back(0.05);
  long max_children = 0;
  for (int i = 0; i < 100000; ++i) {
    const Population kids = step(one, kSimple, T, stream);
    max_children = std::max<long>(max_children, static_cast<long>(kids.types.size()));
    for (double z : kids.types) CHECK(T.contains(z));
  }
  CHECK(max_children <= 2);
}

TEST_CASE("one-generation means match the kernel integral") {
  const TypeSpace T = build_type_space(kGeneral, default_epsilon(kGeneral));
  const Interval whole{T.components.min(), T.components.max()};
  const Interval mid = T.middle_component();
  const struct {
    double z;
    Interval A;
  } cases[] = {{0.0, whole},
               {0.0, mid},
               {0.1, {-0.2, 0.2}},
               {-0.4, whole},
               {0.45, {0.3190 + 0.015, 0.86}}};
  for (const auto& c : cases) {
    if (!T.contains(c.z)) continue;
    const int trials = 40000;
    const std::vector<Interval> sets = {c.A};
    const SimulationResult res =
        simulate_counts(c.z, 1, sets, trials, 51, kGeneral, T);
    const double expect = exact_mean_z1(c.z, c.A, kGeneral, T);
    const double got = res.sets[0].mean();
    const double se = res.sets[0].std_error();
    CHECK(std::abs(got - expect) <= 3.0 * se + 1e-9);
  }
}

TEST_CASE("generation zero and extinction monotonicity") {
  const TypeSpace T = build_type_space(kSimple, default_epsilon(kSimple));
  const Interval whole{T.components.min(), T.components.max()};
  const std::vector<Interval> sets = {whole};
  const SimulationResult z0 =
      simulate_counts(0.0, 0, sets, 100, 9, kSimple, T);
  CHECK(z0.sets[0].mean() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(z0.surviving_trials == 100);

  double prev_survival = 1.0;
  for (int n : {1, 3, 6, 10}) {
    const SimulationResult res =
        simulate_counts(0.0, n, sets, 4000, 9, kSimple, T);
    const double survival =
        static_cast<double>(res.surviving_trials) / res.trials;
    CHECK(survival <= prev_survival + 1e-12);
    prev_survival = survival;
  }
}

TEST_CASE("mean growth matches quadrature matrix powers") {
  const Params& p = kSimple;
  const TypeSpace T = build_type_space(p, default_epsilon(p));
  const KernelMatrix km = assemble(build_grid(T, derive(p).t / 15.0), p, T);
  const Interval whole{T.components.min(), T.components.max()};
  const Interval right{0.0, 0.4};
  // Start from a node of the grid so no interpolation is involved.
  const Eigen::Index zi = km.grid.nodes.size() / 2;
  const double z = km.grid.nodes[zi];

  Eigen::RowVectorXd row(km.grid.nodes.size());
  for (Eigen::Index j = 0; j < km.grid.nodes.size(); ++j)
    row[j] = kernel_m(z, km.grid.nodes[j], p, T) * km.grid.weights[j];

  const std::vector<Interval> sets = {whole, right};
  for (int n : {2, 3, 4}) {
    Eigen::RowVectorXd rn = row;
    for (int k = 1; k < n; ++k) rn = rn * km.M;
    double expect_whole = rn.sum();
    double expect_right = 0.0;
    for (Eigen::Index j = 0; j < km.grid.nodes.size(); ++j) {
      if (right.contains(km.grid.nodes[j])) expect_right += rn[j];
    }
    const SimulationResult res = simulate_counts(z, n, sets, 60000, 77, p, T);
    CHECK(std::abs(res.sets[0].mean() - expect_whole) <=
          3.0 * res.sets[0].std_error() + 2e-3);
    CHECK(std::abs(res.sets[1].mean() - expect_right) <=
          3.0 * res.sets[1].std_error() + 2e-3);
  }
}

TEST_CASE("shared-offset coupling preserves the means") {
  const Params& p = kSimple;
  const TypeSpace T = build_type_space(p, default_epsilon(p));
  const Interval whole{T.components.min(), T.components.max()};
  const std::vector<Interval> sets = {whole, {-0.124, 0.124}};
  const int n = 4, trials = 30000;
  const SimulationResult iid = simulate_counts(0.0, n, sets, trials, 13, p, T);
  const SimulationResult shared =
      simulate_counts_shared(0.0, n, sets, trials, 13, p, T);
  for (std::size_t si = 0; si < sets.size(); ++si) {
    const double se = std::hypot(iid.sets[si].std_error(),
                                 shared.sets[si].std_error());
    CHECK(std::abs(iid.sets[si].mean() - shared.sets[si].mean()) <=
          3.0 * se + 1e-9);
  }
}

TEST_CASE("determinism across repeated runs") {
  const TypeSpace T = build_type_space(kSimple, default_epsilon(kSimple));
  const std::vector<Interval> sets = {{-0.2, 0.2}};
  const SimulationResult r1 = simulate_counts(0.1, 5, sets, 2000, 42, kSimple, T);
  const SimulationResult r2 = simulate_counts(0.1, 5, sets, 2000, 42, kSimple, T);
  REQUIRE(r1.sets[0].counts.size() == r2.sets[0].counts.size());
  for (std::size_t i = 0; i < r1.sets[0].counts.size(); ++i)
    CHECK(r1.sets[0].counts[i] == r2.sets[0].counts[i]);
}

TEST_CASE("survival floor estimate") {
  const Params& p = kSimple;
  const TypeSpace T = build_type_space(p, default_epsilon(p));
  const KernelMatrix km = assemble(build_grid(T, derive(p).t / 10.0), p, T);
  const SpectralResult s = dominant_eigen(km);
  const Interval whole{T.components.min(), T.components.max()};
  const double xs[] = {-0.05, 0.0, 0.05};
  const SurvivalFloor floor = estimate_survival_floor(
      xs, whole, 0.01, 2000, 12, 7, p, T, s.rho);
  CHECK(floor.rhat > 0.0);
  CHECK(floor.rhat <= 1.0);
  for (double prob : floor.per_x) {
    CHECK(prob >= floor.rhat);
    CHECK(prob <= 1.0);
  }
  CHECK(floor.histogram_drift >= 0.0);
}

TEST_CASE("main lemma estimator basics") {
  const Params& p = kSimple;
  const TypeSpace T = build_type_space(p, default_epsilon(p));
  const double rho = 1.02;
  const std::vector<int> nrange = {6, 7};
  const std::vector<double> xgrid = {-0.1, 0.0, 0.1};
  const MainLemmaEstimate est = estimate_main_lemma(
      p, T, rho, 0.124, 0.02, nrange, xgrid, 1500, 99);
  CHECK(est.qhat >= 0.0);
  CHECK(est.qhat <= 1.0);
  CHECK(est.table.size() == 3);
  CHECK(est.table[0].size() == 2);
  // Reflection symmetry within joint confidence bounds.
  for (std::size_t ni = 0; ni < nrange.size(); ++ni) {
    const double peach = est.table[0][ni];
    const double mirrored = est.table[2][ni];
    const double se = 2.0 * std::sqrt(0.25 / 1500.0);
    CHECK(std::abs(peach - mirrored) <= 3.0 * se);
  }

  CHECK_THROWS_AS(estimate_main_lemma(p, T, rho, 0.2, 0.02, nrange, xgrid,
                                      10, 1),
                  KTooLarge);
}

TEST_CASE("p24 is positive at the center and monotone in K") {
  const Params& p = kSimple;
  const TypeSpace T = build_type_space(p, default_epsilon(p));
  const double p_small = estimate_p24(0.0, 0.06, 200000, 5, p, T);
  const double p_big = estimate_p24(0.0, 0.124, 200000, 5, p, T);
  CHECK(p_big > 0.0);
  CHECK(p_small <= p_big);  // same seed: nested events, trial by trial
  CHECK(p_big <= 1.0);
  CHECK_THROWS_AS(estimate_p24(0.5, 0.124, 10, 5, p, T), ConfigError);
}

TEST_CASE("default K stays inside the middle component") {
  const TypeSpace Ts = build_type_space(kSimple, default_epsilon(kSimple));
  const TypeSpace Tg = build_type_space(kGeneral, default_epsilon(kGeneral));
  CHECK(default_K(Ts) == doctest::Approx(0.124).epsilon(1e-12));
  const double kg = default_K(Tg);
  CHECK(kg < 0.125);
  CHECK(Tg.components.covers({-kg, kg}));
}

TEST_SUITE_END();
