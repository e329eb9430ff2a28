#include <cmath>

#include <doctest.h>

#include "larsson/diffset.hpp"
#include "larsson/errors.hpp"
#include "larsson/rng.hpp"

using namespace larsson;

namespace {
const Params kSimple = Params{0.26, 0.01};
}  // namespace

TEST_SUITE_BEGIN("diffset");

TEST_CASE("single trial against the square-enumeration oracle") {
  // Rebuild the same trees run_trial derives from the seed and form the
  // union of project(Q) directly.
  const std::uint64_t seed = 314;
  for (int depth : {1, 2, 4}) {
    const CoverageReport rep = run_trial(kSimple, depth, 0.124, 2, seed);
    OffsetTree tx(kSimple, depth, derive_state(seed, 0, 0), 1);
    OffsetTree ty(kSimple, depth, derive_state(seed, 0, 1), 2);
    std::vector<Interval> parts;
    for (const Square& q : product_squares(tx, ty, kSimple, depth))
      parts.push_back(project(q));
    const IntervalSet expect = IntervalSet::normalized(parts, 1e-15);
    CHECK(rep.projection_union.approx_equals(expect, 1e-12));
    CHECK(rep.union_length ==
          doctest::Approx(expect.total_length()).epsilon(1e-12));
    const double half = 0.124 * kSimple.a * kSimple.a;
    CHECK(rep.covers_interval == expect.covers({-half, half}));
    CHECK(rep.union_length <= 2.0 * std::pow(4.0 * kSimple.a, depth) + 1e-12);
    if (depth == 1) {
      CHECK(rep.union_length <= 8.0 * kSimple.a);
      CHECK(rep.union_length >= 2.0 * kSimple.a);
    }
  }
}

TEST_CASE("iid mode produces a valid union too") {
  const CoverageReport rep =
      run_trial(kSimple, 3, 0.124, 2, 2718, ProductMode::Iid);
  CHECK(rep.union_length > 0.0);
  CHECK(rep.union_length <= 2.0 * std::pow(4.0 * kSimple.a, 3));
  CHECK(rep.projection_union.min() >= -1.0 - 1e-12);
  CHECK(rep.projection_union.max() <= 1.0 + 1e-12);
}

TEST_CASE("estimator: determinism, monotone coverage, length bound") {
  const CoverageEstimate a =
      estimate_interval_prob(kSimple, 0.124, 2, 5, 200, 11);
  const CoverageEstimate b =
      estimate_interval_prob(kSimple, 0.124, 2, 5, 200, 11);
  CHECK(a.covered == b.covered);
  CHECK(a.monotonicity_violations == 0);
  for (int n = 1; n <= 5; ++n) {
    CHECK(a.mean_union_length[static_cast<std::size_t>(n - 1)] ==
          b.mean_union_length[static_cast<std::size_t>(n - 1)]);
    CHECK(a.mean_union_length[static_cast<std::size_t>(n - 1)] <=
          2.0 * std::pow(4.0 * kSimple.a, n) + 1e-12);
  }
  CHECK(a.probability >= 0.0);
  CHECK(a.probability <= 1.0);
  CHECK(a.ci_low <= a.probability);
  CHECK(a.ci_high >= a.probability);
}

TEST_CASE("subcritical control decays like 2 (4a)^n") {
  // a = 0.2 violates the growth condition; with 4a < 1 the expected
  // projection length goes to zero geometrically.
  const Params small{0.2, 0.01};
  const CoverageEstimate est =
      estimate_interval_prob(small, 0.124, 2, 8, 300, 5);
  for (int n = 1; n <= 8; ++n) {
    CHECK(est.mean_union_length[static_cast<std::size_t>(n - 1)] <=
          2.0 * std::pow(0.8, n) + 1e-12);
  }
  CHECK(est.mean_union_length[7] < est.mean_union_length[3]);
  CHECK(est.mean_union_length[7] < 0.4);
}

TEST_CASE("nice-intersection counts") {
  OffsetTree tx(kSimple, 6, 21, 1);
  OffsetTree ty(kSimple, 6, 21, 2);
  const auto squares = product_squares(tx, ty, kSimple, 3);

  // x far outside every projection.
  CHECK(count_nice(squares, 5.0, 1.0) == std::pair<long, long>{0, 0});

  // K = 1 counts every intersected square at least once.
  RngStream rng(40);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    long intersected = 0;
    for (const Square& q : squares) intersected += phi(q, x).has_value();
    const auto [lminus, lplus] = count_nice(squares, x, 1.0);
    CHECK(lminus + lplus >= intersected);
  }
}

TEST_CASE("event A thresholds") {
  OffsetTree tx(kSimple, 8, 77, 1);
  OffsetTree ty(kSimple, 8, 77, 2);
  const Square unit{0, 0.0, 0.0, 1.0, 0, 0};

  // delta rho^n below one: both counts >= 1 make the event true.
  const bool ev = check_event_A(tx, ty, unit, 0.0, 3, 1e-6, 1.02, 0.5, kSimple);
  const auto squares = product_squares(tx, ty, kSimple, 3);
  const auto [lminus, lplus] = count_nice(squares, 0.0, 0.5);
  CHECK(ev == (lminus >= 1 && lplus >= 1));

  // n = 0 with threshold >= 1 can never hold (a single square).
  CHECK(!check_event_A(tx, ty, unit, 0.0, 0, 1.0, 1.02, 0.5, kSimple));
  CHECK_THROWS_AS(check_event_A(tx, ty, unit, 0.0, 9, 0.1, 1.02, 0.5, kSimple),
                  DepthExceeded);
}

TEST_CASE("subdivision scheme tiles the interval") {
  const double a = 0.26;
  for (int N : {1, 2}) {
    const SubdivisionScheme s1 = subdivision(0.124, N, a, 1);
    CHECK(s1.count() == (std::uint64_t{1} << (4 * N)));  // 4^{2N}
    CHECK(s1.g_k == 3 * N);
    CHECK(s1.length_check_ok);
    const double total = static_cast<double>(s1.count()) * 2.0 * s1.half_width;
    CHECK(total == doctest::Approx(2.0 * 0.124 * std::pow(a, N)).epsilon(1e-12));
    CHECK(s1.center(0) ==
          doctest::Approx(-s1.interval_half + s1.half_width).epsilon(1e-12));
    CHECK(s1.center(s1.count() - 1) ==
          doctest::Approx(s1.interval_half - s1.half_width).epsilon(1e-12));
    // Neighboring centers differ by one interval width.
    CHECK(s1.center(1) - s1.center(0) ==
          doctest::Approx(2.0 * s1.half_width).epsilon(1e-9));
  }
  const SubdivisionScheme s2 = subdivision(0.124, 2, a, 2);
  CHECK(s2.g_k == 12);
  CHECK(s2.exponent == 10);  // (2+3) N
  CHECK_THROWS_AS(subdivision(0.124, 4, a, 20).count(), Overflow);
  CHECK_THROWS_AS(subdivision(0.124, 1, a, 0), BadIndex);
}

TEST_CASE("product lower bound: tails, clamping, monotonicity") {
  CHECK(palis_lower_bound(0.0, 1.0, 2.0, 2, 16).value == 0.0);

  // Strong inputs: every factor is close to one and the bound is
  // essentially q.
  const BoundResult strong = palis_lower_bound(0.9, 5.0, 2.0, 2, 40);
  CHECK(!strong.divergent);
  CHECK(strong.first_tail_k == 1);
  CHECK(strong.factors.back() > 1.0 - 1e-9);
  CHECK(strong.value > 0.0);
  CHECK(strong.value <= 0.9);

  // Weak inputs: early factors clamp to zero and the bound is vacuous.
  const BoundResult weak = palis_lower_bound(0.05, 0.5, 1.1, 1, 20);
  CHECK(weak.divergent);
  CHECK(weak.value == 0.0);

  // Monotone in q and delta.
  double prev_q = -1.0;
  for (double q : {0.5, 0.6, 0.7, 0.8, 0.9}) {
    const double v = palis_lower_bound(q, 3.0, 2.0, 2, 30).value;
    CHECK(v >= prev_q - 1e-15);
    prev_q = v;
  }
  double prev_d = -1.0;
  for (double d : {1.0, 2.0, 3.0, 4.0, 5.0}) {
    const double v = palis_lower_bound(0.7, d, 2.0, 2, 30).value;
    CHECK(v >= prev_d - 1e-15);
    prev_d = v;
  }

  CHECK_THROWS_AS(palis_lower_bound(1.0, 1.0, 2.0, 2, 4), ConfigError);
  CHECK_THROWS_AS(palis_lower_bound(0.5, 1.0, 0.0, 2, 4), ConfigError);
}

TEST_SUITE_END();
