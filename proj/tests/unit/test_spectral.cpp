#include <cmath>

#include <doctest.h>

#include "larsson/errors.hpp"
#include "larsson/spectral.hpp"

using namespace larsson;

namespace {
const Params kSimple = Params{0.26, 0.01};
const Params kGeneral = Params{0.28, 0.05};
}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("grid construction") {
  const TypeSpace T = build_type_space(kSimple, default_epsilon(kSimple));
  const QuadratureGrid g = build_grid(T, derive(kSimple).t / 10.0);
  CHECK(g.nodes.size() == 179);  // |T| = 1.78066..., step 0.01
  CHECK(g.weights.sum() ==
        doctest::Approx(T.components.total_length()).epsilon(1e-12));
  for (Eigen::Index i = 0; i < g.nodes.size(); ++i)
    CHECK(T.contains(g.nodes[i]));

  const TypeSpace Tg = build_type_space(kGeneral, default_epsilon(kGeneral));
  const QuadratureGrid gg = build_grid(Tg, derive(kGeneral).t / 10.0);
  CHECK(gg.component.front() == 0);
  CHECK(gg.component.back() == 2);
  int switches = 0;
  for (std::size_t i = 1; i < gg.component.size(); ++i)
    switches += gg.component[i] != gg.component[i - 1];
  CHECK(switches == 2);
  CHECK(gg.weights.sum() ==
        doctest::Approx(Tg.components.total_length()).epsilon(1e-12));

  CHECK_THROWS_AS(build_grid(T, 0.5), StepTooCoarse);
  CHECK_THROWS_AS(build_grid(T, 0.0), StepTooCoarse);
}

TEST_CASE("assembled matrix: nonnegative, reflection symmetric, row bound") {
  const TypeSpace T = build_type_space(kSimple, default_epsilon(kSimple));
  const double step = derive(kSimple).t / 10.0;
  const KernelMatrix km = assemble(build_grid(T, step), kSimple, T);
  const Eigen::Index n = km.M.rows();
  CHECK(km.M.minCoeff() >= 0.0);
  // Node grid is symmetric: node_i = -node_{n-1-i}; double reflection
  // leaves the matrix invariant.
  for (Eigen::Index i = 0; i < n; i += 7) {
    CHECK(km.grid.nodes[i] ==
          doctest::Approx(-km.grid.nodes[n - 1 - i]).epsilon(1e-12));
    for (Eigen::Index j = 0; j < n; j += 5) {
      CHECK(std::abs(km.M(i, j) - km.M(n - 1 - i, n - 1 - j)) <= 1e-12);
    }
  }
  const Eigen::VectorXd rows = km.M.rowwise().sum();
  CHECK(rows.maxCoeff() <= 2.0 + 10.0 * step);
}

TEST_CASE("power iteration recovers a known dominant pair") {
  // Hand oracle: [[2, 1], [1, 2]] has eigenvalues 3 and 1 with dominant
  // eigenvector (1, 1)/sqrt(2) on both sides.
  KernelMatrix km;
  km.M.resize(2, 2);
  km.M << 2.0, 1.0, 1.0, 2.0;
  km.grid.nodes = Eigen::VectorXd::Zero(2);
  km.grid.weights = Eigen::VectorXd::Ones(2);
  km.grid.component = {0, 0};
  const SpectralResult s = dominant_eigen(km);
  CHECK(s.rho == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(s.mu[0] == doctest::Approx(s.mu[1]).epsilon(1e-9));
  CHECK(s.nu[0] == doctest::Approx(s.nu[1]).epsilon(1e-9));
  CHECK(s.mu.dot((s.nu.array() * km.grid.weights.array()).matrix()) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("reducible matrices are rejected") {
  KernelMatrix km;
  km.M.resize(2, 2);
  km.M << 1.0, 0.0, 0.0, 1.0;  // two closed classes, never primitive
  km.grid.nodes = Eigen::VectorXd::Zero(2);
  km.grid.weights = Eigen::VectorXd::Ones(2);
  km.grid.component = {0, 0};
  CHECK_THROWS_AS(dominant_eigen(km), ReducibleKernel);
  CHECK_THROWS_AS(uniform_positivity(km), NotPositiveBy64);
}

TEST_CASE("dominant pair of the kernel operator") {
  for (bool general : {false, true}) {
    const Params& p = general ? kGeneral : kSimple;
    const TypeSpace T = build_type_space(p, default_epsilon(p));
    const double step = derive(p).t / 10.0;
    const KernelMatrix km = assemble(build_grid(T, step), p, T);
    const SpectralResult s = dominant_eigen(km);
    CHECK(s.rho > 1.0);
    CHECK(s.rho <= 4.0 * p.a + 10.0 * step);
    CHECK(s.mu.minCoeff() > 0.0);
    CHECK(s.nu.minCoeff() > 0.0);
    CHECK(s.mu.dot((s.nu.array() * km.grid.weights.array()).matrix()) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.residual < 1e-8);

    const PositivityReport pos = uniform_positivity(km);
    CHECK(pos.n0 >= 1);
    CHECK(pos.min_value > 0.0);
    CHECK(pos.max_value < 1e6);
    CHECK(pos.n0 <= support_bound(p, T));
  }
}

TEST_CASE("harris asymptotic: geometric error decay") {
  const TypeSpace T = build_type_space(kSimple, default_epsilon(kSimple));
  const KernelMatrix km =
      assemble(build_grid(T, derive(kSimple).t / 8.0), kSimple, T);
  SpectralResult s = dominant_eigen(km);
  const PositivityReport pos = uniform_positivity(km);
  const int nmax = pos.n0 + 40;
  const std::vector<double> errs = harris_check(km, s, nmax);
  REQUIRE(static_cast<int>(errs.size()) == nmax);
  for (int n = pos.n0; n + 1 <= nmax; ++n) {
    CHECK(errs[static_cast<std::size_t>(n)] <=
          errs[static_cast<std::size_t>(n - 1)] + 1e-12);
  }
  CHECK(s.delta_estimate > 0.0);
  CHECK(s.delta_estimate < 1.0);
}

TEST_CASE("rho shrinks when epsilon grows") {
  const double step = derive(kSimple).t / 12.0;
  double prev = 2.0;
  for (double frac : {0.3, 0.6, 0.9}) {
    const double eps = frac * epsilon_bound(kSimple);
    const TypeSpace T = build_type_space(kSimple, eps);
    const SpectralResult s =
        dominant_eigen(assemble(build_grid(T, step), kSimple, T));
    CHECK(s.rho <= prev + 1e-9);
    prev = s.rho;
  }
}

TEST_SUITE_END();
