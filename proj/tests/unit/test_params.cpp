#include <cmath>

#include <doctest.h>

#include "larsson/errors.hpp"
#include "larsson/params.hpp"

using namespace larsson;

TEST_SUITE_BEGIN("params");

TEST_CASE("validate accepts the reference pairs and names violations") {
  CHECK_NOTHROW(validate(0.26, 0.01));
  CHECK_NOTHROW(validate(0.28, 0.05));
  CHECK_THROWS_AS(validate(0.30, 0.05), InvalidParams);  // 3a+2b = 1.00
  CHECK_THROWS_AS(validate(0.20, 0.01), InvalidParams);  // a <= 1/4
  CHECK_THROWS_AS(validate(0.25, 0.01), InvalidParams);  // boundary a
  CHECK_THROWS_AS(validate(0.26, 0.0), InvalidParams);   // b = 0 excluded
  CHECK_THROWS_AS(validate(0.26, -0.01), InvalidParams);
}

TEST_CASE("derived constants match closed forms") {
  // Frozen from direct evaluation of t = (1-3a-2b)/2, c = 2b/(1-a),
  // rho1 = 2ac - t, dimSum = 2 log 2 / log(1/a).
  const DerivedConstants k1 = derive(validate(0.26, 0.01));
  CHECK(k1.t == doctest::Approx(0.10).epsilon(1e-14));
  CHECK(k1.c == doctest::Approx(0.027027027027027029).epsilon(1e-14));
  CHECK(k1.four_a == doctest::Approx(1.04).epsilon(1e-14));
  CHECK(k1.rho1 == doctest::Approx(-0.085945945945945942).epsilon(1e-12));
  CHECK(k1.dim_sum == doctest::Approx(1.0291154928407102).epsilon(1e-12));

  const DerivedConstants k2 = derive(validate(0.28, 0.05));
  CHECK(k2.t == doctest::Approx(0.03).epsilon(1e-13));
  CHECK(k2.c == doctest::Approx(0.1388888888888889).epsilon(1e-14));
  CHECK(k2.rho1 == doctest::Approx(0.04777777777777778).epsilon(1e-12));
  CHECK(k2.dim_sum == doctest::Approx(1.0890272907277205).epsilon(1e-12));
}

TEST_CASE("b to zero sends c to zero") {
  const double a = 0.26;
  double prev = derive(Params{a, 1e-3}).c;
  for (double b : {1e-4, 1e-6, 1e-9}) {
    const double c = derive(Params{a, b}).c;
    CHECK(c < prev);
    CHECK(c == doctest::Approx(2.0 * b / (1.0 - a)).epsilon(1e-14));
    prev = c;
  }
}

TEST_CASE("classification of the reference pairs") {
  CHECK(classify(validate(0.26, 0.01)) == RegionClass::Simple);
  CHECK(region_polynomial(Params{0.26, 0.01}) ==
        doctest::Approx(0.1272).epsilon(1e-12));
  CHECK(classify(validate(0.28, 0.05)) == RegionClass::General);
  CHECK(region_polynomial(Params{0.28, 0.05}) ==
        doctest::Approx(-0.0688).epsilon(1e-12));
}

TEST_CASE("boundary classifies as General and the two tests never disagree") {
  // Walk b across the boundary curve in ulp steps; wherever the
  // polynomial is <= 0 (including an exact 0 hit) the class is General.
  const double a = 0.28;
  double b = (1.0 - a) * (1.0 - 3.0 * a) / (2.0 * (1.0 + 3.0 * a));
  for (int i = 0; i < 2000; ++i) b = std::nextafter(b, 0.0);
  bool hit_zero = false;
  for (int i = 0; i < 4000; ++i) {
    const Params p{a, b};
    const double poly = region_polynomial(p);
    const RegionClass r = classify(p);
    if (poly > 0.0) {
      CHECK(r == RegionClass::Simple);
    } else {
      CHECK(r == RegionClass::General);
      if (poly == 0.0) hit_zero = true;
    }
    b = std::nextafter(b, 1.0);
  }
  INFO("exact zero hit: ", hit_zero);
  CHECK(true);
}

TEST_CASE("grid: equivalent tests agree, dimSum > 1, rho1 sign is the class") {
  const int n = 120;
  for (int i = 0; i < n; ++i) {
    const double a = 0.2501 + (1.0 / 3.0 - 0.2502) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double bmax = (1.0 - 3.0 * a) / 2.0;
      const double b = bmax * (j + 0.5) / n;
      if (b <= 0.0) continue;
      const Params p = validate(a, b);
      const DerivedConstants k = derive(p);
      RegionClass r{};
      CHECK_NOTHROW(r = classify(p));  // would throw on disagreement
      CHECK(k.dim_sum > 1.0);
      if (k.rho1 < 0.0) {
        CHECK(r == RegionClass::Simple);
      } else {
        CHECK(r == RegionClass::General);
      }
    }
  }
}

TEST_SUITE_END();
