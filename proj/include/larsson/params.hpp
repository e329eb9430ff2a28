#pragma once

namespace larsson {

// Family parameters: each construction step keeps two subintervals of
// relative length a, with edge gaps b and a forced middle gap >= a.
// Admissible iff 1/4 < a, 3a + 2b < 1 and b > 0.
struct Params {
  double a = 0.0;
  double b = 0.0;
};

struct DerivedConstants {
  double t;        // uniform offset range, (1 - 3a - 2b) / 2
  double c;        // 2b / (1 - a); the slanted lines fix -1+c and 1-c
  double four_a;   // 4a, mean offspring count of the unrestricted kernel
  double dim_sum;  // 2 log2 / log(1/a), similarity dimension of the product
  double rho1;     // 2ac - t; first removal gap, negative in the simple case
};

enum class RegionClass { Invalid, Simple, General };

Params validate(double a, double b);  // throws InvalidParams
DerivedConstants derive(const Params& p);

// 1 - 4a - 2b + 3a^2 - 6ab; positive exactly in the simple region.
double region_polynomial(const Params& p);

// Classifies by the polynomial sign (boundary counts as General) and
// cross-checks the equivalent c < (1-3a-2b)/(4a) test.
RegionClass classify(const Params& p);  // throws InternalInconsistency

const char* to_string(RegionClass r);

}  // namespace larsson
