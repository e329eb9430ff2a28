#include "larsson/params.hpp"

#include <cmath>
#include <sstream>

#include "larsson/errors.hpp"

namespace larsson {

Params validate(double a, double b) {
  std::ostringstream msg;
  if (!(a > 0.25)) {
    msg << "invalid params: a=" << a << " violates a > 1/4";
    throw InvalidParams(msg.str());
  }
  if (!(3.0 * a + 2.0 * b < 1.0)) {
    msg << "invalid params: 3a+2b=" << 3.0 * a + 2.0 * b
        << " violates 3a + 2b < 1";
    throw InvalidParams(msg.str());
  }
  if (!(b > 0.0)) {
    msg << "invalid params: b=" << b << " violates b > 0";
    throw InvalidParams(msg.str());
  }
  return Params{a, b};
}

DerivedConstants derive(const Params& p) {
  DerivedConstants k;
  k.t = (1.0 - 3.0 * p.a - 2.0 * p.b) / 2.0;
  k.c = 2.0 * p.b / (1.0 - p.a);
  k.four_a = 4.0 * p.a;
  k.dim_sum = 2.0 * std::log(2.0) / std::log(1.0 / p.a);
  k.rho1 = 2.0 * p.a * k.c - k.t;
  return k;
}

double region_polynomial(const Params& p) {
  return 1.0 - 4.0 * p.a - 2.0 * p.b + 3.0 * p.a * p.a - 6.0 * p.a * p.b;
}

RegionClass classify(const Params& p) {
  const DerivedConstants k = derive(p);
  const double poly = region_polynomial(p);
  const double c_margin = k.t / (2.0 * p.a) - k.c;  // (1-3a-2b)/(4a) - c
  const bool simple_poly = poly > 0.0;
  const bool simple_c = c_margin > 0.0;
  if (simple_poly != simple_c && std::abs(poly) > 1e-12) {
    std::ostringstream msg;
    msg << "region tests disagree: polynomial=" << poly
        << ", c-margin=" << c_margin;
    throw InternalInconsistency(msg.str());
  }
  return simple_poly ? RegionClass::Simple : RegionClass::General;
}

const char* to_string(RegionClass r) {
  switch (r) {
    case RegionClass::Simple:
      return "Simple";
    case RegionClass::General:
      return "General";
    default:
      return "Invalid";
  }
}

}  // namespace larsson
