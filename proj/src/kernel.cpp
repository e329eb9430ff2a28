#include "larsson/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "larsson/errors.hpp"
#include "larsson/type_space.hpp"

namespace larsson {

LineFamily LineFamily::from(const Params& p) {
  const DerivedConstants k = derive(p);
  LineFamily lf;
  lf.intercept[0] = (1.0 - p.a - 2.0 * p.b) / p.a;
  lf.intercept[1] = 2.0;
  lf.intercept[2] = k.t / p.a;
  lf.intercept[3] = -lf.intercept[2];
  lf.intercept[4] = -2.0;
  lf.intercept[5] = -lf.intercept[0];
  return lf;
}

double LineFamily::eval(int j, double x, const Params& p) const {
  if (j < 1 || j > 6) throw BadIndex("line index must be in 1..6");
  return x / p.a + intercept[static_cast<std::size_t>(j) - 1];
}

double line_eval(int j, double x, const Params& p) {
  return LineFamily::from(p).eval(j, x, p);
}

double triangular(double z, double t) {
  const double az = std::abs(z);
  if (az > t) return 0.0;
  return (t - az) / (t * t);
}

double triangular_cdf(double z, double t) {
  if (z <= -t) return 0.0;
  if (z >= t) return 1.0;
  if (z <= 0.0) {
    const double w = t + z;
    return w * w / (2.0 * t * t);
  }
  const double w = t - z;
  return 1.0 - w * w / (2.0 * t * t);
}

double phi_density_shift(int i, double x, const Params& p) {
  const double half = 0.5 + p.a / 2.0 - p.b;
  switch (i) {
    case 1:
      return x - half;
    case 2:
    case 4:
      return x;
    case 3:
      return x + half;
    default:
      throw BadIndex("density index must be in 1..4");
  }
}

double phi_density(int i, double x, double y, const Params& p) {
  if (y < -1.0 || y > 1.0) return 0.0;
  const double s = phi_density_shift(i, x, p);
  return p.a * triangular(p.a * y - s, derive(p).t);
}

RegionLabel region_of(double x, const Params& p) {
  const double inner = 0.5 - p.a / 2.0 - p.b;  // outer edge of the A2 bands
  if (x < -1.0 + 2.0 * p.b || x > 1.0 - 2.0 * p.b) return RegionLabel::Outside;
  if (x < -inner) return RegionLabel::A1minus;
  if (x < -p.a) return RegionLabel::A2minus;
  if (x <= p.a) return RegionLabel::A3;
  if (x <= inner) return RegionLabel::A2plus;
  return RegionLabel::A1plus;
}

const char* to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::A1minus:
      return "A1minus";
    case RegionLabel::A2minus:
      return "A2minus";
    case RegionLabel::A3:
      return "A3";
    case RegionLabel::A2plus:
      return "A2plus";
    case RegionLabel::A1plus:
      return "A1plus";
    default:
      return "Outside";
  }
}

double density_mass(int i, double x, const Params& p, const TypeSpace& T) {
  const double t = derive(p).t;
  const double s = phi_density_shift(i, x, p);
  double mass = 0.0;
  for (const Interval& comp : T.components.parts()) {
    const double lo = std::max(comp.lo, -1.0);
    const double hi = std::min(comp.hi, 1.0);
    if (lo >= hi) continue;
    mass += triangular_cdf(p.a * hi - s, t) - triangular_cdf(p.a * lo - s, t);
  }
  return std::clamp(mass, 0.0, 1.0);
}

double atom_prob(int i, double x, const Params& p, const TypeSpace& T) {
  return 1.0 - density_mass(i, x, p, T);
}

double kernel_m(double x, double y, const Params& p, const TypeSpace& T) {
  if (!T.components.contains(y)) return 0.0;
  double sum = 0.0;
  for (int i = 1; i <= 4; ++i) sum += phi_density(i, x, y, p);
  return sum;
}

PairDensities offspring_densities(double x, double z, double z1, double z2,
                                  const Params& p, const TypeSpace& T) {
  const auto fx = [&](int i, double y) {
    return T.components.contains(y) ? phi_density(i, x, y, p) : 0.0;
  };
  PairDensities out{0.0, 0.0};
  const RegionLabel region = region_of(x, p);
  const double pair_term = 2.0 * fx(2, z) * atom_prob(4, x, p, T);
  switch (region) {
    case RegionLabel::A1plus:
      out.h1 = fx(1, z);
      break;
    case RegionLabel::A2plus:
      out.h1 = fx(1, z) + pair_term;
      break;
    case RegionLabel::A3:
      out.h1 = pair_term;
      break;
    case RegionLabel::A2minus:
      out.h1 = fx(3, z) + pair_term;
      break;
    case RegionLabel::A1minus:
      out.h1 = fx(3, z);
      break;
    case RegionLabel::Outside:
      return out;
  }
  if (region == RegionLabel::A3 || region == RegionLabel::A2plus ||
      region == RegionLabel::A2minus) {
    out.h2 = 2.0 * fx(2, z1) * fx(4, z2);
  }
  return out;
}

}  // namespace larsson
