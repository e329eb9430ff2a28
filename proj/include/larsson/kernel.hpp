#pragma once

#include <array>

#include "larsson/params.hpp"

namespace larsson {

class TypeSpace;

// The six slanted lines l_j(x) = x/a + intercept_j bounding the three
// support stripes; intercept_j = -intercept_{7-j}.
struct LineFamily {
  std::array<double, 6> intercept;
  static LineFamily from(const Params& p);
  double eval(int j, double x, const Params& p) const;
};

double line_eval(int j, double x, const Params& p);  // throws BadIndex

// Density of the difference of two independent Uniform[0, t] variables.
double triangular(double z, double t);
double triangular_cdf(double z, double t);

// Density of the i-th candidate child type before restriction to the
// type space (the [-1,1] indicator is applied).
double phi_density(int i, double x, double y, const Params& p);

// Horizontal shift s_i(x) such that phi_density = a f(a y - s_i(x)).
double phi_density_shift(int i, double x, const Params& p);

enum class RegionLabel { A1minus, A2minus, A3, A2plus, A1plus, Outside };
RegionLabel region_of(double x, const Params& p);
const char* to_string(RegionLabel r);

// Exact integral of the restricted child density over the type space
// (piecewise-quadratic CDF differences, no quadrature).
double density_mass(int i, double x, const Params& p, const TypeSpace& T);
double atom_prob(int i, double x, const Params& p, const TypeSpace& T);

// Expected-offspring kernel m(x, y), zero off the type space.
double kernel_m(double x, double y, const Params& p, const TypeSpace& T);

struct PairDensities {
  double h1;  // density of exactly one child at z
  double h2;  // density of exactly two children at (z1, z2)
};
PairDensities offspring_densities(double x, double z, double z1, double z2,
                                  const Params& p, const TypeSpace& T);

}  // namespace larsson
