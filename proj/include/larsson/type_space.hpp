#pragma once

#include <string>
#include <utility>
#include <vector>

#include "larsson/interval_set.hpp"
#include "larsson/params.hpp"

namespace larsson {

struct RemovalRecord {
  std::string address;  // i_1 in {1,2}, later digits in {1,2,3}
  double u = 0.0;
  double v = 0.0;  // removed interval [u, v], length rho_{|address|}
};

// Type space of the branching process: 3^l closed components of equal
// length, symmetric about 0, obtained from [-1+c, 1-c] by l rounds of
// hole removal followed by an epsilon-shrink of every component.
struct TypeSpace {
  double epsilon = 0.0;
  int level_l = 0;
  IntervalSet components;
  std::vector<RemovalRecord> ledger;
  std::vector<double> rho_seq;  // rho_1 .. rho_{l+1}

  bool contains(double x) const { return components.contains(x); }
  const Interval& middle_component() const {
    return components[components.size() / 2];
  }
};

// Hole-size recursion rho_{r+1} = a rho_r - (1 - 3a - 2b) from rho_1 =
// 2ac - t; returns (rho_1..rho_{l+1}, l) where l counts the removal
// rounds performed (smallest r >= 1 with rho_{r+1} < 0; l = 0 when
// rho_1 < 0 already).
std::pair<std::vector<double>, int> endpoint_recursion(const Params& p);

// Upper bound on admissible epsilon for the given parameter region.
double epsilon_bound(const Params& p);

// Half of epsilon_bound; a safe default knob.
double default_epsilon(const Params& p);

TypeSpace build_type_space(const Params& p, double eps);  // EpsilonTooLarge

// E_1(x) = {y : m(x, y) > 0}: the vertical stripe slices through x
// intersected with the type space.
IntervalSet support_E1(double x, const Params& p, const TypeSpace& T);

// Grid-scan lower bound on the length of the longest interval inside
// E_1(x), minimized over x in T (step <= 1e-4).
double kappa(const Params& p, const TypeSpace& T);

struct KappaReport {
  double scanned;              // the operative value
  double simple_kappa1;        // (t/a - 2c)/2        (simple case)
  double simple_kappa2;       // 4t/a as printed      (simple case)
  double stripe_width;         // 2t/a, full slice height
  double general_case_a;       // eps/a - eps          (general case)
  double general_case_c;       // min{s, (2t/a - rho_l - 2 eps)/2}
};
KappaReport kappa_report(const Params& p, const TypeSpace& T);

// Number of support iterations after which E_n(x) = T for every x,
// from the ceil-log growth estimate with the scanned kappa.
int support_bound(const Params& p, const TypeSpace& T);

// n-fold application of E_{n+1}(x) = union of E_1(y) over y in E_n(x),
// as interval-set arithmetic; n >= 1.
IntervalSet iterate_support(double x, int n, const Params& p,
                            const TypeSpace& T);

}  // namespace larsson
