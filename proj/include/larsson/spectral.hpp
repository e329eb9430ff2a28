#pragma once

#include <vector>

#include <Eigen/Dense>

#include "larsson/params.hpp"
#include "larsson/type_space.hpp"

namespace larsson {

// Midpoint quadrature over the components of the type space.
struct QuadratureGrid {
  Eigen::VectorXd nodes;    // sorted midpoints
  Eigen::VectorXd weights;  // cell widths
  std::vector<int> component;
  double step = 0.0;  // requested cell width
};

QuadratureGrid build_grid(const TypeSpace& T, double step);  // StepTooCoarse

// M(i, j) = m(node_i, node_j) * weight_j, the discretized kernel operator.
struct KernelMatrix {
  Eigen::MatrixXd M;
  QuadratureGrid grid;
};

KernelMatrix assemble(const QuadratureGrid& g, const Params& p,
                      const TypeSpace& T);

struct SpectralResult {
  double rho = 0.0;
  Eigen::VectorXd mu;  // right eigenfunction values at nodes
  Eigen::VectorXd nu;  // left eigenfunction values at nodes
  double residual = 0.0;
  int iterations = 0;
  double delta_estimate = 0.0;  // filled by harris_check
};

// Power iteration on M and its transpose; mu, nu scaled so that
// sum_i mu_i nu_i w_i = 1. Throws ReducibleKernel / NoConvergence.
SpectralResult dominant_eigen(const KernelMatrix& km);

struct PositivityReport {
  int n0 = 0;  // smallest power with all kernel values positive
  double min_value = 0.0;
  double max_value = 0.0;
};

// Scans powers of M for entrywise positivity of m_n; NotPositiveBy64 if
// nothing by the 64th power.
PositivityReport uniform_positivity(const KernelMatrix& km);

// Max over the grid of |m_n(x,y) / (rho^n mu(x) nu(y)) - 1| for
// n = 1..nmax; fits the geometric tail rate into s.delta_estimate.
std::vector<double> harris_check(const KernelMatrix& km, SpectralResult& s,
                                 int nmax);

}  // namespace larsson
