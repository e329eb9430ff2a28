#include "larsson/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "larsson/errors.hpp"
#include "larsson/kernel.hpp"

namespace larsson {

QuadratureGrid build_grid(const TypeSpace& T, double step) {
  if (!(step > 0.0)) throw StepTooCoarse("grid step must be positive");
  QuadratureGrid g;
  g.step = step;
  std::vector<double> nodes, weights;
  std::vector<int> comp;
  for (std::size_t ci = 0; ci < T.components.size(); ++ci) {
    const Interval& c = T.components[ci];
    const int cells = static_cast<int>(std::ceil(c.length() / step));
    if (cells < 16) {
      std::ostringstream msg;
      msg << "step " << step << " gives " << cells
          << " nodes on a component; need >= 16";
      throw StepTooCoarse(msg.str());
    }
    const double w = c.length() / cells;
    for (int i = 0; i < cells; ++i) {
      nodes.push_back(c.lo + (i + 0.5) * w);
      weights.push_back(w);
      comp.push_back(static_cast<int>(ci));
    }
  }
  g.nodes = Eigen::Map<Eigen::VectorXd>(nodes.data(),
                                        static_cast<Eigen::Index>(nodes.size()));
  g.weights = Eigen::Map<Eigen::VectorXd>(
      weights.data(), static_cast<Eigen::Index>(weights.size()));
  g.component = std::move(comp);
  return g;
}

KernelMatrix assemble(const QuadratureGrid& g, const Params& p,
                      const TypeSpace& T) {
  const Eigen::Index n = g.nodes.size();
  KernelMatrix km{Eigen::MatrixXd(n, n), g};
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      km.M(i, j) = kernel_m(g.nodes[i], g.nodes[j], p, T) * g.weights[j];
    }
  }
  return km;
}

namespace {

// Entrywise positivity pattern of successive powers, as 0/1 matrices so
// the closure runs on GEMM instead of a cubic scalar loop.
int positivity_index(const Eigen::MatrixXd& M, int max_power) {
  const Eigen::MatrixXd adj = (M.array() > 0.0).cast<double>();
  Eigen::MatrixXd pat = adj;
  for (int k = 1; k <= max_power; ++k) {
    if (pat.minCoeff() > 0.0) return k;
    Eigen::MatrixXd next = ((pat * adj).array() > 0.0).cast<double>();
    if ((next.array() == pat.array()).all())
      return -1;  // pattern converged without filling
    pat = std::move(next);
  }
  return -1;
}

double power_pass(const Eigen::MatrixXd& M, Eigen::VectorXd& v, int& iters,
                  bool transpose) {
  constexpr double kTol = 1e-12;
  constexpr int kMaxIter = 100000;
  double lambda = 0.0;
  for (iters = 1; iters <= kMaxIter; ++iters) {
    Eigen::VectorXd next = transpose ? (M.transpose() * v).eval() : (M * v).eval();
    const double norm = next.norm();
    if (norm == 0.0) throw ReducibleKernel("power iteration hit the zero vector");
    next /= norm;
    const double new_lambda =
        transpose ? next.dot(M.transpose() * next) : next.dot(M * next);
    const double change = (next - v).norm();
    v = std::move(next);
    if (change < kTol && std::abs(new_lambda - lambda) < kTol * std::abs(new_lambda)) {
      lambda = new_lambda;
      return lambda;
    }
    lambda = new_lambda;
  }
  throw NoConvergence("power iteration exceeded the iteration cap");
}

}  // namespace

SpectralResult dominant_eigen(const KernelMatrix& km) {
  const Eigen::Index n = km.M.rows();
  if (positivity_index(km.M, 64) < 0)
    throw ReducibleKernel("kernel matrix is not primitive within 64 powers");

  SpectralResult s;
  Eigen::VectorXd right = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  Eigen::VectorXd left = right;
  int it_r = 0, it_l = 0;
  const double rho_r = power_pass(km.M, right, it_r, false);
  const double rho_l = power_pass(km.M, left, it_l, true);
  if (std::abs(rho_r - rho_l) > 1e-8 * std::max(1.0, std::abs(rho_r))) {
    std::ostringstream msg;
    msg << "left/right eigenvalues disagree: " << rho_r << " vs " << rho_l;
    throw NoConvergence(msg.str());
  }
  s.rho = rho_r;
  s.iterations = std::max(it_r, it_l);

  if (right.minCoeff() <= 0.0 || left.minCoeff() <= 0.0)
    throw ReducibleKernel("dominant eigenvectors are not strictly positive");

  // mu are right-eigenfunction values; the left eigenvector of M carries
  // an extra weight factor, nu_i = left_i / w_i.
  Eigen::VectorXd nu = left.array() / km.grid.weights.array();
  const double inner = right.dot(left);  // = sum mu_i nu_i w_i
  const double scale = 1.0 / inner;
  s.mu = right;
  s.nu = nu * scale;
  s.residual = (km.M * s.mu - s.rho * s.mu).lpNorm<Eigen::Infinity>() / s.rho;
  s.delta_estimate = std::numeric_limits<double>::quiet_NaN();
  return s;
}

PositivityReport uniform_positivity(const KernelMatrix& km) {
  Eigen::MatrixXd P = km.M;
  const Eigen::ArrayXd w = km.grid.weights.array();
  for (int n0 = 1; n0 <= 64; ++n0) {
    if (P.minCoeff() > 0.0) {
      // m_n(x_i, y_j) = P(i, j) / w_j
      Eigen::ArrayXXd mn = P.array().rowwise() / w.transpose();
      return {n0, mn.minCoeff(), mn.maxCoeff()};
    }
    P = (P * km.M).eval();
  }
  throw NotPositiveBy64("kernel powers not positive by n = 64");
}

std::vector<double> harris_check(const KernelMatrix& km, SpectralResult& s,
                                 int nmax) {
  const Eigen::ArrayXd w = km.grid.weights.array();
  // Target pattern rho^n mu_i nu_j w_j; iterate R_n = (M / rho)^n instead
  // of raw powers so entries stay O(1).
  Eigen::ArrayXXd target =
      (s.mu.array().matrix() * (s.nu.array() * w).matrix().transpose()).array();
  Eigen::MatrixXd R = km.M / s.rho;
  Eigen::MatrixXd Rn = R;
  std::vector<double> errs;
  errs.reserve(static_cast<std::size_t>(nmax));
  for (int n = 1; n <= nmax; ++n) {
    const double err = (Rn.array() / target - 1.0).abs().maxCoeff();
    errs.push_back(err);
    if (n < nmax) Rn = (Rn * R).eval();
  }
  // Geometric rate from the decaying stretch of the tail (before the
  // floating-point floor).
  constexpr double kFloor = 1e-13;
  int first = 0;
  while (first + 1 < static_cast<int>(errs.size()) &&
         errs[static_cast<std::size_t>(first)] >= 1.0)
    ++first;
  int last = first;
  for (int i = first; i < static_cast<int>(errs.size()); ++i) {
    if (errs[static_cast<std::size_t>(i)] > kFloor) last = i;
  }
  if (last > first) {
    s.delta_estimate = std::pow(errs[static_cast<std::size_t>(last)] /
                                    errs[static_cast<std::size_t>(first)],
                                1.0 / (last - first));
  }
  return errs;
}

}  // namespace larsson
