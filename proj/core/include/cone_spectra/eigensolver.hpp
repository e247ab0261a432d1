#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cone_spectra/laplace_beltrami.hpp"

namespace cone_spectra {

struct SolverOptions {
  /// Problems up to this dimension use the dense generalized solver.
  Eigen::Index dense_threshold = 2000;
  double shift = -0.1;
  double tolerance = 1e-8;
  std::uint64_t seed = 0x5eed'c0ffeeULL;
  /// Extra block columns beyond k; also the growth step when the inertia
  /// check reports missed eigenvalues.
  int block_padding = 8;
  int krylov_depth = 3;
  /// 0 selects the default cap 10·k·sqrt(n).
  int max_iterations = 0;
};

constexpr double kZeroEigenvalue = 1e-8;
constexpr double kClusterTolerance = 1e-6;

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;     // columns, mass-orthonormal
  std::vector<std::vector<int>> clusters;
  int zero_multiplicity = 0;
  std::vector<double> residuals;
  int iterations = 0;
  bool dense = false;
};

/// k smallest eigenpairs of K x = λ M x.
Spectrum solve(const OperatorPair& pair, int k, const SolverOptions& options = {});

/// Every eigenpair, by the dense solver regardless of size.
Spectrum solve_dense(const OperatorPair& pair);

/// Groups ascending eigenvalues whose gap is below tol·max(1, λ).
std::vector<std::vector<int>> cluster_eigenvalues(const std::vector<double>& eigenvalues,
                                                  double tol = kClusterTolerance);

/// ‖Kx − λMx‖ / ‖Mx‖.
double rayleigh_residual(const OperatorPair& pair, const Eigen::VectorXd& x, double lambda);

/// First eigenvalue above the zero threshold and its index.
std::pair<double, int> first_positive(const Spectrum& spectrum);

struct ExtrapolatedValue {
  std::vector<std::pair<double, double>> levels;  // (h, λ_h)
  double extrapolated = 0.0;
  double observed_order = 0.0;
  double error_estimate = 0.0;
  /// All differences vanish; the value is returned as is and no order is fitted.
  bool stationary = false;
};

/// Richardson extrapolation with λ_h = λ + C h^p fitted to the three finest
/// levels. The error estimate compares with the fit to the preceding three
/// when at least four levels are given, else uses the size of the correction.
ExtrapolatedValue extrapolate(const std::vector<std::pair<double, double>>& levels);

}  // namespace cone_spectra
