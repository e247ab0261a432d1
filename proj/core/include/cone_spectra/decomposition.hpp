#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "cone_spectra/closed_forms.hpp"
#include "cone_spectra/eigensolver.hpp"

namespace cone_spectra {

struct DecompositionOptions {
  /// Modes with λ above this are left out (tail reported in residual_l2).
  double lambda_max = 30.0;
  /// Use at most this many eigenpairs; 0 means all available.
  int max_modes = 0;
};

/// Boundary data written as Σ aᵢ fᵢ; its homogeneous extension is Σ aᵢ r^{αᵢ} fᵢ.
struct Decomposition {
  int N = 3;
  std::vector<double> coefficients;
  std::vector<ModeParams> modes;
  std::vector<int> indices;  // eigenpair index of each retained mode
  Eigen::MatrixXd shapes;    // nodal fᵢ, one column per retained mode
  int truncation = 0;
  double data_norm_sq = 0.0;
  double residual_l2 = 0.0;
};

Decomposition decompose(const Eigen::VectorXd& data, const OperatorPair& pair,
                        const Spectrum& spectrum, int N,
                        const DecompositionOptions& options = {});

/// Σ aᵢ r^{αᵢ} fᵢ(x) at mesh vertex x.
double reconstruct(const Decomposition& dec, double r, int vertex);

/// Same at a point given by barycentric weights in a triangle (or segment).
double reconstruct(const Decomposition& dec, double r, const std::vector<int>& element,
                   const std::vector<double>& barycentric);

/// Σ aᵢ² [‖gᵢ‖²_{L²(B_r)} + ‖∇gᵢ‖²_{L²(B_r)}] from the per-mode closed forms.
double annulus_energy(const Decomposition& dec, double r);

/// Σ aᵢ² λᵢ, the spherical Dirichlet energy of the retained part.
double coefficient_energy(const Decomposition& dec);

/// Σ aᵢ².
double coefficient_norm_sq(const Decomposition& dec);

}  // namespace cone_spectra
