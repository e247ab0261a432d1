#pragma once

namespace cone_spectra {

struct ModeParams {
  int N = 3;
  double lambda = 0.0;
  double alpha = 0.0;
};

/// Nonnegative root of α² + (N−2)α − λ = 0.
double alpha_of_lambda(double lambda, int N);
double lambda_of_alpha(double alpha, int N);
ModeParams mode_params(double lambda, int N);

/// The eigenvalue whose exponent is exactly 1/2: (2N−3)/4.
double critical_lambda(int N);

/// λ₁ of the lune of half-opening ω: min(2, (π/(2ω) + 1/2)² − 1/4).
double lune_lambda1(double omega);
/// The uncapped branch (π/(2ω) + 1/2)² − 1/4.
double lune_lambda_omega(double omega);

/// First-order model 3/4 + (2/π) cos ω, valid only near ω = π/2.
double sector_lambda_asymptote(double omega);

/// ∫_{B_r ∩ cone} |r^α f|² for a unit-L² spherical part f.
double mode_l2_norm_sq(double alpha, int N, double r);

/// ∫_{B_r ∩ cone} |∇(r^α f)|² for a unit-L² spherical part f.
double mode_energy_sq(double alpha, double lambda, int N, double r);

/// √(2/π) r^{1/2} sin(θ/2) + C. θ = ±π is accepted as the one-sided limit
/// from inside (−π, π).
double cracktip_value(double r, double theta, double C = 0.0);

/// ‖∇_τ u‖² / ‖∂u/∂r‖² on the unit sphere for an α = 1/2 mode: 2N − 3.
double derivative_identity_factor(int N);

}  // namespace cone_spectra
