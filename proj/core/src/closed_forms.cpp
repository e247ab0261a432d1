#include "cone_spectra/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "cone_spectra/error.hpp"

namespace cone_spectra {

namespace {
constexpr double kPi = std::numbers::pi;

void check_dim(int N) {
  require(N >= 2, ErrorCode::UnsupportedDimension, "ambient dimension must be at least 2");
}
}  // namespace

double alpha_of_lambda(double lambda, int N) {
  check_dim(N);
  require(lambda >= 0.0, ErrorCode::NegativeLambda, "eigenvalue must be nonnegative");
  const double b = N - 2.0;
  if (lambda == 0.0) return 0.0;
  // 2λ / (b + √(b² + 4λ)) avoids cancellation for small λ.
  return 2.0 * lambda / (b + std::sqrt(b * b + 4.0 * lambda));
}

double lambda_of_alpha(double alpha, int N) {
  check_dim(N);
  require(alpha >= 0.0, ErrorCode::InvalidArgument, "exponent must be nonnegative");
  return alpha * (alpha + N - 2.0);
}

ModeParams mode_params(double lambda, int N) {
  return ModeParams{N, lambda, alpha_of_lambda(lambda, N)};
}

double critical_lambda(int N) {
  check_dim(N);
  return (2.0 * N - 3.0) / 4.0;
}

double lune_lambda_omega(double omega) {
  require(omega > 0.0 && omega <= kPi, ErrorCode::OmegaOutOfRange, "omega must lie in (0, pi]");
  const double t = kPi / (2.0 * omega) + 0.5;
  return t * t - 0.25;
}

double lune_lambda1(double omega) { return std::min(2.0, lune_lambda_omega(omega)); }

double sector_lambda_asymptote(double omega) { return 0.75 + (2.0 / kPi) * std::cos(omega); }

double mode_l2_norm_sq(double alpha, int N, double r) {
  check_dim(N);
  require(r > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  const double e = 2.0 * alpha + N;
  return std::pow(r, e) / e;
}

double mode_energy_sq(double alpha, double lambda, int N, double r) {
  check_dim(N);
  require(r > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  require(std::abs(lambda - lambda_of_alpha(alpha, N)) <= 1e-9 * std::max(1.0, lambda),
          ErrorCode::InconsistentPair, "lambda and alpha are not a mode pair");
  // Constants carry no gradient; their zero-energy part is exact in any N.
  if (alpha == 0.0 && lambda == 0.0) return 0.0;
  const double e = 2.0 * (alpha - 1.0) + N;
  require(e > 0.0, ErrorCode::NonIntegrable, "gradient is not square integrable at the origin");
  return std::pow(r, e) / e * (alpha * alpha + lambda);
}

double cracktip_value(double r, double theta, double C) {
  require(r >= 0.0, ErrorCode::InvalidArgument, "radius must be nonnegative");
  require(theta >= -kPi && theta <= kPi, ErrorCode::ThetaOutOfRange,
          "theta must lie in [-pi, pi]");
  return std::sqrt(2.0 / kPi) * std::sqrt(r) * std::sin(theta / 2.0) + C;
}

double derivative_identity_factor(int N) {
  check_dim(N);
  return 2.0 * N - 3.0;
}

}  // namespace cone_spectra
