#include <gtest/gtest.h>

#include <cmath>

#include <cone_spectra/closed_forms.hpp>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace cone_spectra;
using test_support::code_of;

TEST(ClosedForms, CriticalExponent) {
  EXPECT_NEAR(alpha_of_lambda(0.75, 3), 0.5, 1e-15);
  for (int N = 2; N <= 6; ++N) {
    EXPECT_NEAR(critical_lambda(N), (2.0 * N - 3.0) / 4.0, 1e-15);
    EXPECT_NEAR(alpha_of_lambda(critical_lambda(N), N), 0.5, 1e-14);
    // λ = α(α + N − 2) at α = 1/2.
    EXPECT_NEAR(lambda_of_alpha(0.5, N), 0.5 * (0.5 + N - 2), 1e-15);
  }
}

TEST(ClosedForms, RoundTripOnGrid) {
  for (int N = 2; N <= 6; ++N) {
    for (int i = 0; i < 1000; ++i) {
      const double lambda = 50.0 * i / 999.0;
      const double alpha = alpha_of_lambda(lambda, N);
      EXPECT_GE(alpha, 0.0);
      EXPECT_NEAR(alpha * (alpha + N - 2), lambda, 1e-12 * std::max(1.0, lambda));
      EXPECT_NEAR(lambda_of_alpha(alpha, N), lambda, 1e-12 * std::max(1.0, lambda));
    }
  }
}

TEST(ClosedForms, SmallLambdaIsStable) {
  // α ≈ λ/(N−2) for tiny λ; the naive root formula loses every digit here.
  const double lambda = 1e-14;
  EXPECT_NEAR(alpha_of_lambda(lambda, 3) / lambda, 1.0, 1e-10);
  EXPECT_NEAR(alpha_of_lambda(lambda, 2), 1e-7, 1e-20);
}

TEST(ClosedForms, DerivativeIdentityFactor) {
  // For g = r^α f with ∫f² = 1 on the unit sphere: ∫|∂_r g|² = α², ∫|∇_τ g|² = λ.
  for (int N = 2; N <= 6; ++N) {
    const double alpha = 0.5;
    const double ratio = lambda_of_alpha(alpha, N) / (alpha * alpha);
    EXPECT_NEAR(derivative_identity_factor(N), ratio, 1e-12);
    EXPECT_NEAR(derivative_identity_factor(N), 2.0 * N - 3.0, 1e-12);
  }
}

TEST(ClosedForms, LuneFormulaAgainstSeparationOfVariables) {
  for (double omega : {0.3, oracle::pi / 4, oracle::pi / 3, oracle::pi / 2, 2.0, 3 * oracle::pi / 4,
                       2.9, oracle::pi}) {
    EXPECT_NEAR(lune_lambda1(omega), oracle::lune_first_positive(omega), 1e-12) << omega;
  }
  EXPECT_NEAR(lune_lambda1(3 * oracle::pi / 4), 10.0 / 9.0, 1e-12);
  EXPECT_NEAR(lune_lambda_omega(oracle::pi / 3), 3.75, 1e-12);
  EXPECT_NEAR(lune_lambda1(oracle::pi), 0.75, 1e-12);
}

TEST(ClosedForms, SectorAsymptote) {
  EXPECT_NEAR(sector_lambda_asymptote(oracle::pi / 2), 0.75, 1e-15);
  const double h = 1e-5;
  const double slope =
      (sector_lambda_asymptote(oracle::pi / 2 + h) - sector_lambda_asymptote(oracle::pi / 2 - h)) / (2 * h);
  EXPECT_NEAR(slope, -2.0 / oracle::pi, 1e-8);
}

TEST(ClosedForms, ModeIntegralsAgainstQuadrature) {
  for (int N : {2, 3, 5}) {
    for (double alpha : {0.0, 0.5, 1.0, 2.3}) {
      const double lambda = alpha * (alpha + N - 2);
      const double r = 1.7;
      const double l2 = oracle::simpson([&](double s) { return std::pow(s, 2 * alpha + N - 1); }, 0, r);
      EXPECT_NEAR(mode_l2_norm_sq(alpha, N, r), l2, 1e-9 * l2);
      if (2 * alpha + N - 2 > 0) {
        // Substitute s = t² so the integrand is smooth at 0 for α = 1/2, N = 2.
        const double grad = oracle::simpson(
            [&](double t) {
              if (t == 0.0) return 0.0;
              const double s = t * t;
              return (alpha * alpha + lambda) * std::pow(s, 2 * alpha + N - 3) * 2 * t;
            },
            0, std::sqrt(r));
        EXPECT_NEAR(mode_energy_sq(alpha, lambda, N, r), grad, 1e-9 * grad);
      }
    }
  }
}

TEST(ClosedForms, CracktipNormalization) {
  for (double R : {0.5, 1.0, 3.0}) {
    const double energy = oracle::cracktip_energy(R);
    EXPECT_NEAR(energy, R, 1e-12 * std::max(1.0, R));
    // The same through the mode formulas: sin(θ/2)√(2/π) has L² norm² 2 on
    // the slit circle and λ = α² = 1/4 for N = 2.
    EXPECT_NEAR(2.0 * mode_energy_sq(0.5, 0.25, 2, R), R, 1e-12 * std::max(1.0, R));
  }
  for (double theta : {-oracle::pi, -1.0, 0.0, 2.0, oracle::pi}) {
    const double r = 0.3;
    EXPECT_NEAR(cracktip_value(r, theta, 0.2),
                std::sqrt(2 / oracle::pi) * std::sqrt(r) * std::sin(theta / 2) + 0.2, 1e-15);
  }
  EXPECT_NEAR(cracktip_value(1.0, oracle::pi) - cracktip_value(1.0, -oracle::pi),
              2.0 * std::sqrt(2.0 / oracle::pi), 1e-15);
}

TEST(ClosedForms, Errors) {
  EXPECT_EQ(code_of([] { alpha_of_lambda(-0.1, 3); }), ErrorCode::NegativeLambda);
  EXPECT_EQ(code_of([] { mode_energy_sq(0.5, 1.0, 3, 1.0); }), ErrorCode::InconsistentPair);
  EXPECT_EQ(code_of([] { mode_energy_sq(0.0, 0.0, 2, 1.0); }), ErrorCode::IoFailure);
  EXPECT_EQ(mode_energy_sq(0.0, 0.0, 2, 1.0), 0.0);
  EXPECT_EQ(code_of([] { cracktip_value(1.0, 4.0); }), ErrorCode::ThetaOutOfRange);
  EXPECT_EQ(code_of([] { lune_lambda1(0.0); }), ErrorCode::OmegaOutOfRange);
  EXPECT_EQ(code_of([] { alpha_of_lambda(1.0, 1); }), ErrorCode::UnsupportedDimension);
}
