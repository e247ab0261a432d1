#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <cone_spectra/decomposition.hpp>
#include <cone_spectra/screening.hpp>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace cone_spectra;
using test_support::code_of;

namespace {

Eigen::VectorXd sample(const CrackMesh& m, double (*f)(const Vec3&)) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(m.vertices.size()));
  for (std::size_t i = 0; i < m.vertices.size(); ++i) out(i) = f(m.vertices[i]);
  return out;
}

double smooth(const Vec3& x) { return x.x() + x.y() * x.z() + std::exp(x.z()); }
double x1(const Vec3& x) { return x.x(); }
double mixed(const Vec3& x) { return x.x() + 0.5 * x.z() * x.z(); }

DecompositionOptions everything() {
  DecompositionOptions o;
  o.lambda_max = std::numeric_limits<double>::infinity();
  return o;
}

// ∫_0^r [ρ²(vᵀMv + v'ᵀMv') + vᵀKv] dρ with v(ρ) the reconstructed nodal
// values on the sphere of radius ρ, v' by central differences.
double shell_quadrature(const Decomposition& dec, const OperatorPair& p, double r) {
  const Eigen::Index n = p.dimension();
  auto nodal = [&](double rho) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = reconstruct(dec, rho, static_cast<int>(i));
    return v;
  };
  return oracle::simpson(
      [&](double rho) {
        if (rho == 0.0) return 0.0;
        const double h = 1e-5 * rho;
        const Eigen::VectorXd v = nodal(rho);
        const Eigen::VectorXd dv = (nodal(rho + h) - nodal(rho - h)) / (2 * h);
        return rho * rho * (v.dot(p.mass * v) + dv.dot(p.mass * dv)) + v.dot(p.stiffness * v);
      },
      0.0, r, 1e-7, 12);
}

}  // namespace

TEST(Decomposition, ParsevalOnFullDenseBasis) {
  for (const auto& [spec, level, grading] :
       {std::tuple{make_cone(Preset::Empty, 3), 2, 0}, std::tuple{make_cone(Preset::HalfPlane, 3), 1, 2},
        std::tuple{make_cone(Preset::Lune, 3, 2.0), 1, 1}}) {
    const CrackMesh m = build_mesh(spec, level, grading);
    ASSERT_LE(m.vertices.size(), 300u);
    const OperatorPair p = assemble(m);
    const Spectrum s = solve_dense(p);
    const Eigen::VectorXd data = sample(m, smooth);
    const Decomposition dec = decompose(data, p, s, 3, everything());
    const double l2 = data.dot(p.mass * data);
    const double h1 = data.dot(p.stiffness * data);
    EXPECT_NEAR(coefficient_norm_sq(dec), l2, 1e-6 * l2) << to_string(spec.preset);
    EXPECT_NEAR(coefficient_energy(dec), h1, 1e-6 * h1) << to_string(spec.preset);
    EXPECT_NEAR(dec.data_norm_sq, l2, 1e-12 * l2);
    EXPECT_LT(dec.residual_l2, 1e-6 * std::sqrt(l2));
    for (int v = 0; v < static_cast<int>(m.vertices.size()); v += 17) {
      EXPECT_NEAR(reconstruct(dec, 1.0, v), data(v), 1e-8);
    }
  }
}

TEST(Decomposition, ModesCarryTheirExponents) {
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), 2, 0);
  const OperatorPair p = assemble(m);
  const Decomposition dec = decompose(sample(m, smooth), p, solve_dense(p), 3, everything());
  for (const ModeParams& mode : dec.modes) {
    EXPECT_NEAR(mode.alpha * (mode.alpha + 1.0), mode.lambda, 1e-9 * std::max(1.0, mode.lambda));
  }
}

TEST(Decomposition, LinearDataExtendsLinearly) {
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), 4, 0);
  const OperatorPair p = assemble(m);
  const Decomposition dec = decompose(sample(m, x1), p, solve(p, 4), 3);
  for (double r : {0.25, 0.5, 2.0}) {
    for (int v = 0; v < static_cast<int>(m.vertices.size()); v += 31) {
      EXPECT_NEAR(reconstruct(dec, r, v), r * m.vertices[v].x(), 2e-3 * r);
    }
  }
  // Barycentric evaluation at a vertex equals the vertex evaluation.
  const auto& t = m.triangles.front();
  EXPECT_NEAR(reconstruct(dec, 0.7, {t[0], t[1], t[2]}, {1.0, 0.0, 0.0}), reconstruct(dec, 0.7, t[0]),
              1e-14);
}

TEST(Decomposition, AnnulusEnergyMatchesShellQuadrature) {
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), 4, 0);
  const OperatorPair p = assemble(m);
  const Spectrum s = solve(p, 10);

  // u = x₁ in the ball: ∫u² = 4πr⁵/15 and ∫|∇u|² = 4πr³/3.
  const Decomposition lin = decompose(sample(m, x1), p, s, 3);
  for (double r : {0.5, 1.0, 1.5}) {
    const double exact = 4 * oracle::pi * std::pow(r, 5) / 15 + 4 * oracle::pi * std::pow(r, 3) / 3;
    EXPECT_NEAR(annulus_energy(lin, r), exact, 0.02 * exact);
  }

  const Decomposition mix = decompose(sample(m, mixed), p, s, 3);
  for (double r : {0.6, 1.0}) {
    const double quad = shell_quadrature(mix, p, r);
    EXPECT_NEAR(annulus_energy(mix, r), quad, 0.02 * quad);
  }
}

TEST(Decomposition, ModeFilterAdmitsOnlyConstantsAndHalf) {
  std::vector<double> lambdas;
  for (double alpha : {0.0, 0.3, 0.5, 0.9}) lambdas.push_back(lambda_of_alpha(alpha, 3));
  const auto modes = filter_modes(lambdas, 3);
  ASSERT_EQ(modes.size(), 4u);
  EXPECT_TRUE(modes[0].admissible);
  EXPECT_FALSE(modes[1].admissible);
  EXPECT_TRUE(modes[2].admissible);
  EXPECT_FALSE(modes[3].admissible);
  EXPECT_NEAR(modes[2].alpha, 0.5, 1e-15);
}

TEST(Decomposition, Truncation) {
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), 2, 0);
  const OperatorPair p = assemble(m);
  const Spectrum s = solve_dense(p);
  DecompositionOptions o;
  o.lambda_max = 2.5;
  const Decomposition dec = decompose(sample(m, smooth), p, s, 3, o);
  EXPECT_EQ(dec.truncation, 4);
  EXPECT_GT(dec.residual_l2, 0.0);
  o.max_modes = 3;
  EXPECT_EQ(decompose(sample(m, smooth), p, s, 3, o).truncation, 3);
}

TEST(Decomposition, Errors) {
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), 1, 0);
  const OperatorPair p = assemble(m);
  const Spectrum s = solve_dense(p);
  EXPECT_EQ(code_of([&] { decompose(Eigen::VectorXd::Ones(3), p, s, 3); }),
            ErrorCode::DimensionMismatch);
  const Decomposition dec = decompose(sample(m, x1), p, s, 3);
  EXPECT_EQ(code_of([&] { reconstruct(dec, 1.0, 100000); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { reconstruct(dec, 0.0, 0); }), ErrorCode::InvalidArgument);
}
