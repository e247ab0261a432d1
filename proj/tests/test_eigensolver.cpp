#include <gtest/gtest.h>

#include <cmath>

#include <cone_spectra/crack_mesh.hpp>
#include <cone_spectra/eigensolver.hpp>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace cone_spectra;
using test_support::code_of;

TEST(Eigensolver, CoarseSphereSpectrum) {
  const OperatorPair p = assemble(build_mesh(make_cone(Preset::Empty, 3), 3, 0));
  const Spectrum s = solve(p, 9);
  EXPECT_TRUE(s.dense);
  const auto exact = oracle::sphere_eigenvalues(9);
  EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-10);
  for (int i = 1; i < 9; ++i) EXPECT_NEAR(s.eigenvalues[i], exact[i], 0.03 * exact[i]);
  EXPECT_EQ(s.zero_multiplicity, 1);
  ASSERT_GE(s.clusters.size(), 3u);
  EXPECT_EQ(s.clusters[0].size(), 1u);
  EXPECT_EQ(s.clusters[1].size(), 3u);
  EXPECT_EQ(s.clusters[2].size(), 5u);
}

TEST(Eigensolver, SparseAgreesWithDense) {
  const OperatorPair p = assemble(build_mesh(make_cone(Preset::HalfPlane, 3), 3, 2));
  SolverOptions sparse;
  sparse.dense_threshold = 10;
  const Spectrum a = solve(p, 8, sparse);
  const Spectrum b = solve(p, 8);
  EXPECT_FALSE(a.dense);
  EXPECT_TRUE(b.dense);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], 1e-8 * std::max(1.0, b.eigenvalues[i]));
    EXPECT_LT(a.residuals[i], 1e-8);
    EXPECT_LT(rayleigh_residual(p, a.eigenvectors.col(i), a.eigenvalues[i]), 1e-8);
  }
}

TEST(Eigensolver, SparseFindsWholeDegenerateClusters) {
  const OperatorPair p = assemble(build_mesh(make_cone(Preset::Empty, 3), 3, 0));
  SolverOptions sparse;
  sparse.dense_threshold = 10;
  // k = 6 ends inside the ℓ = 2 cluster; the cluster must still be resolved.
  const Spectrum s = solve(p, 6, sparse);
  const Spectrum d = solve(p, 9);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(s.eigenvalues[i], d.eigenvalues[i], 1e-8);
}

TEST(Eigensolver, EigenvectorsAreMassOrthonormal) {
  const OperatorPair p = assemble(build_mesh(make_cone(Preset::Y, 3), 2, 0));
  SolverOptions sparse;
  sparse.dense_threshold = 10;
  for (const SolverOptions& opts : {SolverOptions{}, sparse}) {
    const Spectrum s = solve(p, 6, opts);
    const Eigen::MatrixXd G = s.eigenvectors.transpose() * (p.mass * s.eigenvectors);
    EXPECT_LT((G - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-9);
    // Three faces, three constants.
    EXPECT_EQ(s.zero_multiplicity, 3);
  }
}

TEST(Eigensolver, SolveIsDeterministic) {
  const OperatorPair p = assemble(build_mesh(make_cone(Preset::HalfPlane, 3), 3, 1));
  SolverOptions sparse;
  sparse.dense_threshold = 10;
  const Spectrum a = solve(p, 4, sparse);
  const Spectrum b = solve(p, 4, sparse);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ((a.eigenvectors - b.eigenvectors).norm(), 0.0);
}

TEST(Eigensolver, ClustersAndFirstPositive) {
  const auto c = cluster_eigenvalues({0.0, 1.0, 1.0 + 1e-8, 2.0, 2.5});
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[1], (std::vector<int>{1, 2}));

  Spectrum s;
  s.eigenvalues = {0.0, 1e-12, 0.75, 2.0};
  EXPECT_EQ(first_positive(s), std::make_pair(0.75, 2));
  s.eigenvalues = {0.0, 1e-12};
  EXPECT_EQ(code_of([&] { first_positive(s); }), ErrorCode::AllZero);
}

TEST(Extrapolation, RecoversExactPowerLaw) {
  for (double p : {1.0, 1.5, 2.0}) {
    std::vector<std::pair<double, double>> levels;
    for (double h : {0.4, 0.2, 0.1, 0.05}) levels.push_back({h, 0.75 + 0.3 * std::pow(h, p)});
    const ExtrapolatedValue e = extrapolate(levels);
    EXPECT_NEAR(e.extrapolated, 0.75, 1e-9);
    EXPECT_NEAR(e.observed_order, p, 1e-6);
    EXPECT_LT(e.error_estimate, 1e-8);
    EXPECT_FALSE(e.stationary);
  }
}

TEST(Extrapolation, ErrorEstimateSeesHigherOrderTerms) {
  std::vector<std::pair<double, double>> levels;
  for (double h : {0.4, 0.2, 0.1, 0.05}) levels.push_back({h, 2.0 + h * h + 0.5 * std::pow(h, 3)});
  const ExtrapolatedValue e = extrapolate(levels);
  EXPECT_GT(e.error_estimate, std::abs(e.extrapolated - 2.0) * 0.5);
  EXPECT_LT(std::abs(e.extrapolated - 2.0), 1e-3);
}

TEST(Extrapolation, StationaryAndInvalidSequences) {
  const ExtrapolatedValue s = extrapolate({{0.4, 0.0}, {0.2, 0.0}, {0.1, 0.0}});
  EXPECT_TRUE(s.stationary);
  EXPECT_EQ(s.extrapolated, 0.0);
  EXPECT_EQ(code_of([] { extrapolate({{0.4, 1.0}, {0.2, 1.1}, {0.1, 1.05}}); }),
            ErrorCode::NonMonotoneSequence);
  EXPECT_EQ(code_of([] { extrapolate({{0.1, 1.0}, {0.2, 1.1}, {0.4, 1.15}}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { extrapolate({{0.2, 1.0}, {0.1, 1.1}}); }), ErrorCode::InvalidArgument);
}

TEST(Eigensolver, Errors) {
  const OperatorPair p = assemble(build_mesh(make_cone(Preset::Empty, 3), 1, 0));
  EXPECT_EQ(code_of([&] { solve(p, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { solve(p, 1000); }), ErrorCode::InvalidArgument);
  OperatorPair singular = p;
  singular.mass.setZero();
  EXPECT_EQ(code_of([&] { solve(singular, 3); }), ErrorCode::SingularMass);
}
