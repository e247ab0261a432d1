#include <gtest/gtest.h>

#include <random>

#include <Eigen/Dense>

#include <cone_spectra/laplace_beltrami.hpp>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace cone_spectra;
using test_support::code_of;

namespace {

CrackMesh single_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
  CrackMesh m;
  m.vertices = {a, b, c};
  m.triangles = {{0, 1, 2}};
  m.component_count = 1;
  m.vertex_component = {0, 0, 0};
  return m;
}

// Gradient of the linear interpolant in a local orthonormal frame of the
// triangle plane, then energy = area |∇u|².
double linear_energy(const Vec3& a, const Vec3& b, const Vec3& c, const Eigen::Vector3d& u) {
  const Vec3 t1 = (b - a).normalized();
  const Vec3 n = (b - a).cross(c - a).normalized();
  const Vec3 t2 = n.cross(t1);
  Eigen::Matrix2d A;
  A << (b - a).dot(t1), (b - a).dot(t2), (c - a).dot(t1), (c - a).dot(t2);
  const Eigen::Vector2d g = A.lu().solve(Eigen::Vector2d(u(1) - u(0), u(2) - u(0)));
  return 0.5 * (b - a).cross(c - a).norm() * g.squaredNorm();
}

// ∫ u² for linear u with the edge-midpoint rule, exact for quadratics.
double linear_mass(const Vec3& a, const Vec3& b, const Vec3& c, const Eigen::Vector3d& u) {
  const double area = 0.5 * (b - a).cross(c - a).norm();
  const double m01 = 0.5 * (u(0) + u(1));
  const double m12 = 0.5 * (u(1) + u(2));
  const double m20 = 0.5 * (u(2) + u(0));
  return area / 3.0 * (m01 * m01 + m12 * m12 + m20 * m20);
}

}  // namespace

TEST(LaplaceBeltrami, EquilateralCotangentEntries) {
  const CrackMesh m = single_triangle(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1));
  const OperatorPair p = assemble(m);
  const Eigen::MatrixXd K(p.stiffness);
  const Eigen::MatrixXd M(p.mass);
  const double area = std::sqrt(3.0) / 2.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        EXPECT_NEAR(K(i, j), -2 * oracle::equilateral_offdiagonal(), 1e-14);
        EXPECT_NEAR(M(i, j), area / 6.0, 1e-14);
      } else {
        EXPECT_NEAR(K(i, j), oracle::equilateral_offdiagonal(), 1e-14);
        EXPECT_NEAR(M(i, j), area / 12.0, 1e-14);
      }
    }
  }
}

TEST(LaplaceBeltrami, ElementMatricesMatchLinearInterpolant) {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 a = Vec3(g(rng), g(rng), g(rng)).normalized();
    const Vec3 b = Vec3(g(rng), g(rng), g(rng)).normalized();
    const Vec3 c = Vec3(g(rng), g(rng), g(rng)).normalized();
    const OperatorPair p = assemble(single_triangle(a, b, c));
    const Eigen::Vector3d u(g(rng), g(rng), g(rng));
    const Eigen::VectorXd ux = u;
    EXPECT_NEAR(energy(p, ux), linear_energy(a, b, c, u), 1e-9 * (1 + linear_energy(a, b, c, u)));
    EXPECT_NEAR(ux.dot(p.mass * ux), linear_mass(a, b, c, u), 1e-12);
  }
}

TEST(LaplaceBeltrami, ConstantsAreInTheKernel) {
  for (Preset preset : {Preset::Empty, Preset::HalfPlane, Preset::Y}) {
    const CrackMesh m = build_mesh(make_cone(preset, 3), 2, 1);
    const OperatorPair p = assemble(m);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(p.dimension());
    EXPECT_LT((p.stiffness * one).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_NEAR(one.dot(p.mass * one), mesh_quality(m).total_area, 1e-12);
  }
}

TEST(LaplaceBeltrami, EnergyOfLinearFunctionConverges) {
  std::vector<double> err;
  for (int level = 2; level <= 5; ++level) {
    const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), level, 0);
    const OperatorPair p = assemble(m);
    Eigen::VectorXd x1(p.dimension());
    for (Eigen::Index i = 0; i < x1.size(); ++i) x1(i) = m.vertices[i].x();
    err.push_back(std::abs(energy(p, x1) - oracle::sphere_energy_x1()));
  }
  EXPECT_LT(err.back(), 1e-3 * oracle::sphere_energy_x1());
  for (std::size_t i = 1; i < err.size(); ++i) EXPECT_LT(err[i], 0.3 * err[i - 1]);
}

TEST(LaplaceBeltrami, LumpedMassIsDiagonalWithSameTotal) {
  const CrackMesh m = build_mesh(make_cone(Preset::HalfPlane, 3), 2, 2);
  AssemblyOptions opts;
  opts.lumped_mass = true;
  const OperatorPair lumped = assemble(m, opts);
  const OperatorPair consistent = assemble(m);
  const Eigen::MatrixXd L(lumped.mass);
  EXPECT_EQ((L - Eigen::MatrixXd(L.diagonal().asDiagonal())).norm(), 0.0);
  EXPECT_NEAR(L.sum(), Eigen::MatrixXd(consistent.mass).sum(), 1e-12);
}

TEST(LaplaceBeltrami, CircleSegments) {
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 2), 2, 0);
  const OperatorPair p = assemble(m);
  const auto& s = m.segments.front();
  const double len = (m.vertices[s[0]] - m.vertices[s[1]]).norm();
  CrackMesh one;
  one.ambient_dim = 2;
  one.vertices = {m.vertices[s[0]], m.vertices[s[1]]};
  one.segments = {{0, 1}};
  const Eigen::MatrixXd K(assemble(one).stiffness);
  const Eigen::MatrixXd M(assemble(one).mass);
  EXPECT_NEAR(K(0, 0), 1.0 / len, 1e-12);
  EXPECT_NEAR(K(0, 1), -1.0 / len, 1e-12);
  EXPECT_NEAR(M(0, 0), len / 3.0, 1e-15);
  EXPECT_NEAR(M(0, 1), len / 6.0, 1e-15);
  const Eigen::VectorXd one_vec = Eigen::VectorXd::Ones(p.dimension());
  EXPECT_LT((p.stiffness * one_vec).norm(), 1e-12);
}

TEST(LaplaceBeltrami, Errors) {
  const CrackMesh flat = single_triangle(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 0, 0));
  EXPECT_EQ(code_of([&] { assemble(flat); }), ErrorCode::DegenerateTriangle);
  const OperatorPair p = assemble(build_mesh(make_cone(Preset::Empty, 3), 1, 0));
  EXPECT_EQ(code_of([&] { energy(p, Eigen::VectorXd::Ones(3)); }), ErrorCode::DimensionMismatch);
}
