#include <gtest/gtest.h>

#include <set>

#include <cone_spectra/crack_mesh.hpp>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace cone_spectra;
using test_support::code_of;

namespace {

int euler_characteristic(const CrackMesh& m) {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      const int a = t[i];
      const int b = t[(i + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return static_cast<int>(m.vertices.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(m.triangles.size());
}

int vertices_near(const CrackMesh& m, const Vec3& p, double radius) {
  int count = 0;
  for (const Vec3& v : m.vertices) count += (v - p).norm() < radius;
  return count;
}

}  // namespace

TEST(CrackMesh, IcosahedronBase) {
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), 0, 0);
  EXPECT_EQ(m.vertices.size(), 12u);
  EXPECT_EQ(m.triangles.size(), 20u);
  EXPECT_NEAR(mesh_quality(m).total_area, oracle::icosahedron_area(), 1e-12);
  EXPECT_NEAR(mesh_quality(m).min_angle, oracle::pi / 3, 1e-12);
}

TEST(CrackMesh, RefinedAreaTendsToSphereQuadratically) {
  std::vector<double> err;
  for (int level = 1; level <= 4; ++level) {
    const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), level, 0);
    EXPECT_EQ(m.vertices.size(), 10u * (1u << (2 * level)) + 2u);
    for (const Vec3& v : m.vertices) EXPECT_NEAR(v.norm(), 1.0, 1e-14);
    err.push_back(4 * oracle::pi - mesh_quality(m).total_area);
  }
  for (std::size_t i = 1; i < err.size(); ++i) EXPECT_NEAR(err[i - 1] / err[i], 4.0, 0.2);
}

TEST(CrackMesh, EulerCharacteristicCountsDisks) {
  const double pi = oracle::pi;
  EXPECT_EQ(euler_characteristic(build_mesh(make_cone(Preset::Empty, 3), 2, 0)), 2);
  EXPECT_EQ(euler_characteristic(build_mesh(make_cone(Preset::HalfPlane, 3), 2, 2)), 1);
  EXPECT_EQ(euler_characteristic(build_mesh(make_cone(Preset::SectorArc, 3, 0.4 * pi), 2, 2)), 1);
  EXPECT_EQ(euler_characteristic(build_mesh(make_cone(Preset::FullPlane, 3), 2, 0)), 2);
  EXPECT_EQ(euler_characteristic(build_mesh(make_cone(Preset::Y, 3), 2, 0)), 3);
  EXPECT_EQ(euler_characteristic(build_mesh(make_cone(Preset::T, 3), 2, 0)), 4);
  EXPECT_EQ(euler_characteristic(build_mesh(make_cone(Preset::Lune, 3, pi / 3), 2, 0)), 1);
  EXPECT_EQ(euler_characteristic(build_mesh(make_cone(Preset::Lune, 3, 3 * pi / 4), 2, 2)), 1);
}

TEST(CrackMesh, ComponentsMatchTopology) {
  for (Preset p : {Preset::Empty, Preset::HalfPlane, Preset::FullPlane, Preset::Y, Preset::T}) {
    const ConeSpec spec = make_cone(p, 3);
    const CrackMesh m = build_mesh(spec, 2, 0);
    EXPECT_EQ(m.component_count, topology(spec).component_count) << to_string(p);
    std::size_t total = 0;
    double area = 0.0;
    for (int c = 0; c < m.component_count; ++c) {
      std::vector<int> map;
      const CrackMesh sub = extract_component(m, c, &map);
      ASSERT_EQ(map.size(), sub.vertices.size());
      for (std::size_t v = 0; v < map.size(); ++v) {
        EXPECT_EQ(sub.vertices[v], m.vertices[map[v]]);
      }
      total += sub.vertices.size();
      area += mesh_quality(sub).total_area;
    }
    EXPECT_EQ(total, m.vertices.size());
    EXPECT_NEAR(area, mesh_quality(m).total_area, 1e-12);
  }
}

TEST(CrackMesh, SeamCopiesShareCoordinatesAndTipsAreSingle) {
  const CrackMesh m = build_mesh(make_cone(Preset::HalfPlane, 3), 3, 3);
  ASSERT_FALSE(m.seam_map.empty());
  std::set<int> copies;
  for (const auto& [a, b] : m.seam_map) {
    EXPECT_NE(a, b);
    EXPECT_EQ(m.vertices[a], m.vertices[b]);
    copies.insert(b);
  }
  ASSERT_EQ(m.tip_vertices.size(), 2u);
  for (int tip : m.tip_vertices) {
    EXPECT_EQ(copies.count(tip), 0u);
    int twins = 0;
    for (const Vec3& v : m.vertices) twins += (v - m.vertices[tip]).norm() < 1e-14;
    EXPECT_EQ(twins, 1);
    EXPECT_NEAR(std::abs(m.vertices[tip].z()), 1.0, 1e-14);
  }
}

TEST(CrackMesh, GradingConcentratesVerticesAtTips) {
  const ConeSpec spec = make_cone(Preset::HalfPlane, 3);
  const CrackMesh plain = build_mesh(spec, 2, 0);
  const CrackMesh graded = build_mesh(spec, 2, 4);
  const Vec3 tip(0, 0, 1);
  EXPECT_GT(vertices_near(graded, tip, 0.05), 4 * vertices_near(plain, tip, 0.05));
  EXPECT_EQ(graded.grading_depth, 4);
  EXPECT_DOUBLE_EQ(graded.mesh_size(), plain.mesh_size());
  EXPECT_GT(mesh_quality(graded).min_angle, 15.0 * oracle::pi / 180.0);
  EXPECT_LT(4 * oracle::pi - mesh_quality(graded).total_area, 4 * oracle::pi - mesh_quality(plain).total_area);
}

TEST(CrackMesh, MeshSizeHalvesPerLevel) {
  const ConeSpec spec = make_cone(Preset::Y, 3);
  const CrackMesh a = build_mesh(spec, 1, 0);
  const CrackMesh b = build_mesh(spec, 2, 0);
  EXPECT_DOUBLE_EQ(a.mesh_size(), 2.0 * b.mesh_size());
  EXPECT_NE(a.id, b.id);
  EXPECT_EQ(a.id, build_mesh(spec, 1, 0).id);
}

TEST(CrackMesh, ReflectionMapIsAnInvolution) {
  const CrackMesh m = build_mesh(make_cone(Preset::HalfPlane, 3), 2, 2);
  const Vec3 n(0, 1, 0);
  const std::vector<int> s = reflection_map(m, n);
  ASSERT_EQ(s.size(), m.vertices.size());
  for (std::size_t v = 0; v < s.size(); ++v) {
    EXPECT_EQ(s[s[v]], static_cast<int>(v));
    const Vec3 x = m.vertices[v];
    EXPECT_NEAR((m.vertices[s[v]] - (x - 2 * x.dot(n) * n)).norm(), 0.0, 1e-12);
  }
}

TEST(CrackMesh, CircleMeshes) {
  const CrackMesh whole = build_mesh(make_cone(Preset::Empty, 2), 2, 0);
  EXPECT_EQ(whole.ambient_dim, 2);
  EXPECT_NEAR(mesh_quality(whole).total_area, 2 * oracle::pi, 0.05);
  const CrackMesh cut = build_mesh(make_cone(Preset::HalfPlane, 2), 3, 0);
  EXPECT_EQ(cut.seam_map.size(), 1u);
  EXPECT_EQ(cut.segments.size(), cut.vertices.size() - 1);
  const CrackMesh two = build_mesh(make_cone(Preset::FullPlane, 2), 3, 0);
  EXPECT_EQ(two.component_count, 2);
}

TEST(CrackMesh, Errors) {
  MeshOptions small;
  small.vertex_cap = 500;
  EXPECT_EQ(code_of([&] { build_mesh(make_cone(Preset::Empty, 3), 4, 0, small); }),
            ErrorCode::MeshBudgetExceeded);
  EXPECT_EQ(code_of([] { build_mesh(make_cone(Preset::Empty, 3), 10, 0); }),
            ErrorCode::InvalidArgument);
  const Vec3 a(1, 0, 0);
  const Vec3 b(std::cos(1e-4), std::sin(1e-4), 0);
  const ConeSpec tiny = make_custom_cone(3, {make_arc(a, b, true)});
  EXPECT_EQ(code_of([&] { build_mesh(tiny, 1, 0); }), ErrorCode::DegenerateArc);
  const CrackMesh m = build_mesh(make_cone(Preset::Empty, 3), 1, 0);
  EXPECT_EQ(code_of([&] { extract_component(m, 1); }), ErrorCode::InvalidArgument);
}
