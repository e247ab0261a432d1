#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cone_spectra/cone_geometry.hpp"

namespace cone_spectra {

struct MeshOptions {
  std::size_t vertex_cap = 4'000'000;
  /// Arcs and base-mesh edges shorter than this raise DegenerateArc.
  double min_edge_length = 1e-3;
  /// Angular radius of the first grading cap; it halves per depth step.
  double grading_radius = 0.3;
  /// Also grade toward reentrant lune corners (the poles of Lune(ω > π/2)).
  bool grade_reentrant_corners = true;
};

/// Triangulation of S² \ K (segments of S¹ \ K for N = 2).
///
/// Vertices on a cut arc are duplicated once per side; `seam_map` records
/// (original, copy) pairs so merging them restores the closed sphere. Crack
/// tips are never duplicated.
struct CrackMesh {
  int ambient_dim = 3;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> segments;
  std::vector<std::pair<int, int>> seam_map;
  std::vector<int> tip_vertices;
  int refinement_level = 0;
  int grading_depth = 0;
  int component_count = 0;
  std::vector<int> vertex_component;
  /// Longest edge of the unrefined base mesh.
  double base_edge_length = 0.0;
  std::uint64_t id = 0;

  /// Nominal mesh size h = base_edge_length / 2^level used for extrapolation.
  double mesh_size() const;
  std::size_t element_count() const {
    return ambient_dim == 2 ? segments.size() : triangles.size();
  }
};

struct QualityReport {
  double min_angle = 0.0;  // radians
  double max_aspect_ratio = 0.0;
  double total_area = 0.0;  // total length for N = 2
};

CrackMesh build_mesh(const ConeSpec& spec, int refinement_level, int grading_depth,
                     const MeshOptions& options = {});

QualityReport mesh_quality(const CrackMesh& mesh);

/// Submesh of one connected component; `vertex_map` receives the parent index
/// of every submesh vertex.
CrackMesh extract_component(const CrackMesh& mesh, int component,
                            std::vector<int>* vertex_map = nullptr);

/// Vertex permutation induced by the reflection x -> x - 2(x·n)n. Seam copies
/// lying on the mirror plane are matched by the side of their incident
/// elements. Throws InvalidArgument when the mesh is not mirror symmetric.
std::vector<int> reflection_map(const CrackMesh& mesh, const Vec3& plane_normal);

/// Unit vector pointing from each vertex into its incident elements (mean of
/// incident centroids minus the vertex, projected to the tangent plane).
/// Used to tell apart seam copies that share coordinates.
std::vector<Vec3> vertex_side_directions(const CrackMesh& mesh);

}  // namespace cone_spectra
