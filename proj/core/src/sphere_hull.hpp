#pragma once

#include <array>
#include <utility>
#include <vector>

#include "cone_spectra/cone_geometry.hpp"

namespace cone_spectra::detail {

struct BaseMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  // outward oriented
  /// Mesh edges lying on trace arcs, with their crack flag.
  std::vector<std::pair<int, int>> arc_edges;
  std::vector<bool> arc_crack;
};

/// Conforming spherical Delaunay triangulation whose edges cover every arc.
/// Built from the convex hull of arc samples plus icosahedral filler points;
/// arc segments missing from the hull are split until all are present.
BaseMesh conforming_sphere_mesh(const std::vector<Arc>& arcs);

/// Outward-oriented convex hull of points on the unit sphere.
std::vector<std::array<int, 3>> sphere_convex_hull(const std::vector<Vec3>& points);

}  // namespace cone_spectra::detail
