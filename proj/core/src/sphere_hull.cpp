#include "sphere_hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "cone_spectra/error.hpp"

namespace cone_spectra::detail {

namespace {

double orient(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
  return (b - a).cross(c - a).dot(p - a);
}

std::vector<Vec3> icosahedron_points(int subdivisions) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                         {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                         {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      mid.emplace(key, static_cast<int>(v.size()) - 1);
      return static_cast<int>(v.size()) - 1;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& t : f) {
      const int ab = midpoint(t[0], t[1]);
      const int bc = midpoint(t[1], t[2]);
      const int ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({ab, t[1], bc});
      next.push_back({ca, bc, t[2]});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  return v;
}

double distance_to_arc(const Vec3& p, const Arc& arc) {
  const Vec3 tangent = arc.normal.cross(arc.a);
  const Vec3 in_plane = p - p.dot(arc.normal) * arc.normal;
  if (in_plane.norm() > 1e-14) {
    double t = std::atan2(in_plane.dot(tangent), in_plane.dot(arc.a));
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    if (t <= arc.length()) return std::asin(std::min(1.0, std::abs(p.dot(arc.normal))));
  }
  const double da = std::acos(std::clamp(p.dot(arc.a), -1.0, 1.0));
  const double db = std::acos(std::clamp(p.dot(arc.b), -1.0, 1.0));
  return std::min(da, db);
}

}  // namespace

std::vector<std::array<int, 3>> sphere_convex_hull(const std::vector<Vec3>& points) {
  const int n = static_cast<int>(points.size());
  require(n >= 4, ErrorCode::InvalidCone, "convex hull needs at least four points");

  int i1 = 1;
  for (int i = 1; i < n; ++i) {
    if ((points[i] - points[0]).norm() > (points[i1] - points[0]).norm()) i1 = i;
  }
  int i2 = -1;
  double best = 0.0;
  for (int i = 1; i < n; ++i) {
    const double d = (points[i] - points[0]).cross(points[i1] - points[0]).norm();
    if (d > best) best = d, i2 = i;
  }
  int i3 = -1;
  best = 0.0;
  for (int i = 1; i < n; ++i) {
    const double d = std::abs(orient(points[0], points[i1], points[i2], points[i]));
    if (d > best) best = d, i3 = i;
  }
  require(i2 >= 0 && i3 >= 0 && best > 1e-12, ErrorCode::InvalidCone,
          "hull points are coplanar");

  std::vector<std::array<int, 3>> faces;
  const std::array<int, 4> tet = {0, i1, i2, i3};
  const Vec3 centroid =
      (points[0] + points[i1] + points[i2] + points[i3]) / 4.0;
  for (const auto& f : std::array<std::array<int, 3>, 4>{
           {{tet[0], tet[1], tet[2]}, {tet[0], tet[1], tet[3]},
            {tet[0], tet[2], tet[3]}, {tet[1], tet[2], tet[3]}}}) {
    std::array<int, 3> face = f;
    if (orient(points[face[0]], points[face[1]], points[face[2]], centroid) > 0.0) {
      std::swap(face[1], face[2]);
    }
    faces.push_back(face);
  }

  for (int p = 0; p < n; ++p) {
    if (p == tet[0] || p == tet[1] || p == tet[2] || p == tet[3]) continue;
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const auto& t = faces[f];
      if (orient(points[t[0]], points[t[1]], points[t[2]], points[p]) > 1e-13) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;  // duplicate point
    std::set<std::pair<int, int>> visible_edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      for (int k = 0; k < 3; ++k) visible_edges.insert({faces[f][k], faces[f][(k + 1) % 3]});
    }
    std::vector<std::array<int, 3>> next;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) next.push_back(faces[f]);
    }
    for (const auto& [a, b] : visible_edges) {
      if (!visible_edges.contains({b, a})) next.push_back({a, b, p});
    }
    faces = std::move(next);
  }
  return faces;
}

BaseMesh conforming_sphere_mesh(const std::vector<Arc>& arcs) {
  constexpr double kMaxSegment = std::numbers::pi / 6.0;

  std::vector<std::vector<double>> params(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const double len = arcs[i].length();
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / kMaxSegment)));
    for (int k = 0; k <= pieces; ++k) params[i].push_back(len * k / pieces);
  }

  for (int attempt = 0; attempt < 40; ++attempt) {
    BaseMesh mesh;
    auto add_point = [&](const Vec3& p) {
      for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        if ((mesh.vertices[i] - p).norm() < 1e-10) return static_cast<int>(i);
      }
      mesh.vertices.push_back(p.normalized());
      return static_cast<int>(mesh.vertices.size()) - 1;
    };

    std::vector<std::vector<int>> arc_vertices(arcs.size());
    double min_segment = kMaxSegment;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      for (std::size_t k = 0; k < params[i].size(); ++k) {
        const Vec3 p = (k == 0) ? arcs[i].a
                       : (k + 1 == params[i].size()) ? arcs[i].b
                                                     : arcs[i].point(params[i][k]);
        arc_vertices[i].push_back(add_point(p));
        if (k > 0) min_segment = std::min(min_segment, params[i][k] - params[i][k - 1]);
      }
    }
    for (const Vec3& p : icosahedron_points(1)) {
      bool near = false;
      for (const Arc& arc : arcs) {
        if (distance_to_arc(p, arc) < 0.6 * std::max(min_segment, 0.25)) near = true;
      }
      for (const Vec3& q : mesh.vertices) {
        if ((p - q).norm() < 0.2) near = true;
      }
      if (!near) add_point(p);
    }

    mesh.triangles = sphere_convex_hull(mesh.vertices);
    std::set<std::pair<int, int>> edges;
    for (const auto& t : mesh.triangles) {
      for (int k = 0; k < 3; ++k) edges.insert(std::minmax(t[k], t[(k + 1) % 3]));
    }

    bool complete = true;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      std::vector<double> refined;
      for (std::size_t k = 0; k + 1 < arc_vertices[i].size(); ++k) {
        refined.push_back(params[i][k]);
        const auto key = std::minmax(arc_vertices[i][k], arc_vertices[i][k + 1]);
        if (edges.contains(key)) {
          mesh.arc_edges.emplace_back(key.first, key.second);
          mesh.arc_crack.push_back(arcs[i].crack);
        } else {
          complete = false;
          refined.push_back(0.5 * (params[i][k] + params[i][k + 1]));
        }
      }
      refined.push_back(params[i].back());
      params[i] = std::move(refined);
    }
    if (complete) {
      const std::size_t v = mesh.vertices.size();
      const std::size_t f = mesh.triangles.size();
      require(2 * v == f + 4, ErrorCode::InvalidCone,
              "custom trace produced a non-spherical triangulation");
      return mesh;
    }
  }
  fail(ErrorCode::InvalidCone, "could not recover every arc as mesh edges");
}

}  // namespace cone_spectra::detail
