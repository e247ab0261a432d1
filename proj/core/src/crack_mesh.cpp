#include "cone_spectra/crack_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "cone_spectra/error.hpp"
#include "sphere_hull.hpp"

namespace cone_spectra {

namespace {

using detail::BaseMesh;
using Tri = std::array<int, 3>;

constexpr double kPi = std::numbers::pi;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void unite(std::vector<int>& parent, int a, int b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

bool point_on_arc(const Vec3& p, const Arc& arc) {
  if (std::abs(p.dot(arc.normal)) > 1e-9) return false;
  const Vec3 tangent = arc.normal.cross(arc.a);
  double t = std::atan2(p.dot(tangent), p.dot(arc.a));
  if (t < -1e-9) t += 2.0 * kPi;
  return t <= arc.length() + 1e-9;
}

/// Marks base edges that lie on trace arcs.
void flag_arc_edges(BaseMesh& mesh, const std::vector<Arc>& arcs) {
  std::map<std::pair<int, int>, bool> seen;
  for (const Tri& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const auto key = std::minmax(t[k], t[(k + 1) % 3]);
      if (seen.contains(key)) continue;
      seen[key] = true;
      const Vec3& a = mesh.vertices[key.first];
      const Vec3& b = mesh.vertices[key.second];
      const Vec3 mid = (a + b).normalized();
      for (const Arc& arc : arcs) {
        if (point_on_arc(a, arc) && point_on_arc(b, arc) && point_on_arc(mid, arc)) {
          mesh.arc_edges.emplace_back(key.first, key.second);
          mesh.arc_crack.push_back(arc.crack);
          break;
        }
      }
    }
  }
}

BaseMesh icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  BaseMesh mesh;
  mesh.vertices = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                   {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                   {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& v : mesh.vertices) v.normalize();
  mesh.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                    {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                    {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                    {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return mesh;
}

/// Poles plus equator vertices at the given ascending longitudes (one turn).
BaseMesh bipyramid(const std::vector<double>& longitudes) {
  BaseMesh mesh;
  mesh.vertices.push_back(Vec3(0, 0, 1));
  mesh.vertices.push_back(Vec3(0, 0, -1));
  for (double t : longitudes) mesh.vertices.push_back(Vec3(std::cos(t), std::sin(t), 0.0));
  const int n = static_cast<int>(longitudes.size());
  for (int i = 0; i < n; ++i) {
    const int a = 2 + i;
    const int b = 2 + (i + 1) % n;
    mesh.triangles.push_back({0, a, b});
    mesh.triangles.push_back({1, b, a});
  }
  return mesh;
}

/// Cube split along the face diagonals joining the tetrahedral vertices, so
/// the six tetrahedral edges are mesh edges.
BaseMesh tetrahedral_cube(const std::vector<Arc>& arcs) {
  std::vector<Vec3> tet;
  for (const Arc& arc : arcs) {
    for (const Vec3& p : {arc.a, arc.b}) {
      if (std::none_of(tet.begin(), tet.end(), [&](const Vec3& q) { return (p - q).norm() < 1e-9; })) {
        tet.push_back(p);
      }
    }
  }
  BaseMesh mesh;
  for (const Vec3& p : tet) mesh.vertices.push_back(p);
  for (const Vec3& p : tet) mesh.vertices.push_back(-p);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        if (k == i || k == j) continue;
        Tri t = {i, j, 4 + k};
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3& b = mesh.vertices[t[1]];
        const Vec3& c = mesh.vertices[t[2]];
        if ((b - a).cross(c - a).dot(a + b + c) < 0.0) std::swap(t[1], t[2]);
        mesh.triangles.push_back(t);
      }
    }
  }
  return mesh;
}

std::vector<double> split_range(double from, double to, int pieces) {
  std::vector<double> out;
  for (int k = 0; k < pieces; ++k) out.push_back(from + (to - from) * k / pieces);
  return out;
}

int quarter_pieces(double width) {
  return std::max(1, static_cast<int>(std::ceil(width / (kPi / 2.0) - 1e-12)));
}

BaseMesh base_mesh(const ConeSpec& spec) {
  BaseMesh mesh;
  switch (spec.preset) {
    case Preset::Empty: mesh = icosahedron(); break;
    case Preset::FullPlane:
    case Preset::HalfPlane: mesh = bipyramid(split_range(0.0, 2.0 * kPi, 4)); break;
    case Preset::Lune: {
      const double w = *spec.omega;
      if (w >= kPi) {
        mesh = bipyramid(split_range(0.0, 2.0 * kPi, 4));
      } else {
        auto inner = split_range(-w, w, quarter_pieces(2.0 * w));
        const auto outer = split_range(w, 2.0 * kPi - w, quarter_pieces(2.0 * kPi - 2.0 * w));
        inner.insert(inner.end(), outer.begin(), outer.end());
        mesh = bipyramid(inner);
      }
      break;
    }
    case Preset::SectorArc: {
      const double w = *spec.omega;
      if (w >= kPi) {
        mesh = bipyramid(split_range(-kPi, kPi, 8));
      } else {
        auto longitudes = split_range(-w, w, 4);
        const auto rest = split_range(w, 2.0 * kPi - w, 4);
        longitudes.insert(longitudes.end(), rest.begin(), rest.end());
        mesh = bipyramid(longitudes);
      }
      break;
    }
    case Preset::Y: mesh = bipyramid(split_range(0.0, 2.0 * kPi, 6)); break;
    case Preset::T: mesh = tetrahedral_cube(spec.arcs); break;
    case Preset::Custom: return detail::conforming_sphere_mesh(spec.arcs);
  }
  flag_arc_edges(mesh, spec.arcs);
  return mesh;
}

bool in_spherical_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  return a.cross(b).dot(p) >= 0.0 && b.cross(c).dot(p) >= 0.0 && c.cross(a).dot(p) >= 0.0;
}

/// Keeps the base triangles reachable from the seed without crossing an arc.
void keep_region(BaseMesh& mesh, const Vec3& seed) {
  std::unordered_map<std::uint64_t, bool> arc;
  for (const auto& [a, b] : mesh.arc_edges) arc[edge_key(a, b)] = true;
  std::unordered_map<std::uint64_t, std::vector<int>> edge_tris;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    for (int k = 0; k < 3; ++k) {
      edge_tris[edge_key(mesh.triangles[t][k], mesh.triangles[t][(k + 1) % 3])].push_back(t);
    }
  }
  int start = -1;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()) && start < 0; ++t) {
    const Tri& tri = mesh.triangles[t];
    if (in_spherical_triangle(seed, mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                              mesh.vertices[tri[2]])) {
      start = t;
    }
  }
  require(start >= 0, ErrorCode::InvalidCone, "region seed lies outside the base mesh");
  std::vector<char> keep(mesh.triangles.size(), 0);
  std::vector<int> stack = {start};
  keep[start] = 1;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int k = 0; k < 3; ++k) {
      const auto key = edge_key(mesh.triangles[t][k], mesh.triangles[t][(k + 1) % 3]);
      if (arc.contains(key)) continue;
      for (int u : edge_tris[key]) {
        if (!keep[u]) keep[u] = 1, stack.push_back(u);
      }
    }
  }
  std::vector<Tri> kept;
  for (std::size_t t = 0; t < keep.size(); ++t) {
    if (keep[t]) kept.push_back(mesh.triangles[t]);
  }
  mesh.triangles = std::move(kept);
}

class Refiner {
 public:
  Refiner(const BaseMesh& base, std::size_t cap) : vertices_(base.vertices), cap_(cap) {
    for (std::size_t i = 0; i < base.arc_edges.size(); ++i) {
      arc_[edge_key(base.arc_edges[i].first, base.arc_edges[i].second)] = base.arc_crack[i];
    }
    for (const Tri& t : base.triangles) leaves_.push_back({t, 0});
  }

  void refine_uniform() { refine(std::vector<char>(leaves_.size(), 1)); }

  /// One grading step: refine leaves below `max_level` with a vertex inside
  /// any cap, then restore 1-irregularity.
  void refine_near(const std::vector<Vec3>& centers, double radius, int max_level) {
    const double cos_r = std::cos(radius);
    std::vector<char> marks(leaves_.size(), 0);
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      if (leaves_[i].level >= max_level) continue;
      for (int v : leaves_[i].v) {
        for (const Vec3& c : centers) {
          if (vertices_[v].dot(c) > cos_r) marks[i] = 1;
        }
      }
    }
    refine(marks);
    close();
  }

  void close() {
    for (;;) {
      std::vector<char> marks(leaves_.size(), 0);
      bool any = false;
      for (std::size_t i = 0; i < leaves_.size(); ++i) {
        const Tri& t = leaves_[i].v;
        int hanging = 0;
        bool irregular = false;
        for (int k = 0; k < 3; ++k) {
          const int a = t[k];
          const int b = t[(k + 1) % 3];
          const int m = find_mid(a, b);
          if (m < 0) continue;
          ++hanging;
          if (find_mid(a, m) >= 0 || find_mid(m, b) >= 0) irregular = true;
        }
        if (hanging >= 2 || irregular) marks[i] = 1, any = true;
      }
      if (!any) return;
      refine(marks);
    }
  }

  /// Leaves with a single hanging node are bisected toward it.
  std::vector<Tri> conforming() const {
    std::vector<Tri> out;
    out.reserve(leaves_.size() * 5 / 4);
    for (const Leaf& leaf : leaves_) {
      const Tri& t = leaf.v;
      int split = -1;
      int m = -1;
      for (int k = 0; k < 3 && split < 0; ++k) {
        m = find_mid(t[k], t[(k + 1) % 3]);
        if (m >= 0) split = k;
      }
      if (split < 0) {
        out.push_back(t);
      } else {
        const int a = t[split];
        const int b = t[(split + 1) % 3];
        const int c = t[(split + 2) % 3];
        out.push_back({a, m, c});
        out.push_back({m, b, c});
      }
    }
    return out;
  }

  bool is_arc(int a, int b) const { return arc_.contains(edge_key(a, b)); }
  std::vector<Vec3>& vertices() { return vertices_; }

 private:
  struct Leaf {
    Tri v;
    int level;
  };

  int find_mid(int a, int b) const {
    const auto it = mid_.find(edge_key(a, b));
    return it == mid_.end() ? -1 : it->second;
  }

  int midpoint(int a, int b) {
    const auto key = edge_key(a, b);
    const auto it = mid_.find(key);
    if (it != mid_.end()) return it->second;
    if (vertices_.size() >= cap_) {
      fail(ErrorCode::MeshBudgetExceeded,
           "mesh exceeds the vertex cap of " + std::to_string(cap_));
    }
    vertices_.push_back((vertices_[a] + vertices_[b]).normalized());
    const int m = static_cast<int>(vertices_.size()) - 1;
    mid_.emplace(key, m);
    const auto arc = arc_.find(key);
    if (arc != arc_.end()) {
      const bool crack = arc->second;
      arc_[edge_key(a, m)] = crack;
      arc_[edge_key(m, b)] = crack;
    }
    return m;
  }

  void refine(const std::vector<char>& marks) {
    std::vector<Leaf> next;
    next.reserve(leaves_.size() + 3 * static_cast<std::size_t>(
                                          std::count(marks.begin(), marks.end(), 1)));
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      const Leaf& leaf = leaves_[i];
      if (!marks[i]) {
        next.push_back(leaf);
        continue;
      }
      const Tri& t = leaf.v;
      const int ab = midpoint(t[0], t[1]);
      const int bc = midpoint(t[1], t[2]);
      const int ca = midpoint(t[2], t[0]);
      const int level = leaf.level + 1;
      next.push_back({{t[0], ab, ca}, level});
      next.push_back({{ab, t[1], bc}, level});
      next.push_back({{ca, bc, t[2]}, level});
      next.push_back({{ab, bc, ca}, level});
    }
    leaves_ = std::move(next);
  }

  std::vector<Vec3> vertices_;
  std::size_t cap_;
  std::vector<Leaf> leaves_;
  std::unordered_map<std::uint64_t, int> mid_;
  std::unordered_map<std::uint64_t, bool> arc_;
};

std::uint64_t fingerprint(const CrackMesh& mesh) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  mix(&mesh.ambient_dim, sizeof(int));
  for (const Vec3& v : mesh.vertices) mix(v.data(), 3 * sizeof(double));
  for (const Tri& t : mesh.triangles) mix(t.data(), sizeof(Tri));
  for (const auto& s : mesh.segments) mix(s.data(), sizeof(s));
  return h;
}

void label_components(CrackMesh& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const Tri& t : mesh.triangles) {
    unite(parent, t[0], t[1]);
    unite(parent, t[1], t[2]);
  }
  for (const auto& s : mesh.segments) unite(parent, s[0], s[1]);
  mesh.vertex_component.assign(n, -1);
  std::unordered_map<int, int> ids;
  for (int v = 0; v < n; ++v) {
    const int root = find_root(parent, v);
    auto [it, inserted] = ids.emplace(root, static_cast<int>(ids.size()));
    mesh.vertex_component[v] = it->second;
  }
  mesh.component_count = static_cast<int>(ids.size());
}

CrackMesh build_circle_mesh(const ConeSpec& spec, int level, const MeshOptions& options) {
  CrackMesh mesh;
  mesh.ambient_dim = 2;
  mesh.refinement_level = level;
  const int scale = 1 << level;

  std::vector<double> cuts;
  for (const Arc& arc : spec.arcs) {
    double t = std::atan2(arc.a.y(), arc.a.x());
    if (t < 0.0) t += 2.0 * kPi;
    if (std::none_of(cuts.begin(), cuts.end(), [&](double c) { return std::abs(c - t) < 1e-12; })) {
      cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());

  auto point = [](double t) { return Vec3(std::cos(t), std::sin(t), 0.0); };
  double base_edge = 0.0;

  if (cuts.empty()) {
    const int pieces = 8 * scale;
    require(static_cast<std::size_t>(pieces) <= options.vertex_cap,
            ErrorCode::MeshBudgetExceeded, "mesh exceeds the vertex cap");
    for (int k = 0; k < pieces; ++k) mesh.vertices.push_back(point(2.0 * kPi * k / pieces));
    for (int k = 0; k < pieces; ++k) mesh.segments.push_back({k, (k + 1) % pieces});
    base_edge = 2.0 * std::sin(kPi / 8.0);
  } else {
    struct Gap {
      double from, to;
    };
    std::vector<Gap> gaps;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double from = cuts[i];
      const double to = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts[0] + 2.0 * kPi;
      gaps.push_back({from, to});
    }
    if (is_region_preset(spec)) {
      // Keep the gap that contains angle 0 (mod 2π).
      std::vector<Gap> kept;
      for (const Gap& g : gaps) {
        if ((g.from < 0.0 && g.to > 0.0) || (g.from < 2.0 * kPi && g.to > 2.0 * kPi)) {
          kept.push_back(g);
        }
      }
      gaps = kept;
    }
    std::vector<int> first_vertex;
    std::vector<int> last_vertex;
    for (const Gap& g : gaps) {
      const double width = g.to - g.from;
      require(width >= options.min_edge_length, ErrorCode::DegenerateArc,
              "trace points closer than the minimal edge length");
      const int base_pieces = std::max(1, static_cast<int>(std::ceil(width / (kPi / 4.0) - 1e-12)));
      base_edge = std::max(base_edge, 2.0 * std::sin(width / base_pieces / 2.0));
      const int pieces = base_pieces * scale;
      require(mesh.vertices.size() + pieces + 1 <= options.vertex_cap,
              ErrorCode::MeshBudgetExceeded, "mesh exceeds the vertex cap");
      const int start = static_cast<int>(mesh.vertices.size());
      for (int k = 0; k <= pieces; ++k) {
        mesh.vertices.push_back(point(g.from + width * k / pieces));
      }
      for (int k = 0; k < pieces; ++k) mesh.segments.push_back({start + k, start + k + 1});
      first_vertex.push_back(start);
      last_vertex.push_back(start + pieces);
    }
    const std::size_t n = gaps.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t next = (i + 1) % n;
      if (std::abs(gaps[i].to - gaps[next].from) < 1e-12 ||
          std::abs(gaps[i].to - gaps[next].from - 2.0 * kPi) < 1e-12) {
        mesh.seam_map.emplace_back(last_vertex[i], first_vertex[next]);
      }
    }
  }
  mesh.base_edge_length = base_edge;
  label_components(mesh);
  mesh.id = fingerprint(mesh);
  return mesh;
}

}  // namespace

double CrackMesh::mesh_size() const {
  return base_edge_length / static_cast<double>(1 << refinement_level);
}

CrackMesh build_mesh(const ConeSpec& spec, int refinement_level, int grading_depth,
                     const MeshOptions& options) {
  require(refinement_level >= 0 && refinement_level <= 9, ErrorCode::InvalidArgument,
          "refinement level must lie in [0, 9]");
  require(grading_depth >= 0 && grading_depth <= 12, ErrorCode::InvalidArgument,
          "grading depth must lie in [0, 12]");
  if (spec.ambient_dim == 2) return build_circle_mesh(spec, refinement_level, options);
  require(spec.ambient_dim == 3, ErrorCode::UnsupportedDimension,
          "meshes exist only for N = 2 and N = 3");

  for (const Arc& arc : spec.arcs) {
    require(arc.length() >= options.min_edge_length, ErrorCode::DegenerateArc,
            "arc shorter than the minimal edge length");
  }

  BaseMesh base = base_mesh(spec);
  double base_edge = 0.0;
  for (const Tri& t : base.triangles) {
    for (int k = 0; k < 3; ++k) {
      const double len = (base.vertices[t[k]] - base.vertices[t[(k + 1) % 3]]).norm();
      require(len >= options.min_edge_length, ErrorCode::DegenerateArc,
              "base mesh edge shorter than the minimal edge length");
      base_edge = std::max(base_edge, len);
    }
  }
  if (is_region_preset(spec)) keep_region(base, region_seed(spec));

  std::vector<Vec3> tips = crack_tips(spec);
  std::vector<Vec3> centers = tips;
  if (options.grade_reentrant_corners && is_region_preset(spec) && *spec.omega > kPi / 2.0) {
    centers.push_back(Vec3(0, 0, 1));
    centers.push_back(Vec3(0, 0, -1));
  }

  Refiner refiner(base, options.vertex_cap);
  for (int l = 0; l < refinement_level; ++l) refiner.refine_uniform();
  if (!centers.empty()) {
    for (int d = 1; d <= grading_depth; ++d) {
      refiner.refine_near(centers, options.grading_radius * std::ldexp(1.0, -(d - 1)),
                          refinement_level + d);
    }
  }

  CrackMesh mesh;
  mesh.ambient_dim = 3;
  mesh.refinement_level = refinement_level;
  mesh.grading_depth = grading_depth;
  mesh.base_edge_length = base_edge;
  mesh.triangles = refiner.conforming();
  std::vector<Vec3> vertices = std::move(refiner.vertices());

  // Split every vertex into wedges of triangles connected across non-arc edges.
  const int original = static_cast<int>(vertices.size());
  std::vector<std::vector<int>> incident(original);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    for (int v : mesh.triangles[t]) incident[v].push_back(t);
  }
  for (int v = 0; v < original; ++v) {
    const auto& tris = incident[v];
    if (tris.size() < 2) continue;
    std::vector<int> parent(tris.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::unordered_map<int, int> across;
    for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
      for (int w : mesh.triangles[tris[i]]) {
        if (w == v || refiner.is_arc(v, w)) continue;
        auto [it, inserted] = across.emplace(w, i);
        if (!inserted) unite(parent, it->second, i);
      }
    }
    std::map<int, int> copy_of_root;
    for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
      const int root = find_root(parent, i);
      if (root == 0) continue;
      auto it = copy_of_root.find(root);
      if (it == copy_of_root.end()) {
        vertices.push_back(vertices[v]);
        const int copy = static_cast<int>(vertices.size()) - 1;
        mesh.seam_map.emplace_back(v, copy);
        it = copy_of_root.emplace(root, copy).first;
      }
      for (int& u : mesh.triangles[tris[i]]) {
        if (u == v) u = it->second;
      }
    }
  }

  // Drop vertices that belong only to discarded regions.
  std::vector<int> remap(vertices.size(), -1);
  for (const Tri& t : mesh.triangles) {
    for (int v : t) remap[v] = 0;
  }
  int next = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (remap[v] == 0) {
      remap[v] = next++;
      mesh.vertices.push_back(vertices[v]);
    }
  }
  for (Tri& t : mesh.triangles) {
    for (int& v : t) v = remap[v];
  }
  std::vector<std::pair<int, int>> seams;
  for (const auto& [a, b] : mesh.seam_map) {
    if (remap[a] >= 0 && remap[b] >= 0) seams.emplace_back(remap[a], remap[b]);
  }
  mesh.seam_map = std::move(seams);

  for (const Vec3& tip : tips) {
    for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) {
      if ((mesh.vertices[v] - tip).norm() < 1e-9) mesh.tip_vertices.push_back(v);
    }
  }

  label_components(mesh);
  mesh.id = fingerprint(mesh);
  return mesh;
}

QualityReport mesh_quality(const CrackMesh& mesh) {
  QualityReport report;
  if (mesh.ambient_dim == 2) {
    report.min_angle = kPi;
    report.max_aspect_ratio = 1.0;
    for (const auto& s : mesh.segments) {
      report.total_area += (mesh.vertices[s[0]] - mesh.vertices[s[1]]).norm();
    }
    return report;
  }
  report.min_angle = kPi;
  for (const Tri& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    const double area = 0.5 * (b - a).cross(c - a).norm();
    report.total_area += area;
    const std::array<Vec3, 3> p = {a, b, c};
    double longest = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vec3 e1 = p[(k + 1) % 3] - p[k];
      const Vec3 e2 = p[(k + 2) % 3] - p[k];
      const double angle = std::atan2(e1.cross(e2).norm(), e1.dot(e2));
      report.min_angle = std::min(report.min_angle, angle);
      longest = std::max(longest, e1.norm());
    }
    const double aspect = area > 0.0 ? longest * longest * std::sqrt(3.0) / (4.0 * area)
                                     : std::numeric_limits<double>::infinity();
    report.max_aspect_ratio = std::max(report.max_aspect_ratio, aspect);
  }
  return report;
}

CrackMesh extract_component(const CrackMesh& mesh, int component, std::vector<int>* vertex_map) {
  require(component >= 0 && component < mesh.component_count, ErrorCode::InvalidArgument,
          "component index out of range");
  CrackMesh sub;
  sub.ambient_dim = mesh.ambient_dim;
  sub.refinement_level = mesh.refinement_level;
  sub.grading_depth = mesh.grading_depth;
  sub.base_edge_length = mesh.base_edge_length;
  std::vector<int> local(mesh.vertices.size(), -1);
  std::vector<int> parent_of;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (mesh.vertex_component[v] == component) {
      local[v] = static_cast<int>(sub.vertices.size());
      sub.vertices.push_back(mesh.vertices[v]);
      parent_of.push_back(static_cast<int>(v));
    }
  }
  for (const Tri& t : mesh.triangles) {
    if (local[t[0]] >= 0) sub.triangles.push_back({local[t[0]], local[t[1]], local[t[2]]});
  }
  for (const auto& s : mesh.segments) {
    if (local[s[0]] >= 0) sub.segments.push_back({local[s[0]], local[s[1]]});
  }
  for (const auto& [a, b] : mesh.seam_map) {
    if (local[a] >= 0 && local[b] >= 0) sub.seam_map.emplace_back(local[a], local[b]);
  }
  for (int v : mesh.tip_vertices) {
    if (local[v] >= 0) sub.tip_vertices.push_back(local[v]);
  }
  label_components(sub);
  sub.id = fingerprint(sub);
  if (vertex_map) *vertex_map = std::move(parent_of);
  return sub;
}

std::vector<Vec3> vertex_side_directions(const CrackMesh& mesh) {
  std::vector<Vec3> side(mesh.vertices.size(), Vec3::Zero());
  if (mesh.ambient_dim == 2) {
    for (const auto& s : mesh.segments) {
      side[s[0]] += mesh.vertices[s[1]] - mesh.vertices[s[0]];
      side[s[1]] += mesh.vertices[s[0]] - mesh.vertices[s[1]];
    }
  } else {
    for (const Tri& t : mesh.triangles) {
      const Vec3 centroid = (mesh.vertices[t[0]] + mesh.vertices[t[1]] + mesh.vertices[t[2]]) / 3.0;
      for (int v : t) side[v] += centroid - mesh.vertices[v];
    }
  }
  for (std::size_t v = 0; v < side.size(); ++v) {
    const Vec3& p = mesh.vertices[v];
    side[v] -= side[v].dot(p) * p;
    if (side[v].norm() > 0.0) side[v].normalize();
  }
  return side;
}

std::vector<int> reflection_map(const CrackMesh& mesh, const Vec3& plane_normal) {
  const Vec3 n = plane_normal.normalized();
  auto reflect = [&](const Vec3& p) -> Vec3 { return p - 2.0 * p.dot(n) * n; };
  constexpr double kScale = 1e8;
  using Key = std::array<long long, 3>;
  auto key_of = [&](const Vec3& p) {
    return Key{std::llround(p.x() * kScale), std::llround(p.y() * kScale),
               std::llround(p.z() * kScale)};
  };
  std::map<Key, std::vector<int>> buckets;
  for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) {
    buckets[key_of(mesh.vertices[v])].push_back(v);
  }
  const std::vector<Vec3> side = vertex_side_directions(mesh);
  std::vector<int> map(mesh.vertices.size(), -1);
  for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) {
    const Vec3 target = reflect(mesh.vertices[v]);
    const Key k = key_of(target);
    std::vector<int> candidates;
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        for (long long dz = -1; dz <= 1; ++dz) {
          const auto it = buckets.find(Key{k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == buckets.end()) continue;
          for (int c : it->second) {
            if ((mesh.vertices[c] - target).norm() < 1e-9) candidates.push_back(c);
          }
        }
      }
    }
    require(!candidates.empty(), ErrorCode::InvalidArgument, "mesh is not mirror symmetric");
    int best = candidates.front();
    double best_score = -2.0;
    const Vec3 mirrored_side = reflect(side[v]);
    for (int c : candidates) {
      const double score = side[c].dot(mirrored_side);
      if (score > best_score) best_score = score, best = c;
    }
    map[v] = best;
  }
  return map;
}

}  // namespace cone_spectra
