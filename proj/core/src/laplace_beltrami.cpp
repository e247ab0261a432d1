#include "cone_spectra/laplace_beltrami.hpp"

#include <vector>

#include "cone_spectra/error.hpp"

namespace cone_spectra {

OperatorPair assemble(const CrackMesh& mesh, const AssemblyOptions& options) {
  const auto n = static_cast<Eigen::Index>(mesh.vertices.size());
  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> k_entries;
  std::vector<Triplet> m_entries;

  if (mesh.ambient_dim == 2) {
    k_entries.reserve(4 * mesh.segments.size());
    m_entries.reserve(4 * mesh.segments.size());
    for (const auto& s : mesh.segments) {
      const double len = (mesh.vertices[s[0]] - mesh.vertices[s[1]]).norm();
      require(len > 0.0, ErrorCode::DegenerateTriangle, "zero-length segment");
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          k_entries.emplace_back(s[i], s[j], (i == j ? 1.0 : -1.0) / len);
          if (options.lumped_mass) {
            if (i == j) m_entries.emplace_back(s[i], s[j], len / 2.0);
          } else {
            m_entries.emplace_back(s[i], s[j], len * (i == j ? 2.0 : 1.0) / 6.0);
          }
        }
      }
    }
  } else {
    k_entries.reserve(9 * mesh.triangles.size());
    m_entries.reserve(9 * mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
      const Vec3& p0 = mesh.vertices[t[0]];
      const Vec3& p1 = mesh.vertices[t[1]];
      const Vec3& p2 = mesh.vertices[t[2]];
      // Edge opposite each vertex.
      const std::array<Vec3, 3> e = {p2 - p1, p0 - p2, p1 - p0};
      const double area = 0.5 * e[0].cross(e[1]).norm();
      require(area > 0.0, ErrorCode::DegenerateTriangle, "triangle with zero area");
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          k_entries.emplace_back(t[i], t[j], e[i].dot(e[j]) / (4.0 * area));
          if (options.lumped_mass) {
            if (i == j) m_entries.emplace_back(t[i], t[j], area / 3.0);
          } else {
            m_entries.emplace_back(t[i], t[j], area * (i == j ? 2.0 : 1.0) / 12.0);
          }
        }
      }
    }
  }

  OperatorPair pair;
  pair.stiffness.resize(n, n);
  pair.mass.resize(n, n);
  pair.stiffness.setFromTriplets(k_entries.begin(), k_entries.end());
  pair.mass.setFromTriplets(m_entries.begin(), m_entries.end());
  pair.stiffness.makeCompressed();
  pair.mass.makeCompressed();
  pair.mesh_ref = mesh.id;
  return pair;
}

double energy(const OperatorPair& pair, const Eigen::VectorXd& nodal) {
  require(nodal.size() == pair.dimension(), ErrorCode::DimensionMismatch,
          "nodal vector length does not match the operator dimension");
  return nodal.dot(pair.stiffness * nodal);
}

}  // namespace cone_spectra
