#pragma once

#include <cstdint>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "cone_spectra/crack_mesh.hpp"

namespace cone_spectra {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct AssemblyOptions {
  bool lumped_mass = false;
};

/// P1 stiffness and mass on flat elements with vertices on the sphere.
/// Neumann conditions are natural, so there are no boundary terms.
struct OperatorPair {
  SparseMatrix stiffness;
  SparseMatrix mass;
  std::uint64_t mesh_ref = 0;

  Eigen::Index dimension() const { return stiffness.rows(); }
};

OperatorPair assemble(const CrackMesh& mesh, const AssemblyOptions& options = {});

/// nodalᵀ K nodal.
double energy(const OperatorPair& pair, const Eigen::VectorXd& nodal);

}  // namespace cone_spectra
