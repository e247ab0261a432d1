#pragma once

#include <string>
#include <vector>

#include "cone_spectra/closed_forms.hpp"
#include "cone_spectra/cone_geometry.hpp"
#include "cone_spectra/crack_mesh.hpp"
#include "cone_spectra/eigensolver.hpp"
#include "cone_spectra/laplace_beltrami.hpp"

namespace cone_spectra {

struct ModeReport {
  double lambda = 0.0;
  double alpha = 0.0;
  bool admissible = false;
};

/// Growth-bound filter: a mode survives only when its gradient energy on B_R
/// grows like R^{N−1}, i.e. α = 0 or α = 1/2 (within tol).
std::vector<ModeReport> filter_modes(const std::vector<double>& lambdas, int N, double tol = 5e-3);

struct PipelineOptions {
  std::vector<int> levels = {3, 4, 5};
  int grading = 0;
  int k = 6;
  MeshOptions mesh;
  AssemblyOptions assembly;
  SolverOptions solver;
  /// Floor of the tolerance band around the critical eigenvalue.
  double hit_floor = 5e-3;
  /// Directory memoizing per-level eigenvalues on disk; empty disables it.
  std::string cache_dir;
};

struct LevelSpectrum {
  int level = 0;
  double h = 0.0;
  int vertex_count = 0;
  std::vector<double> eigenvalues;
};

struct ComponentSpectrum {
  int component = 0;
  std::vector<LevelSpectrum> levels;
  /// One per eigenvalue index; zero modes are stationary.
  std::vector<ExtrapolatedValue> extrapolated;
  /// Index whose level sequence could not be fitted (kept at the finest value).
  std::vector<bool> fit_failed;
  int zero_multiplicity = 0;
  std::vector<std::vector<int>> clusters;  // of the extrapolated values
};

struct ConeSpectrum {
  ConeSpec cone;
  std::vector<ComponentSpectrum> components;
};

/// Mesh, assemble and solve every level, per connected component, then
/// extrapolate each eigenvalue index.
ConeSpectrum compute_spectrum(const ConeSpec& cone, const PipelineOptions& options);

enum class Verdict { OnlyLocallyConstant, HalfHomogeneousCandidate };
std::string_view to_string(Verdict verdict) noexcept;

struct CriticalHit {
  int component = 0;
  int index = 0;
  double lambda = 0.0;
  double tolerance = 0.0;
};

struct ScreeningVerdict {
  ConeSpec cone;
  double critical_lambda = 0.75;
  bool spectrum_hit = false;
  std::vector<CriticalHit> hits;
  ConeSpectrum certificate;
  Verdict verdict = Verdict::OnlyLocallyConstant;
};

/// Tolerance band used to decide λ = (2N−3)/4 for an extrapolated value.
double hit_tolerance(const ExtrapolatedValue& value, double floor);

ScreeningVerdict screen_cone(const ConeSpec& cone, const PipelineOptions& options);

struct SweepRow {
  double omega = 0.0;
  double lambda = 0.0;  // extrapolated
  double order = 0.0;
  double error_estimate = 0.0;
  double oracle = 0.0;
  double asymptote_residual = 0.0;
  bool hit = false;
};

/// SectorArc(ω) for each ω: first positive eigenvalue, compared with the
/// first-order model 3/4 + (2/π) cos ω.
std::vector<SweepRow> sector_sweep(const std::vector<double>& omegas, const PipelineOptions& options);

/// Lune(ω) for each ω: first positive eigenvalue against min(2, λ_ω).
std::vector<SweepRow> wing_sweep(const std::vector<double>& omegas, const PipelineOptions& options);

struct CertificateReport {
  ExtrapolatedValue lambda1;
  int cluster_size = 0;
  /// M-weighted correlation of the finest λ₁ eigenvector with the trace of
  /// √(2/π) r^{1/2} sin(θ/2).
  double correlation = 0.0;
  /// ⟨x, Sx⟩_M / ⟨x, x⟩_M for the mirror S through the crack plane.
  double reflection_symmetry = 0.0;
  int finest_vertex_count = 0;
};

CertificateReport cracktip_certificate(const PipelineOptions& options);

/// Nodal trace of the cracktip function on a HalfPlane mesh, with seam copies
/// taking the θ = ±π value of their own side.
Eigen::VectorXd cracktip_trace(const CrackMesh& mesh);

}  // namespace cone_spectra
