#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cone_spectra/cone_geometry.hpp"
#include "cone_spectra/crack_mesh.hpp"
#include "cone_spectra/decomposition.hpp"
#include "cone_spectra/eigensolver.hpp"
#include "cone_spectra/harmonic_measure.hpp"
#include "cone_spectra/laplace_beltrami.hpp"
#include "cone_spectra/screening.hpp"

namespace cone_spectra {

using Json = nlohmann::json;

Json to_json(const ConeSpec& spec);
/// Accepts {dim, preset, omega?, arcs?}; arcs are required for Custom.
ConeSpec cone_from_json(const Json& j);

Json to_json(const Spectrum& spectrum);
Json to_json(const ExtrapolatedValue& value);
Json to_json(const ConeSpectrum& spectrum);
Json to_json(const Decomposition& dec);
Json to_json(const ScreeningVerdict& verdict);
Json to_json(const CertificateReport& report);
Json to_json(const QualityReport& report);
Json to_json(const std::vector<ModeReport>& modes);

/// CSV with the versioned header comment and fixed column order.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
Json sweep_to_json(const std::vector<SweepRow>& rows);

/// OFF text (vertices, faces) plus {seam_map, tip_vertices} as JSON.
void write_off(std::ostream& out, const CrackMesh& mesh);
Json mesh_sidecar(const CrackMesh& mesh);

void write_matrix_market(std::ostream& out, const SparseMatrix& matrix);

/// Little-endian float64 column-major eigenvectors preceded by one line of
/// JSON {rows, cols, dtype, order} terminated by '\n'.
void write_eigenvectors(std::ostream& out, const Eigen::MatrixXd& vectors);
Eigen::MatrixXd read_eigenvectors(std::istream& in);

/// On-disk memo of per-level eigenvalues keyed by a canonical string.
class SpectrumCache {
 public:
  explicit SpectrumCache(std::filesystem::path dir);

  std::optional<Json> load(const std::string& key) const;
  void store(const std::string& key, const Json& value) const;

 private:
  std::filesystem::path file_for(const std::string& key) const;
  std::filesystem::path dir_;
};

}  // namespace cone_spectra
