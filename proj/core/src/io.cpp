#include "cone_spectra/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cone_spectra/error.hpp"

namespace cone_spectra {

namespace {

Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const Json& j) {
  require(j.is_array() && j.size() == 3, ErrorCode::InvalidCone, "expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Json to_json(const ConeSpec& spec) {
  Json j = {{"dim", spec.ambient_dim}, {"preset", std::string(to_string(spec.preset))}};
  if (spec.omega) j["omega"] = *spec.omega;
  Json arcs = Json::array();
  for (const Arc& arc : spec.arcs) {
    arcs.push_back({{"a", vec_json(arc.a)}, {"b", vec_json(arc.b)},
                    {"normal", vec_json(arc.normal)}, {"crack", arc.crack}});
  }
  j["arcs"] = arcs;
  return j;
}

ConeSpec cone_from_json(const Json& j) {
  try {
    const int dim = j.value("dim", 3);
    const Preset preset = parse_preset(j.at("preset").get<std::string>());
    if (preset != Preset::Custom) {
      std::optional<double> omega;
      if (j.contains("omega") && !j["omega"].is_null()) omega = j["omega"].get<double>();
      return make_cone(preset, dim, omega);
    }
    std::vector<Arc> arcs;
    for (const Json& a : j.at("arcs")) {
      const Vec3 pa = vec_from(a.at("a"));
      const Vec3 pb = vec_from(a.at("b"));
      require(a.contains("crack"), ErrorCode::InvalidCone, "custom arcs need an explicit crack flag");
      const bool crack = a.at("crack").get<bool>();
      if (dim == 2) {
        arcs.push_back(Arc{pa, pb, Vec3(0, 0, 1), crack});
      } else {
        std::optional<Vec3> normal;
        if (a.contains("normal")) normal = vec_from(a["normal"]);
        arcs.push_back(make_arc(pa, pb, crack, normal));
      }
    }
    return make_custom_cone(dim, std::move(arcs));
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidCone, std::string("malformed cone JSON: ") + e.what());
  }
}

Json to_json(const Spectrum& spectrum) {
  return {{"eigenvalues", spectrum.eigenvalues},
          {"zero_multiplicity", spectrum.zero_multiplicity},
          {"clusters", spectrum.clusters},
          {"residuals", spectrum.residuals}};
}

Json to_json(const ExtrapolatedValue& value) {
  Json levels = Json::array();
  for (const auto& [h, l] : value.levels) levels.push_back({{"h", h}, {"lambda", l}});
  return {{"levels", levels},
          {"extrapolated", value.extrapolated},
          {"observed_order", value.observed_order},
          {"error_estimate", value.error_estimate},
          {"stationary", value.stationary}};
}

Json to_json(const ConeSpectrum& spectrum) {
  Json comps = Json::array();
  for (const ComponentSpectrum& c : spectrum.components) {
    Json levels = Json::array();
    for (const LevelSpectrum& l : c.levels) {
      levels.push_back({{"level", l.level}, {"h", l.h}, {"vertices", l.vertex_count},
                        {"eigenvalues", l.eigenvalues}});
    }
    Json ext = Json::array();
    std::vector<double> values;
    for (std::size_t i = 0; i < c.extrapolated.size(); ++i) {
      Json e = to_json(c.extrapolated[i]);
      e.erase("levels");
      e["fit_failed"] = static_cast<bool>(c.fit_failed[i]);
      ext.push_back(e);
      values.push_back(c.extrapolated[i].extrapolated);
    }
    comps.push_back({{"component", c.component},
                     {"eigenvalues", values},
                     {"zero_multiplicity", c.zero_multiplicity},
                     {"clusters", c.clusters},
                     {"extrapolation", ext},
                     {"levels", levels}});
  }
  return {{"cone", to_json(spectrum.cone)}, {"components", comps}};
}

Json to_json(const Decomposition& dec) {
  Json modes = Json::array();
  for (const ModeParams& m : dec.modes) modes.push_back({{"lambda", m.lambda}, {"alpha", m.alpha}});
  return {{"coefficients", dec.coefficients},
          {"modes", modes},
          {"truncation", dec.truncation},
          {"residual_l2", dec.residual_l2}};
}

Json to_json(const ScreeningVerdict& verdict) {
  Json hits = Json::array();
  for (const CriticalHit& h : verdict.hits) {
    hits.push_back({{"component", h.component}, {"index", h.index}, {"lambda", h.lambda},
                    {"tolerance", h.tolerance}});
  }
  return {{"cone", to_json(verdict.cone)},
          {"critical_lambda", verdict.critical_lambda},
          {"spectrum_hit", verdict.spectrum_hit},
          {"hits", hits},
          {"verdict", std::string(to_string(verdict.verdict))},
          {"certificate", to_json(verdict.certificate)}};
}

Json to_json(const CertificateReport& report) {
  return {{"lambda1", to_json(report.lambda1)},
          {"cluster_size", report.cluster_size},
          {"correlation", report.correlation},
          {"reflection_symmetry", report.reflection_symmetry},
          {"finest_vertex_count", report.finest_vertex_count}};
}

Json to_json(const QualityReport& report) {
  return {{"min_angle", report.min_angle},
          {"max_aspect_ratio", report.max_aspect_ratio},
          {"total_area", report.total_area}};
}

Json to_json(const std::vector<ModeReport>& modes) {
  Json out = Json::array();
  for (const ModeReport& m : modes) {
    out.push_back({{"lambda", m.lambda}, {"alpha", m.alpha}, {"admissible", m.admissible}});
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "# cone-spectra v1\n";
  out << "omega,lambda_extrapolated,order,oracle,asymptote_residual,hit_3_4\n";
  out << std::setprecision(12);
  for (const SweepRow& r : rows) {
    out << r.omega << ',' << r.lambda << ',' << r.order << ',' << r.oracle << ','
        << r.asymptote_residual << ',' << (r.hit ? "true" : "false") << '\n';
  }
}

Json sweep_to_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const SweepRow& r : rows) {
    out.push_back({{"omega", r.omega},
                   {"lambda_extrapolated", r.lambda},
                   {"order", r.order},
                   {"error_estimate", r.error_estimate},
                   {"oracle", r.oracle},
                   {"asymptote_residual", r.asymptote_residual},
                   {"hit_3_4", r.hit}});
  }
  return out;
}

void write_off(std::ostream& out, const CrackMesh& mesh) {
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.element_count() << " 0\n";
  out << std::setprecision(17);
  for (const Vec3& v : mesh.vertices) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& s : mesh.segments) out << "2 " << s[0] << ' ' << s[1] << '\n';
}

Json mesh_sidecar(const CrackMesh& mesh) {
  Json seams = Json::array();
  for (const auto& [a, b] : mesh.seam_map) seams.push_back({a, b});
  return {{"seam_map", seams},
          {"tip_vertices", mesh.tip_vertices},
          {"refinement_level", mesh.refinement_level},
          {"grading_depth", mesh.grading_depth},
          {"component_count", mesh.component_count}};
}

void write_matrix_market(std::ostream& out, const SparseMatrix& matrix) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  Eigen::Index nnz = 0;
  for (Eigen::Index c = 0; c < matrix.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(matrix, c); it; ++it) {
      if (it.row() >= it.col()) ++nnz;
    }
  }
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << nnz << '\n';
  out << std::setprecision(17);
  for (Eigen::Index c = 0; c < matrix.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(matrix, c); it; ++it) {
      if (it.row() >= it.col()) out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
}

void write_eigenvectors(std::ostream& out, const Eigen::MatrixXd& vectors) {
  static_assert(std::endian::native == std::endian::little, "binary dump assumes little endian");
  const Json header = {{"rows", vectors.rows()},
                       {"cols", vectors.cols()},
                       {"dtype", "<f8"},
                       {"order", "column-major"}};
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(vectors.data()),
            static_cast<std::streamsize>(sizeof(double) * vectors.size()));
}

Eigen::MatrixXd read_eigenvectors(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::IoFailure, "missing header");
  const Json header = Json::parse(line);
  Eigen::MatrixXd m(header.at("rows").get<Eigen::Index>(), header.at("cols").get<Eigen::Index>());
  in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(sizeof(double) * m.size()));
  require(static_cast<bool>(in), ErrorCode::IoFailure, "truncated eigenvector payload");
  return m;
}

SpectrumCache::SpectrumCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  require(!ec, ErrorCode::IoFailure, "cannot create cache directory " + dir_.string());
}

std::filesystem::path SpectrumCache::file_for(const std::string& key) const {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key) << ".json";
  return dir_ / name.str();
}

std::optional<Json> SpectrumCache::load(const std::string& key) const {
  std::ifstream in(file_for(key));
  if (!in) return std::nullopt;
  try {
    Json j = Json::parse(in);
    if (j.value("key", std::string()) != key) return std::nullopt;
    return j.at("value");
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

void SpectrumCache::store(const std::string& key, const Json& value) const {
  const auto path = file_for(key);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    require(static_cast<bool>(out), ErrorCode::IoFailure, "cannot write cache file " + tmp);
    out << Json{{"key", key}, {"value", value}}.dump();
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cone_spectra
