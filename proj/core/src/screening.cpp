#include "cone_spectra/screening.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cone_spectra/error.hpp"
#include "cone_spectra/io.hpp"

namespace cone_spectra {

namespace {

std::string cache_key(const ConeSpec& cone, int level, const PipelineOptions& o) {
  Json key = {{"cone", to_json(cone)},
              {"level", level},
              {"grading", o.grading},
              {"k", o.k},
              {"lumped", o.assembly.lumped_mass},
              {"grading_radius", o.mesh.grading_radius},
              {"reentrant", o.mesh.grade_reentrant_corners},
              {"tolerance", o.solver.tolerance},
              {"version", 1}};
  return key.dump();
}

ExtrapolatedValue extrapolate_index(const std::vector<LevelSpectrum>& levels, int index,
                                    bool& failed) {
  failed = false;
  std::vector<std::pair<double, double>> pts;
  for (const LevelSpectrum& l : levels) pts.emplace_back(l.h, l.eigenvalues[index]);
  const double finest = pts.back().second;
  if (finest < kZeroEigenvalue) {
    ExtrapolatedValue zero;
    zero.levels = pts;
    zero.extrapolated = 0.0;
    zero.stationary = true;
    return zero;
  }
  if (pts.size() >= 3) {
    try {
      return extrapolate(pts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonMonotoneSequence) throw;
      failed = true;
    }
  }
  ExtrapolatedValue raw;
  raw.levels = pts;
  raw.extrapolated = finest;
  raw.error_estimate = pts.size() >= 2 ? std::abs(finest - pts[pts.size() - 2].second) : 0.0;
  return raw;
}

int first_positive_index(const ComponentSpectrum& c) {
  for (std::size_t i = 0; i < c.extrapolated.size(); ++i) {
    if (!(c.extrapolated[i].stationary && c.extrapolated[i].extrapolated == 0.0)) {
      return static_cast<int>(i);
    }
  }
  fail(ErrorCode::AllZero, "no positive eigenvalue among the computed ones; increase k");
}

struct FinestData {
  CrackMesh mesh;
  OperatorPair pair;
  Spectrum spectrum;
};

ConeSpectrum run_pipeline(const ConeSpec& cone, const PipelineOptions& options,
                          FinestData* finest) {
  require(!options.levels.empty(), ErrorCode::InvalidArgument, "at least one level is needed");
  for (std::size_t i = 1; i < options.levels.size(); ++i) {
    require(options.levels[i] > options.levels[i - 1], ErrorCode::InvalidArgument,
            "levels must be strictly increasing");
  }
  require(options.k >= 1, ErrorCode::InvalidArgument, "k must be positive");

  std::optional<SpectrumCache> cache;
  if (!options.cache_dir.empty()) cache.emplace(options.cache_dir);

  ConeSpectrum result;
  result.cone = cone;
  for (std::size_t li = 0; li < options.levels.size(); ++li) {
    const int level = options.levels[li];
    const bool is_finest = li + 1 == options.levels.size();
    const bool need_vectors = is_finest && finest != nullptr;
    const std::string key = cache_key(cone, level, options);

    Json record;
    if (cache && !need_vectors) {
      if (auto hit = cache->load(key)) record = *hit;
    }
    if (record.is_null()) {
      const CrackMesh mesh = build_mesh(cone, level, options.grading, options.mesh);
      record = Json::array();
      for (int c = 0; c < mesh.component_count; ++c) {
        CrackMesh sub = extract_component(mesh, c);
        OperatorPair pair = assemble(sub, options.assembly);
        const int k = static_cast<int>(std::min<Eigen::Index>(options.k, pair.dimension()));
        Spectrum spec = solve(pair, k, options.solver);
        record.push_back({{"h", mesh.mesh_size()},
                          {"vertices", static_cast<int>(sub.vertices.size())},
                          {"eigenvalues", spec.eigenvalues}});
        if (need_vectors && c == 0) {
          finest->mesh = std::move(sub);
          finest->pair = std::move(pair);
          finest->spectrum = std::move(spec);
        }
      }
      if (cache) cache->store(key, record);
    }

    if (result.components.empty()) {
      result.components.resize(record.size());
      for (std::size_t c = 0; c < record.size(); ++c) result.components[c].component = static_cast<int>(c);
    }
    require(result.components.size() == record.size(), ErrorCode::InvalidCone,
            "component count changed between refinement levels");
    for (std::size_t c = 0; c < record.size(); ++c) {
      LevelSpectrum ls;
      ls.level = level;
      ls.h = record[c]["h"].get<double>();
      ls.vertex_count = record[c]["vertices"].get<int>();
      ls.eigenvalues = record[c]["eigenvalues"].get<std::vector<double>>();
      result.components[c].levels.push_back(std::move(ls));
    }
  }

  for (ComponentSpectrum& comp : result.components) {
    std::size_t count = comp.levels.front().eigenvalues.size();
    for (const LevelSpectrum& l : comp.levels) count = std::min(count, l.eigenvalues.size());
    std::vector<double> values;
    for (std::size_t i = 0; i < count; ++i) {
      bool failed = false;
      comp.extrapolated.push_back(extrapolate_index(comp.levels, static_cast<int>(i), failed));
      comp.fit_failed.push_back(failed);
      values.push_back(comp.extrapolated.back().extrapolated);
    }
    comp.zero_multiplicity = static_cast<int>(std::count_if(
        comp.levels.back().eigenvalues.begin(), comp.levels.back().eigenvalues.end(),
        [](double l) { return l < kZeroEigenvalue; }));
    comp.clusters = cluster_eigenvalues(values);
  }
  return result;
}

}  // namespace

std::vector<ModeReport> filter_modes(const std::vector<double>& lambdas, int N, double tol) {
  std::vector<ModeReport> out;
  for (double l : lambdas) {
    require(l > -1e-9, ErrorCode::NegativeLambda, "eigenvalues must be nonnegative");
    ModeReport m;
    m.lambda = std::max(0.0, l);
    m.alpha = alpha_of_lambda(m.lambda, N);
    // The gradient energy on B_R scales as R^{N−1} · R^{2α−1}: bounded as
    // R → ∞ only for α ≤ 1/2, and as R → 0 only for α = 0 or α ≥ 1/2.
    m.admissible = m.alpha <= tol || std::abs(m.alpha - 0.5) <= tol;
    out.push_back(m);
  }
  return out;
}

ConeSpectrum compute_spectrum(const ConeSpec& cone, const PipelineOptions& options) {
  return run_pipeline(cone, options, nullptr);
}

std::string_view to_string(Verdict verdict) noexcept {
  return verdict == Verdict::HalfHomogeneousCandidate ? "HalfHomogeneousCandidate"
                                                      : "OnlyLocallyConstant";
}

double hit_tolerance(const ExtrapolatedValue& value, double floor) {
  return std::max(3.0 * value.error_estimate, floor);
}

ScreeningVerdict screen_cone(const ConeSpec& cone, const PipelineOptions& options) {
  require(options.levels.size() >= 3, ErrorCode::InvalidArgument,
          "screening needs at least three levels for extrapolation");
  ScreeningVerdict v;
  v.cone = cone;
  v.critical_lambda = critical_lambda(cone.ambient_dim);
  v.certificate = compute_spectrum(cone, options);
  for (const ComponentSpectrum& comp : v.certificate.components) {
    for (std::size_t i = 0; i < comp.extrapolated.size(); ++i) {
      const ExtrapolatedValue& e = comp.extrapolated[i];
      if (e.stationary && e.extrapolated == 0.0) continue;
      const double tol = hit_tolerance(e, options.hit_floor);
      if (std::abs(e.extrapolated - v.critical_lambda) <= tol) {
        v.hits.push_back({comp.component, static_cast<int>(i), e.extrapolated, tol});
      }
    }
  }
  v.spectrum_hit = !v.hits.empty();
  v.verdict = v.spectrum_hit ? Verdict::HalfHomogeneousCandidate : Verdict::OnlyLocallyConstant;
  return v;
}

namespace {

SweepRow sweep_point(const ConeSpec& cone, double omega, double oracle,
                     const PipelineOptions& options) {
  const ConeSpectrum s = compute_spectrum(cone, options);
  const ComponentSpectrum& comp = s.components.front();
  const ExtrapolatedValue& e = comp.extrapolated[first_positive_index(comp)];
  SweepRow row;
  row.omega = omega;
  row.lambda = e.extrapolated;
  row.order = e.observed_order;
  row.error_estimate = e.error_estimate;
  row.oracle = oracle;
  row.asymptote_residual = e.extrapolated - oracle;
  row.hit = std::abs(e.extrapolated - critical_lambda(cone.ambient_dim)) <=
            hit_tolerance(e, options.hit_floor);
  return row;
}

}  // namespace

std::vector<SweepRow> sector_sweep(const std::vector<double>& omegas, const PipelineOptions& options) {
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    require(omegas[i] > 0.0 && omegas[i] < std::numbers::pi, ErrorCode::OmegaOutOfRange,
            "sector sweep needs omega in (0, pi)");
    require(i == 0 || omegas[i] > omegas[i - 1], ErrorCode::InvalidArgument,
            "omega grid must be ascending");
    rows.push_back(sweep_point(make_cone(Preset::SectorArc, 3, omegas[i]), omegas[i],
                               sector_lambda_asymptote(omegas[i]), options));
  }
  return rows;
}

std::vector<SweepRow> wing_sweep(const std::vector<double>& omegas, const PipelineOptions& options) {
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    require(i == 0 || omegas[i] > omegas[i - 1], ErrorCode::InvalidArgument,
            "omega grid must be ascending");
    rows.push_back(sweep_point(make_cone(Preset::Lune, 3, omegas[i]), omegas[i],
                               lune_lambda1(omegas[i]), options));
  }
  return rows;
}

Eigen::VectorXd cracktip_trace(const CrackMesh& mesh) {
  const std::vector<Vec3> side = vertex_side_directions(mesh);
  Eigen::VectorXd g(static_cast<Eigen::Index>(mesh.vertices.size()));
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Vec3& p = mesh.vertices[v];
    const double r = std::hypot(p.x(), p.y());
    double theta = std::atan2(p.y(), p.x());
    if (std::abs(p.y()) < 1e-12 && p.x() < 0.0) {
      theta = side[v].y() >= 0.0 ? std::numbers::pi : -std::numbers::pi;
    }
    g(static_cast<Eigen::Index>(v)) = cracktip_value(r, theta);
  }
  return g;
}

CertificateReport cracktip_certificate(const PipelineOptions& options) {
  const ConeSpec cone = make_cone(Preset::HalfPlane, 3);
  FinestData finest;
  const ConeSpectrum s = run_pipeline(cone, options, &finest);
  const ComponentSpectrum& comp = s.components.front();

  CertificateReport report;
  const int index = first_positive_index(comp);
  report.lambda1 = comp.extrapolated[index];
  report.finest_vertex_count = static_cast<int>(finest.mesh.vertices.size());

  const auto fine_clusters = cluster_eigenvalues(finest.spectrum.eigenvalues);
  for (const auto& cluster : fine_clusters) {
    if (std::find(cluster.begin(), cluster.end(), index) != cluster.end()) {
      report.cluster_size = static_cast<int>(cluster.size());
    }
  }

  const Eigen::VectorXd x = finest.spectrum.eigenvectors.col(index);
  const Eigen::VectorXd g = cracktip_trace(finest.mesh);
  const Eigen::VectorXd mx = finest.pair.mass * x;
  report.correlation =
      std::abs(g.dot(mx)) / std::sqrt(x.dot(mx) * g.dot(finest.pair.mass * g));

  const std::vector<int> mirror = reflection_map(finest.mesh, Vec3(0, 1, 0));
  Eigen::VectorXd sx(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) sx(i) = x(mirror[static_cast<std::size_t>(i)]);
  report.reflection_symmetry = sx.dot(mx) / x.dot(mx);
  return report;
}

}  // namespace cone_spectra
