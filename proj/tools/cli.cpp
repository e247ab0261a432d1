#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include <cone_spectra/error.hpp>

namespace cone_spectra::cli {

namespace {

/// Raised while validating a configuration; maps to exit code 2.
struct UsageError : std::runtime_error {
  UsageError(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
  ErrorCode code;
};

Json error_json(ErrorCode code, const std::string& message) {
  return {{"error", std::string(to_string(code))}, {"message", message}};
}

ConeSpec resolve_cone(const RunConfig& c) {
  if (!c.cone_file.empty()) {
    std::ifstream in(c.cone_file);
    require(static_cast<bool>(in), ErrorCode::IoFailure, "cannot read " + c.cone_file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      fail(ErrorCode::InvalidCone, std::string("malformed cone file: ") + e.what());
    }
    return cone_from_json(j);
  }
  const Preset preset = parse_preset(c.cone);
  std::optional<double> omega;
  if (c.has_omega) omega = c.omega;
  return make_cone(preset, c.dim, omega);
}

PipelineOptions pipeline_options(const RunConfig& c) {
  PipelineOptions o;
  o.levels = c.levels;
  o.grading = c.grading;
  o.k = c.k;
  o.solver.tolerance = c.tolerance;
  o.hit_floor = c.hit_floor;
  if (const char* dir = std::getenv("CONE_SPECTRA_CACHE"); dir && *dir) o.cache_dir = dir;
  return o;
}

std::vector<double> sweep_grid(const RunConfig& c) {
  if (!c.omegas.empty()) return c.omegas;
  if (c.steps < 1) throw UsageError(ErrorCode::InvalidArgument, "--steps must be positive");
  if (c.steps == 1) return {c.from};
  std::vector<double> grid;
  for (int i = 0; i < c.steps; ++i) grid.push_back(c.from + (c.to - c.from) * i / (c.steps - 1));
  return grid;
}

/// Checks everything that can be checked without computing and describes
/// the pipeline that would run.
Json plan(const RunConfig& c) {
  Json steps = Json::array();
  auto pipeline_steps = [&](const ConeSpec& cone) {
    if (c.levels.empty()) throw UsageError(ErrorCode::InvalidArgument, "--levels is empty");
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
      if (c.levels[i] < 0 || c.levels[i] > 9 || (i > 0 && c.levels[i] <= c.levels[i - 1])) {
        throw UsageError(ErrorCode::InvalidArgument, "--levels must be increasing within [0, 9]");
      }
    }
    if (c.grading < 0 || c.grading > 12) {
      throw UsageError(ErrorCode::InvalidArgument, "--grading must lie in [0, 12]");
    }
    if (c.k < 1) throw UsageError(ErrorCode::InvalidArgument, "-k must be positive");
    for (int level : c.levels) {
      steps.push_back({{"stage", "mesh"}, {"preset", std::string(to_string(cone.preset))},
                       {"level", level}, {"grading", c.grading}});
      steps.push_back({{"stage", "assemble"}, {"level", level}});
      steps.push_back({{"stage", "solve"}, {"level", level}, {"k", c.k}});
    }
    steps.push_back({{"stage", "extrapolate"}, {"levels", c.levels}});
  };

  try {
    const std::string& s = c.subcommand;
    if (s == "spectrum" || s == "screen" || s == "convergence" || s == "decompose") {
      const ConeSpec cone = resolve_cone(c);
      if (s == "decompose") {
        steps.push_back({{"stage", "mesh"}, {"level", c.levels.back()}, {"grading", c.grading}});
        steps.push_back({{"stage", "solve"}, {"k", c.k}});
        steps.push_back({{"stage", "decompose"}, {"data", c.data}});
      } else {
        pipeline_steps(cone);
        if (s == "screen") {
          if (c.levels.size() < 3) {
            throw UsageError(ErrorCode::InvalidArgument, "screen needs at least three levels");
          }
          steps.push_back({{"stage", "compare"}, {"critical_lambda", critical_lambda(cone.ambient_dim)}});
        }
      }
    } else if (s == "sweep") {
      if (c.topic != "sector" && c.topic != "wing") {
        throw UsageError(ErrorCode::InvalidArgument, "sweep kind must be sector or wing");
      }
      const auto grid = sweep_grid(c);
      for (double w : grid) {
        const ConeSpec cone = make_cone(c.topic == "sector" ? Preset::SectorArc : Preset::Lune, 3, w);
        pipeline_steps(cone);
      }
    } else if (s == "oracle") {
      steps.push_back({{"stage", "oracle"}, {"name", c.topic}});
    } else if (s == "measure") {
      if (!(c.band > 0.0 && c.band < c.R / 2.0)) {
        throw UsageError(ErrorCode::LambdaOutOfRange, "--lambda must lie in (0, R/2)");
      }
      steps.push_back({{"stage", "quadrature"}, {"R", c.R}, {"lambda", c.band}});
    }
  } catch (const Error& e) {
    throw UsageError(e.code(), e.what());
  }
  return {{"subcommand", c.subcommand}, {"config", to_json(c)}, {"pipeline", steps}};
}

std::string run_spectrum(const RunConfig& c) {
  const ConeSpec cone = resolve_cone(c);
  const PipelineOptions o = pipeline_options(c);
  const ConeSpectrum s = compute_spectrum(cone, o);
  Json j = to_json(s);
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    const auto& comp = s.components[i];
    for (std::size_t idx = 0; idx < comp.extrapolated.size(); ++idx) {
      const auto& e = comp.extrapolated[idx];
      if (!(e.stationary && e.extrapolated == 0.0)) {
        j["components"][i]["first_positive"] = {{"index", idx}, {"lambda", e.extrapolated}};
        break;
      }
    }
  }

  if (!c.export_mesh.empty() || !c.export_matrices.empty() || !c.export_vectors.empty()) {
    const CrackMesh mesh = build_mesh(cone, c.levels.back(), c.grading, o.mesh);
    if (!c.export_mesh.empty()) {
      std::ofstream off(c.export_mesh);
      std::ofstream side(c.export_mesh + ".json");
      require(off && side, ErrorCode::IoFailure, "cannot write " + c.export_mesh);
      write_off(off, mesh);
      side << mesh_sidecar(mesh).dump(2) << '\n';
    }
    const CrackMesh sub = extract_component(mesh, 0);
    const OperatorPair pair = assemble(sub);
    if (!c.export_matrices.empty()) {
      std::ofstream k(c.export_matrices + ".stiffness.mtx");
      std::ofstream m(c.export_matrices + ".mass.mtx");
      require(k && m, ErrorCode::IoFailure, "cannot write " + c.export_matrices);
      write_matrix_market(k, pair.stiffness);
      write_matrix_market(m, pair.mass);
    }
    if (!c.export_vectors.empty()) {
      const Spectrum spec = solve(pair, std::min<int>(c.k, static_cast<int>(pair.dimension())), o.solver);
      std::ofstream v(c.export_vectors, std::ios::binary);
      require(static_cast<bool>(v), ErrorCode::IoFailure, "cannot write " + c.export_vectors);
      write_eigenvectors(v, spec.eigenvectors);
    }
  }
  return j.dump(2) + "\n";
}

std::string run_screen(const RunConfig& c) {
  return to_json(screen_cone(resolve_cone(c), pipeline_options(c))).dump(2) + "\n";
}

std::string run_sweep(const RunConfig& c) {
  const auto grid = sweep_grid(c);
  const PipelineOptions o = pipeline_options(c);
  std::vector<SweepRow> rows(grid.size());
  auto work = [&](std::size_t i) {
    const std::vector<double> one = {grid[i]};
    rows[i] = (c.topic == "sector" ? sector_sweep(one, o) : wing_sweep(one, o)).front();
  };
  for (std::size_t i = 1; i < grid.size(); ++i) {
    require(grid[i] > grid[i - 1], ErrorCode::InvalidArgument, "omega grid must be ascending");
  }
  const int threads = std::max(1, std::min<int>(c.threads, static_cast<int>(grid.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < grid.size(); i += threads) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  if (c.format == "csv") {
    std::ostringstream out;
    write_sweep_csv(out, rows);
    return out.str();
  }
  return sweep_to_json(rows).dump(2) + "\n";
}

std::string run_decompose(const RunConfig& c) {
  const ConeSpec cone = resolve_cone(c);
  const CrackMesh mesh = build_mesh(cone, c.levels.back(), c.grading);
  const CrackMesh sub = extract_component(mesh, 0);
  const OperatorPair pair = assemble(sub);
  const int k = std::min<int>(c.k, static_cast<int>(pair.dimension()));
  SolverOptions so;
  so.tolerance = c.tolerance;
  const Spectrum spec = solve(pair, k, so);

  Eigen::VectorXd data(static_cast<Eigen::Index>(sub.vertices.size()));
  if (c.data == "x1") {
    for (std::size_t v = 0; v < sub.vertices.size(); ++v) data(v) = sub.vertices[v].x();
  } else if (c.data == "constant") {
    data.setOnes();
  } else if (c.data == "cracktip") {
    data = cracktip_trace(sub);
  } else {
    fail(ErrorCode::InvalidArgument, "--data must be x1, constant or cracktip");
  }
  const Decomposition dec = decompose(data, pair, spec, cone.ambient_dim);
  Json j = to_json(dec);
  j["data_norm_sq"] = dec.data_norm_sq;
  j["coefficient_norm_sq"] = coefficient_norm_sq(dec);
  j["data_energy"] = energy(pair, data);
  j["coefficient_energy"] = coefficient_energy(dec);
  j["annulus_energy_r1"] = annulus_energy(dec, 1.0);
  return j.dump(2) + "\n";
}

std::string run_oracle(const RunConfig& c) {
  const std::string& n = c.topic;
  Json j;
  if (n == "alpha") {
    j = {{"lambda", c.lambda}, {"dim", c.dim}, {"alpha", alpha_of_lambda(c.lambda, c.dim)}};
  } else if (n == "lambda") {
    j = {{"alpha", c.alpha}, {"dim", c.dim}, {"lambda", lambda_of_alpha(c.alpha, c.dim)}};
  } else if (n == "lune") {
    require(c.has_omega, ErrorCode::OmegaOutOfRange, "--omega is required");
    j = {{"omega", c.omega}, {"lambda_omega", lune_lambda_omega(c.omega)},
         {"lambda1", lune_lambda1(c.omega)}};
  } else if (n == "sector") {
    require(c.has_omega, ErrorCode::OmegaOutOfRange, "--omega is required");
    j = {{"omega", c.omega}, {"lambda", sector_lambda_asymptote(c.omega)}};
  } else if (n == "mode-norm") {
    j = {{"value", mode_l2_norm_sq(c.alpha, c.dim, c.r)}};
  } else if (n == "mode-energy") {
    j = {{"value", mode_energy_sq(c.alpha, c.lambda, c.dim, c.r)}};
  } else if (n == "cracktip") {
    j = {{"value", cracktip_value(c.r, c.theta, c.C)}};
  } else if (n == "derivative-factor") {
    j = {{"dim", c.dim}, {"factor", derivative_identity_factor(c.dim)}};
  } else if (n == "critical") {
    const double l = critical_lambda(c.dim);
    j = {{"dim", c.dim}, {"lambda", l}, {"alpha", alpha_of_lambda(l, c.dim)}};
  } else if (n == "filter") {
    j = to_json(filter_modes(c.lambdas, c.dim, c.hit_floor));
  } else {
    throw UsageError(ErrorCode::InvalidArgument, "unknown oracle '" + n + "'");
  }
  return j.dump(2) + "\n";
}

std::string run_measure(const RunConfig& c) {
  BandSpec band;
  band.R = c.R;
  band.lam = c.band;
  band.y = Vec3(c.y[0], c.y[1], c.y[2]);
  const BumpProfile profile =
      c.profile == "indicator" ? BumpProfile::Indicator : BumpProfile::RaisedCosine;
  const double mass = poisson_band_mass(band, profile);
  const ZoneArea zone = zone_area(c.R, c.band);
  const Json j = {{"mass", mass}, {"bound_ratio", mass * c.R / c.band},
                  {"zone_exact", zone.exact}, {"zone_sqrt_element", zone.sqrt_element}};
  return j.dump(2) + "\n";
}

std::string run_convergence(const RunConfig& c) {
  const ConeSpectrum s = compute_spectrum(resolve_cone(c), pipeline_options(c));
  const ComponentSpectrum& comp = s.components.front();
  std::size_t idx = 0;
  while (idx < comp.extrapolated.size() && comp.extrapolated[idx].stationary &&
         comp.extrapolated[idx].extrapolated == 0.0) {
    ++idx;
  }
  require(idx < comp.extrapolated.size(), ErrorCode::AllZero, "no positive eigenvalue; increase k");
  if (c.format == "csv") {
    std::ostringstream out;
    out << "# cone-spectra v1\nlevel,h,vertices,lambda\n" << std::setprecision(12);
    for (const auto& l : comp.levels) {
      out << l.level << ',' << l.h << ',' << l.vertex_count << ',' << l.eigenvalues[idx] << '\n';
    }
    return out.str();
  }
  Json levels = Json::array();
  for (const auto& l : comp.levels) {
    levels.push_back({{"level", l.level}, {"h", l.h}, {"vertices", l.vertex_count},
                      {"lambda", l.eigenvalues[idx]}});
  }
  Json ext = to_json(comp.extrapolated[idx]);
  ext.erase("levels");
  return Json{{"index", idx}, {"levels", levels}, {"extrapolation", ext}}.dump(2) + "\n";
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--cone", c.cone, "Cone preset (empty, full-plane, half-plane, lune, sector, y, t)")
      ->capture_default_str();
  sub->add_option("--cone-file", c.cone_file, "JSON cone description (overrides --cone)");
  sub->add_option("--dim", c.dim, "Ambient dimension N")->capture_default_str();
  sub->add_option("--levels", c.levels, "Refinement levels, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--grading", c.grading, "Grading depth toward crack tips")->capture_default_str();
  sub->add_option("-k", c.k, "Eigenpairs per level")->capture_default_str();
  sub->add_option("--tolerance", c.tolerance, "Eigen residual tolerance")->capture_default_str();
  sub->add_option("--hit-floor", c.hit_floor, "Minimal tolerance for the 3/4 test")
      ->capture_default_str();
}

void add_output(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "Output format: json or csv (csv is the sweep default)")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output,-o", c.output, "Write output to this file instead of stdout");
  sub->add_flag("--deterministic", c.deterministic, "Reproducible output (single-threaded reductions)");
  sub->add_option("--threads", c.threads, "Worker threads for sweeps")->capture_default_str();
  sub->add_flag("--dry-run", c.dry_run, "Validate the configuration and print the planned pipeline");
  sub->add_flag("--degrees", c.degrees, "Angles are given in degrees");
}

}  // namespace

Json to_json(const RunConfig& c) {
  Json j = {{"subcommand", c.subcommand}, {"topic", c.topic}, {"cone", c.cone},
            {"cone_file", c.cone_file}, {"dim", c.dim}, {"levels", c.levels},
            {"grading", c.grading}, {"k", c.k}, {"format", c.format}, {"output", c.output},
            {"deterministic", c.deterministic}, {"threads", c.threads}, {"dry_run", c.dry_run},
            {"tolerance", c.tolerance}, {"hit_floor", c.hit_floor}, {"from", c.from},
            {"to", c.to}, {"steps", c.steps}, {"omegas", c.omegas}, {"data", c.data},
            {"lambda", c.lambda}, {"alpha", c.alpha}, {"r", c.r}, {"theta", c.theta},
            {"C", c.C}, {"lambdas", c.lambdas}, {"R", c.R}, {"band", c.band}, {"y", c.y},
            {"profile", c.profile}, {"export_mesh", c.export_mesh},
            {"export_matrices", c.export_matrices}, {"export_vectors", c.export_vectors}};
  j["omega"] = c.has_omega ? Json(c.omega) : Json(nullptr);
  return j;
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  j.at("subcommand").get_to(c.subcommand);
  j.at("topic").get_to(c.topic);
  j.at("cone").get_to(c.cone);
  j.at("cone_file").get_to(c.cone_file);
  j.at("dim").get_to(c.dim);
  j.at("levels").get_to(c.levels);
  j.at("grading").get_to(c.grading);
  j.at("k").get_to(c.k);
  j.at("format").get_to(c.format);
  j.at("output").get_to(c.output);
  j.at("deterministic").get_to(c.deterministic);
  j.at("threads").get_to(c.threads);
  j.at("dry_run").get_to(c.dry_run);
  j.at("tolerance").get_to(c.tolerance);
  j.at("hit_floor").get_to(c.hit_floor);
  j.at("from").get_to(c.from);
  j.at("to").get_to(c.to);
  j.at("steps").get_to(c.steps);
  j.at("omegas").get_to(c.omegas);
  j.at("data").get_to(c.data);
  j.at("lambda").get_to(c.lambda);
  j.at("alpha").get_to(c.alpha);
  j.at("r").get_to(c.r);
  j.at("theta").get_to(c.theta);
  j.at("C").get_to(c.C);
  j.at("lambdas").get_to(c.lambdas);
  j.at("R").get_to(c.R);
  j.at("band").get_to(c.band);
  j.at("y").get_to(c.y);
  j.at("profile").get_to(c.profile);
  j.at("export_mesh").get_to(c.export_mesh);
  j.at("export_matrices").get_to(c.export_matrices);
  j.at("export_vectors").get_to(c.export_vectors);
  c.has_omega = !j.at("omega").is_null();
  if (c.has_omega) j.at("omega").get_to(c.omega);
  return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neumann spectra of spherical crack domains and minimizer screening", "cone-spectra"};
  app.require_subcommand(1);
  RunConfig c;
  double omega = 0.0;

  auto* spectrum = app.add_subcommand("spectrum", "Extrapolated Neumann spectrum of a cone");
  auto* screen = app.add_subcommand("screen", "Decide whether (2N-3)/4 is in the spectrum");
  auto* sweep = app.add_subcommand("sweep", "Sector or wing sweep over omega");
  auto* decompose_cmd = app.add_subcommand("decompose", "Expand nodal data in the eigenbasis");
  auto* oracle = app.add_subcommand("oracle", "Closed-form formulas");
  auto* measure = app.add_subcommand("measure", "Poisson harmonic measure of a crack band");
  auto* convergence = app.add_subcommand("convergence", "Per-level first positive eigenvalue");

  for (auto* sub : {spectrum, screen, sweep, decompose_cmd, convergence}) {
    add_common(sub, c);
    sub->add_option("--omega", omega, "Opening angle (radians unless --degrees)");
  }
  for (auto* sub : {spectrum, screen, sweep, decompose_cmd, oracle, measure, convergence}) {
    add_output(sub, c);
  }

  spectrum->add_option("--export-mesh", c.export_mesh, "Write the finest mesh as OFF (+ .json sidecar)");
  spectrum->add_option("--export-matrices", c.export_matrices,
                       "Prefix for Matrix Market stiffness and mass of component 0");
  spectrum->add_option("--export-vectors", c.export_vectors,
                       "Write component 0 eigenvectors at the finest level (binary)");

  sweep->add_option("kind", c.topic, "sector or wing")->required();
  sweep->add_option("--from", c.from, "First omega");
  sweep->add_option("--to", c.to, "Last omega");
  sweep->add_option("--steps", c.steps, "Grid points")->capture_default_str();
  sweep->add_option("--omegas", c.omegas, "Explicit omega grid, comma separated")->delimiter(',');

  decompose_cmd->add_option("--data", c.data, "Nodal data: x1, constant or cracktip")
      ->capture_default_str();

  oracle->add_option("name", c.topic,
                     "alpha, lambda, lune, sector, mode-norm, mode-energy, cracktip, "
                     "derivative-factor, critical, filter")
      ->required();
  oracle->add_option("--omega", omega, "Opening angle");
  oracle->add_option("--lambda", c.lambda, "Eigenvalue");
  oracle->add_option("--alpha", c.alpha, "Homogeneity exponent");
  oracle->add_option("--dim", c.dim, "Ambient dimension N")->capture_default_str();
  oracle->add_option("--r", c.r, "Radius")->capture_default_str();
  oracle->add_option("--theta", c.theta, "Polar angle around the crack edge");
  oracle->add_option("--C", c.C, "Additive constant");
  oracle->add_option("--lambdas", c.lambdas, "Eigenvalue list for the mode filter")->delimiter(',');
  oracle->add_option("--tol", c.hit_floor, "Filter tolerance on alpha")->capture_default_str();

  measure->add_option("--R", c.R, "Sphere radius")->capture_default_str();
  measure->add_option("--lambda", c.band, "Band half-width")->capture_default_str();
  measure->add_option("--y", c.y, "Evaluation point x,y,z")->delimiter(',');
  measure->add_option("--profile", c.profile, "cosine or indicator")
      ->check(CLI::IsMember({"cosine", "indicator"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  if (app.get_subcommand(c.subcommand)->count("--format") == 0) {
    c.format = c.subcommand == "sweep" ? "csv" : "json";
  }
  if (c.subcommand == "oracle" && c.topic == "filter" && c.hit_floor == 5e-3) c.hit_floor = 1e-12;
  auto* active = app.get_subcommand(c.subcommand);
  if (active->get_option_no_throw("--omega") && active->count("--omega") > 0) {
    c.has_omega = true;
    c.omega = omega;
  }
  if (c.degrees) {
    const double f = std::numbers::pi / 180.0;
    c.omega *= f;
    c.from *= f;
    c.to *= f;
    c.theta *= f;
    for (double& w : c.omegas) w *= f;
  }

  Json planned;
  try {
    planned = plan(c);
  } catch (const UsageError& e) {
    err << error_json(e.code, e.what()).dump() << '\n';
    return 2;
  }
  if (c.dry_run) {
    out << planned.dump(2) << '\n';
    return 0;
  }

  std::string result;
  try {
    const std::string& s = c.subcommand;
    if (s == "spectrum") result = run_spectrum(c);
    else if (s == "screen") result = run_screen(c);
    else if (s == "sweep") result = run_sweep(c);
    else if (s == "decompose") result = run_decompose(c);
    else if (s == "oracle") result = run_oracle(c);
    else if (s == "measure") result = run_measure(c);
    else if (s == "convergence") result = run_convergence(c);
  } catch (const UsageError& e) {
    err << error_json(e.code, e.what()).dump() << '\n';
    return 2;
  } catch (const Error& e) {
    err << error_json(e.code(), e.what()).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << error_json(ErrorCode::IoFailure, e.what()).dump() << '\n';
    return 1;
  }

  if (c.output.empty()) {
    out << result;
  } else {
    std::ofstream file(c.output);
    if (!file) {
      err << error_json(ErrorCode::IoFailure, "cannot write " + c.output).dump() << '\n';
      return 1;
    }
    file << result;
  }
  return 0;
}

}  // namespace cone_spectra::cli
