#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <cone_spectra/io.hpp>

namespace cone_spectra::cli {

/// Parsed command line. Angles are stored in radians after --degrees
/// conversion.
struct RunConfig {
  std::string subcommand;
  std::string topic;  // sweep kind or oracle name
  std::string cone = "empty";
  std::string cone_file;
  bool has_omega = false;
  double omega = 0.0;
  bool degrees = false;
  int dim = 3;
  std::vector<int> levels = {3, 4, 5};
  int grading = 0;
  int k = 6;
  std::string format = "json";
  std::string output;
  bool deterministic = false;
  int threads = 1;
  bool dry_run = false;
  double tolerance = 1e-8;
  double hit_floor = 5e-3;

  // sweep
  double from = 0.0;
  double to = 0.0;
  int steps = 8;
  std::vector<double> omegas;

  // decompose
  std::string data = "x1";

  // oracle
  double lambda = 0.0;
  double alpha = 0.0;
  double r = 1.0;
  double theta = 0.0;
  double C = 0.0;
  std::vector<double> lambdas;

  // measure
  double R = 1.0;
  double band = 0.1;
  std::array<double, 3> y = {0.0, 0.0, 0.0};
  std::string profile = "cosine";

  // exports
  std::string export_mesh;
  std::string export_matrices;
  std::string export_vectors;
};

Json to_json(const RunConfig& config);
RunConfig config_from_json(const Json& j);

/// Entry point shared by the executable and the tests. Returns 0 on success,
/// 2 on usage errors and 1 on computational failure (error JSON on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cone_spectra::cli
