#include "cone_spectra/decomposition.hpp"

#include <cmath>

#include "cone_spectra/error.hpp"

namespace cone_spectra {

Decomposition decompose(const Eigen::VectorXd& data, const OperatorPair& pair,
                        const Spectrum& spectrum, int N, const DecompositionOptions& options) {
  require(data.size() == pair.dimension() && spectrum.eigenvectors.rows() == data.size(),
          ErrorCode::DimensionMismatch, "data, operator and spectrum sizes differ");
  int available = static_cast<int>(spectrum.eigenvalues.size());
  if (options.max_modes > 0) {
    require(options.max_modes <= available, ErrorCode::InvalidArgument,
            "more modes requested than eigenpairs available");
    available = options.max_modes;
  }

  Decomposition dec;
  dec.N = N;
  const Eigen::VectorXd mdata = pair.mass * data;
  dec.data_norm_sq = data.dot(mdata);

  std::vector<int> kept;
  for (int i = 0; i < available; ++i) {
    if (spectrum.eigenvalues[i] <= options.lambda_max) kept.push_back(i);
  }
  dec.shapes.resize(data.size(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const int i = kept[j];
    const double lambda = spectrum.eigenvalues[i] < kZeroEigenvalue ? 0.0 : spectrum.eigenvalues[i];
    dec.shapes.col(static_cast<Eigen::Index>(j)) = spectrum.eigenvectors.col(i);
    dec.coefficients.push_back(spectrum.eigenvectors.col(i).dot(mdata));
    dec.modes.push_back(mode_params(lambda, N));
    dec.indices.push_back(i);
  }
  dec.truncation = static_cast<int>(kept.size());
  const double tail = dec.data_norm_sq - coefficient_norm_sq(dec);
  dec.residual_l2 = std::sqrt(std::max(0.0, tail));
  return dec;
}

double reconstruct(const Decomposition& dec, double r, int vertex) {
  require(r > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  require(vertex >= 0 && vertex < dec.shapes.rows(), ErrorCode::DimensionMismatch,
          "vertex index out of range");
  double sum = 0.0;
  for (int j = 0; j < dec.truncation; ++j) {
    sum += dec.coefficients[j] * std::pow(r, dec.modes[j].alpha) * dec.shapes(vertex, j);
  }
  return sum;
}

double reconstruct(const Decomposition& dec, double r, const std::vector<int>& element,
                   const std::vector<double>& barycentric) {
  require(element.size() == barycentric.size() && !element.empty(),
          ErrorCode::DimensionMismatch, "element and weights differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < element.size(); ++i) {
    sum += barycentric[i] * reconstruct(dec, r, element[i]);
  }
  return sum;
}

double annulus_energy(const Decomposition& dec, double r) {
  double sum = 0.0;
  for (int j = 0; j < dec.truncation; ++j) {
    const ModeParams& m = dec.modes[j];
    const double a2 = dec.coefficients[j] * dec.coefficients[j];
    sum += a2 * (mode_l2_norm_sq(m.alpha, dec.N, r) + mode_energy_sq(m.alpha, m.lambda, dec.N, r));
  }
  return sum;
}

double coefficient_energy(const Decomposition& dec) {
  double sum = 0.0;
  for (int j = 0; j < dec.truncation; ++j) {
    sum += dec.coefficients[j] * dec.coefficients[j] * dec.modes[j].lambda;
  }
  return sum;
}

double coefficient_norm_sq(const Decomposition& dec) {
  double sum = 0.0;
  for (double a : dec.coefficients) sum += a * a;
  return sum;
}

}  // namespace cone_spectra
