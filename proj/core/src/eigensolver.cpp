#include "cone_spectra/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "cone_spectra/error.hpp"

namespace cone_spectra {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Fixes the sign of each column so its largest-magnitude entry is positive.
void normalize_signs(MatrixXd& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index idx = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&idx);
    if (vectors(idx, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

void finish(Spectrum& s, const OperatorPair& pair) {
  for (double& l : s.eigenvalues) {
    if (l < 0.0 && l > -1e-9) l = 0.0;
  }
  normalize_signs(s.eigenvectors);
  s.clusters = cluster_eigenvalues(s.eigenvalues);
  s.zero_multiplicity = static_cast<int>(
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [](double l) { return l < kZeroEigenvalue; }));
  s.residuals.clear();
  for (Index j = 0; j < s.eigenvectors.cols(); ++j) {
    s.residuals.push_back(rayleigh_residual(pair, s.eigenvectors.col(j), s.eigenvalues[j]));
  }
}

Spectrum dense_solve(const OperatorPair& pair, Index count) {
  const MatrixXd K = MatrixXd(pair.stiffness);
  const MatrixXd M = MatrixXd(pair.mass);
  Eigen::LLT<MatrixXd> llt(M);
  require(llt.info() == Eigen::Success, ErrorCode::SingularMass,
          "mass matrix is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(K, M);
  require(es.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "dense generalized eigensolver failed");
  Spectrum s;
  s.dense = true;
  s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + count);
  s.eigenvectors = es.eigenvectors().leftCols(count);
  finish(s, pair);
  return s;
}

/// M-orthonormalizes the columns of `block` against `basis` and each other
/// (classical Gram-Schmidt applied twice), appending survivors to `basis`.
void extend_basis(const SparseMatrix& M, MatrixXd& basis, MatrixXd& basis_m, Index& used,
                  const MatrixXd& block) {
  for (Index j = 0; j < block.cols(); ++j) {
    VectorXd w = block.col(j);
    VectorXd mw = M * w;
    const double norm0 = std::sqrt(std::max(0.0, w.dot(mw)));
    if (norm0 == 0.0) continue;
    for (int pass = 0; pass < 2 && used > 0; ++pass) {
      const VectorXd coeff = basis_m.leftCols(used).transpose() * w;
      w -= basis.leftCols(used) * coeff;
      mw = M * w;
    }
    const double norm = std::sqrt(std::max(0.0, w.dot(mw)));
    if (norm <= 1e-10 * norm0) continue;
    basis.col(used) = w / norm;
    basis_m.col(used) = mw / norm;
    ++used;
  }
}

struct IterativeResult {
  std::vector<double> ritz_values;
  MatrixXd ritz_vectors;
  int iterations = 0;
};

IterativeResult block_krylov(const OperatorPair& pair, int k, int block, const SolverOptions& opt) {
  const SparseMatrix& K = pair.stiffness;
  const SparseMatrix& M = pair.mass;
  const Index n = K.rows();

  SparseMatrix shifted = K - opt.shift * M;
  Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
  require(factor.info() == Eigen::Success, ErrorCode::SingularMass,
          "factorization of the shifted operator failed");

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd X(n, block);
  for (Index j = 0; j < block; ++j) {
    for (Index i = 0; i < n; ++i) X(i, j) = normal(rng);
  }

  const int depth = std::max(2, opt.krylov_depth);
  const int cap = opt.max_iterations > 0
                      ? opt.max_iterations
                      : static_cast<int>(10.0 * k * std::sqrt(static_cast<double>(n)));
  const Index width = std::min<Index>(n, static_cast<Index>(block) * depth);

  IterativeResult result;
  for (int iter = 1; iter <= cap; ++iter) {
    MatrixXd V(n, width);
    MatrixXd MV(n, width);
    Index used = 0;
    extend_basis(M, V, MV, used, X);
    Index last_begin = 0;
    for (int d = 1; d < depth && used < width; ++d) {
      const Index last_end = used;
      MatrixXd next(n, last_end - last_begin);
      for (Index j = last_begin; j < last_end; ++j) next.col(j - last_begin) = factor.solve(MV.col(j));
      last_begin = last_end;
      if (next.cols() > width - used) next.conservativeResize(n, width - used);
      extend_basis(M, V, MV, used, next);
      if (used == last_end) break;
    }
    require(used >= k, ErrorCode::ConvergenceFailure, "Krylov basis collapsed");

    const MatrixXd basis = V.leftCols(used);
    MatrixXd H = basis.transpose() * (K * basis);
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
    const Index keep = std::min<Index>(block, used);
    const MatrixXd ritz = basis * es.eigenvectors().leftCols(keep);

    bool converged = true;
    for (int j = 0; j < k; ++j) {
      if (rayleigh_residual(pair, ritz.col(j), es.eigenvalues()(j)) > opt.tolerance) {
        converged = false;
        break;
      }
    }
    X = ritz;
    if (converged) {
      result.ritz_values.assign(es.eigenvalues().data(), es.eigenvalues().data() + keep);
      result.ritz_vectors = ritz;
      result.iterations = iter;
      return result;
    }
  }
  fail(ErrorCode::ConvergenceFailure,
       "shift-invert iteration hit its cap of " + std::to_string(cap) + " iterations");
}

/// Number of eigenvalues below s, from the inertia of K - sM.
Index count_below(const OperatorPair& pair, double s) {
  SparseMatrix shifted = pair.stiffness - s * pair.mass;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(shifted);
  require(ldlt.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "inertia factorization failed");
  const VectorXd d = ldlt.vectorD();
  return static_cast<Index>((d.array() < 0.0).count());
}

}  // namespace

std::vector<std::vector<int>> cluster_eigenvalues(const std::vector<double>& eigenvalues,
                                                  double tol) {
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < static_cast<int>(eigenvalues.size()); ++i) {
    const bool joins = i > 0 && eigenvalues[i] - eigenvalues[i - 1] <
                                    tol * std::max(1.0, std::abs(eigenvalues[i]));
    if (joins) {
      clusters.back().push_back(i);
    } else {
      clusters.push_back({i});
    }
  }
  return clusters;
}

double rayleigh_residual(const OperatorPair& pair, const Eigen::VectorXd& x, double lambda) {
  const VectorXd mx = pair.mass * x;
  const double denom = mx.norm();
  if (denom == 0.0) return 0.0;
  return (pair.stiffness * x - lambda * mx).norm() / denom;
}

Spectrum solve_dense(const OperatorPair& pair) { return dense_solve(pair, pair.dimension()); }

Spectrum solve(const OperatorPair& pair, int k, const SolverOptions& options) {
  const Index n = pair.dimension();
  require(k >= 1 && k <= n, ErrorCode::InvalidArgument, "k must lie in [1, dimension]");
  if (n <= options.dense_threshold) return dense_solve(pair, k);

  int block = k + std::max(1, options.block_padding);
  for (int attempt = 0; attempt < 4; ++attempt) {
    block = static_cast<int>(std::min<Index>(block, n));
    IterativeResult it = block_krylov(pair, k, block, options);
    const double top = it.ritz_values[k - 1];
    const double s = top + kClusterTolerance * std::max(1.0, std::abs(top));
    const Index ritz_below = static_cast<Index>(
        std::count_if(it.ritz_values.begin(), it.ritz_values.end(), [&](double l) { return l < s; }));
    const Index true_below = count_below(pair, s);
    if (true_below <= ritz_below) {
      Spectrum spec;
      spec.iterations = it.iterations;
      spec.eigenvalues.assign(it.ritz_values.begin(), it.ritz_values.begin() + k);
      spec.eigenvectors = it.ritz_vectors.leftCols(k);
      finish(spec, pair);
      return spec;
    }
    block += static_cast<int>(true_below - ritz_below) + std::max(1, options.block_padding);
  }
  fail(ErrorCode::ConvergenceFailure, "inertia check kept reporting missed eigenvalues");
}

std::pair<double, int> first_positive(const Spectrum& spectrum) {
  require(!spectrum.eigenvalues.empty(), ErrorCode::AllZero, "empty spectrum");
  for (int i = 0; i < static_cast<int>(spectrum.eigenvalues.size()); ++i) {
    if (spectrum.eigenvalues[i] > kZeroEigenvalue) return {spectrum.eigenvalues[i], i};
  }
  fail(ErrorCode::AllZero, "no positive eigenvalue among the computed ones; increase k");
}

namespace {

ExtrapolatedValue fit_three(const std::array<std::pair<double, double>, 3>& pts) {
  const auto [h1, l1] = pts[0];
  const auto [h2, l2] = pts[1];
  const auto [h3, l3] = pts[2];
  ExtrapolatedValue out;
  const double d1 = l1 - l2;
  const double d2 = l2 - l3;
  const double scale = std::max(1.0, std::abs(l3));
  if (std::abs(d1) <= 1e-13 * scale && std::abs(d2) <= 1e-13 * scale) {
    out.extrapolated = l3;
    out.stationary = true;
    return out;
  }
  require(d1 * d2 > 0.0, ErrorCode::NonMonotoneSequence,
          "level differences change sign; cannot fit a power law");
  const double ratio = d1 / d2;
  auto model = [&](double p) {
    return (std::pow(h1, p) - std::pow(h2, p)) / (std::pow(h2, p) - std::pow(h3, p));
  };
  double lo = 0.05;
  double hi = 8.0;
  double p;
  if (ratio <= model(lo)) {
    p = lo;
  } else if (ratio >= model(hi)) {
    p = hi;
  } else {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (model(mid) < ratio ? lo : hi) = mid;
    }
    p = 0.5 * (lo + hi);
  }
  const double c = d2 / (std::pow(h2, p) - std::pow(h3, p));
  out.observed_order = p;
  out.extrapolated = l3 - c * std::pow(h3, p);
  out.error_estimate = std::abs(c * std::pow(h3, p));
  return out;
}

}  // namespace

ExtrapolatedValue extrapolate(const std::vector<std::pair<double, double>>& levels) {
  require(levels.size() >= 3, ErrorCode::InvalidArgument, "extrapolation needs at least 3 levels");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    require(levels[i].first < levels[i - 1].first && levels[i].first > 0.0,
            ErrorCode::InvalidArgument, "mesh sizes must be positive and strictly decreasing");
  }
  const std::size_t n = levels.size();
  ExtrapolatedValue out = fit_three({levels[n - 3], levels[n - 2], levels[n - 1]});
  out.levels = levels;
  if (n >= 4 && !out.stationary) {
    try {
      const ExtrapolatedValue prev = fit_three({levels[n - 4], levels[n - 3], levels[n - 2]});
      out.error_estimate = std::abs(out.extrapolated - prev.extrapolated);
    } catch (const Error&) {
      // Pre-asymptotic coarse level; keep the correction-size estimate.
    }
  }
  return out;
}

}  // namespace cone_spectra
