#pragma once

// Classical and pseudo-Euclidean MDS on an arbitrary finite metric space.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mdsg/metrics.hpp"

namespace mdsg {

struct MdsKernel {
  Eigen::MatrixXd matrix;
  bool centered = false;
};

/// Eigenvalues in descending order with orthonormal eigenvector columns.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Eigen::Index size() const { return eigenvalues.size(); }
  double max_abs_eigenvalue() const { return size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0; }
};

struct EmbeddingResult {
  Eigen::MatrixXd coordinates;          // rows are points
  std::vector<double> eigenvalues;      // one per coordinate column
  int positive = 0;                     // p
  int negative = 0;                     // q
  bool truncated = false;               // requested dimension was reduced

  int dims() const { return static_cast<int>(coordinates.cols()); }
};

/// |lambda| <= kZeroRelativeTolerance * max|lambda| counts as zero.
inline constexpr double kZeroRelativeTolerance = 1e-9;

inline double zero_threshold(const SpectralDecomposition& dec) {
  return kZeroRelativeTolerance * dec.max_abs_eigenvalue();
}

inline Eigen::MatrixXd to_matrix(const DistanceMatrix& dm) {
  const auto n = static_cast<Eigen::Index>(dm.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d(i, j) = static_cast<double>(dm(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  return d;
}

/// M = -1/2 H (D o D) H with H = I - 11^T/n.
inline MdsKernel double_center(const Eigen::MatrixXd& distances) {
  if (distances.rows() != distances.cols()) throw std::invalid_argument("distance matrix must be square");
  const Eigen::MatrixXd squared = distances.cwiseProduct(distances);
  // H S H expanded into row/column/grand means.
  const Eigen::VectorXd row_mean = squared.rowwise().mean();
  const Eigen::RowVectorXd col_mean = squared.colwise().mean();
  const double grand = squared.size() ? squared.mean() : 0.0;
  Eigen::MatrixXd m = squared;
  m.colwise() -= row_mean;
  m.rowwise() -= col_mean;
  m.array() += grand;
  return {-0.5 * m, true};
}

inline MdsKernel double_center(const DistanceMatrix& dm) { return double_center(to_matrix(dm)); }

/// Re-centers an arbitrary symmetric kernel: H K H.
inline MdsKernel center_kernel(const MdsKernel& kernel) {
  Eigen::MatrixXd m = kernel.matrix;
  const Eigen::VectorXd row_mean = m.rowwise().mean();
  const Eigen::RowVectorXd col_mean = m.colwise().mean();
  const double grand = m.size() ? m.mean() : 0.0;
  m.colwise() -= row_mean;
  m.rowwise() -= col_mean;
  m.array() += grand;
  return {m, true};
}

/// Full symmetric eigensystem, descending. Each eigenvector is signed so its
/// largest-magnitude entry is positive (ties go to the lowest index).
inline SpectralDecomposition eigendecompose(const MdsKernel& kernel) {
  const Eigen::MatrixXd& m = kernel.matrix;
  if (m.rows() != m.cols()) throw std::invalid_argument("kernel must be square");
  const double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (m.size() && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("kernel is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed");

  const Eigen::Index n = m.rows();
  SpectralDecomposition dec;
  dec.eigenvalues = solver.eigenvalues().reverse();
  dec.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index c = 0; c < n; ++c) {
    auto col = dec.eigenvectors.col(c);
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(col(r)) >= peak * (1.0 - 1e-12)) {
        if (col(r) < 0) col = -col;
        break;
      }
    }
  }
  return dec;
}

/// Euclidean coordinates from the top-k positive eigenpairs; k is truncated to
/// the number of positive eigenvalues when larger.
inline EmbeddingResult classical_embedding(const SpectralDecomposition& dec, int k) {
  if (k < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  const double zero = zero_threshold(dec);
  int positive = 0;
  while (positive < dec.size() && dec.eigenvalues(positive) > zero) ++positive;

  EmbeddingResult emb;
  const int dims = std::min(k, positive);
  emb.truncated = dims < k;
  emb.positive = dims;
  emb.coordinates.resize(dec.eigenvectors.rows(), dims);
  for (int c = 0; c < dims; ++c) {
    emb.coordinates.col(c) = dec.eigenvectors.col(c) * std::sqrt(dec.eigenvalues(c));
    emb.eigenvalues.push_back(dec.eigenvalues(c));
  }
  return emb;
}

/// Keeps the k nonzero eigenvalues of largest magnitude; coordinates are
/// F|Lambda|^{1/2} laid out positive block first, each block by descending |lambda|.
inline EmbeddingResult pseudo_embedding(const SpectralDecomposition& dec, int k) {
  if (k < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  const double zero = zero_threshold(dec);
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index i = 0; i < dec.size(); ++i)
    if (std::abs(dec.eigenvalues(i)) > zero) nonzero.push_back(i);
  std::stable_sort(nonzero.begin(), nonzero.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(dec.eigenvalues(a)) > std::abs(dec.eigenvalues(b));
  });

  EmbeddingResult emb;
  const auto dims = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(k), nonzero.size()));
  emb.truncated = dims < static_cast<std::size_t>(k);
  nonzero.resize(dims);
  std::stable_partition(nonzero.begin(), nonzero.end(), [&](Eigen::Index i) { return dec.eigenvalues(i) > 0; });

  emb.coordinates.resize(dec.eigenvectors.rows(), static_cast<Eigen::Index>(dims));
  for (std::size_t c = 0; c < dims; ++c) {
    const double lambda = dec.eigenvalues(nonzero[c]);
    emb.coordinates.col(static_cast<Eigen::Index>(c)) = dec.eigenvectors.col(nonzero[c]) * std::sqrt(std::abs(lambda));
    emb.eigenvalues.push_back(lambda);
    (lambda > 0 ? emb.positive : emb.negative) += 1;
  }
  return emb;
}

/// Full-rank pseudo-Euclidean embedding (every nonzero eigenvalue).
inline EmbeddingResult pseudo_embedding(const SpectralDecomposition& dec) {
  return pseudo_embedding(dec, static_cast<int>(std::max<Eigen::Index>(1, dec.size())));
}

/// Positive-block squared distance minus negative-block squared distance.
inline double pseudo_distance_sq(const EmbeddingResult& emb, Eigen::Index i, Eigen::Index j) {
  double sum = 0.0;
  for (Eigen::Index c = 0; c < emb.coordinates.cols(); ++c) {
    const double diff = emb.coordinates(i, c) - emb.coordinates(j, c);
    sum += (emb.eigenvalues[static_cast<std::size_t>(c)] > 0 ? 1.0 : -1.0) * diff * diff;
  }
  return sum;
}

/// Squared norm of the eigenvalues discarded when keeping the top k.
inline double strain(const SpectralDecomposition& dec, int k) {
  if (k < 0 || k > dec.size()) throw std::invalid_argument("strain: k out of range");
  return dec.eigenvalues.tail(dec.size() - k).squaredNorm();
}

/// F_k Lambda_k F_k^T from the top-k eigenpairs.
inline Eigen::MatrixXd truncated_kernel(const SpectralDecomposition& dec, int k) {
  const auto& f = dec.eigenvectors.leftCols(k);
  return f * dec.eigenvalues.head(k).asDiagonal() * f.transpose();
}

/// Groups sorted eigenvalues into clusters that agree to `relative_tolerance * max|lambda|`.
struct EigenCluster {
  double value = 0.0;  // mean of the cluster
  int multiplicity = 0;
};

inline std::vector<EigenCluster> cluster_eigenvalues(const Eigen::VectorXd& eigenvalues, double relative_tolerance = 1e-8) {
  std::vector<double> values(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  std::sort(values.begin(), values.end(), std::greater<>());
  const double scale = values.empty() ? 0.0 : std::max(std::abs(values.front()), std::abs(values.back()));
  const double tol = relative_tolerance * std::max(scale, 1.0);
  std::vector<EigenCluster> clusters;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (clusters.empty() || std::abs(values[i] - values[i - 1]) > tol) {
      if (!clusters.empty()) clusters.back().value = sum / clusters.back().multiplicity;
      clusters.push_back({values[i], 0});
      sum = 0.0;
    }
    clusters.back().multiplicity += 1;
    sum += values[i];
  }
  if (!clusters.empty()) clusters.back().value = sum / clusters.back().multiplicity;
  return clusters;
}

}  // namespace mdsg
