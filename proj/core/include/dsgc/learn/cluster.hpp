#pragma once

#include "dsgc/core/dense_matrix.hpp"
#include "dsgc/core/signal.hpp"

#include <cstdint>
#include <vector>

namespace dsgc {

struct ClusterAssignment {
    std::vector<int> assignments;
    int num_clusters = 0;
};

/// Top-k eigenvectors of Z Zᵀ (columns of the n×k result) by power iteration
/// with deflation. Directions with negligible eigenvalue are returned as zero.
DenseMatrix top_eigenvectors_gram(const Signal2D& z, std::size_t k, std::uint64_t seed,
                                  std::vector<double>* eigenvalues = nullptr);

struct KMeansResult {
    std::vector<int> assignments;
    DenseMatrix centroids;
    double inertia = 0.0;
};

/// k-means++ seeding and Lloyd iterations, best of `restarts` by inertia.
KMeansResult kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed, std::size_t restarts = 10,
                    std::size_t max_iters = 300);

/// Spectral clustering with the linear kernel Z Zᵀ: eigenvectors, row L2
/// normalization, then k-means. Throws ParameterError unless 2 ≤ k ≤ n.
ClusterAssignment spectral_cluster(const Signal2D& z, std::size_t k, std::uint64_t seed);

}  // namespace dsgc
