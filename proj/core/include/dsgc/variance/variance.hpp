#pragma once

#include "dsgc/conv/filters.hpp"
#include "dsgc/core/dense_matrix.hpp"
#include "dsgc/core/graph.hpp"
#include "dsgc/core/labels.hpp"
#include "dsgc/core/signal.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace dsgc {

/// Plug-in law-of-total-variance decomposition. Variance of a random vector is
/// the trace of its covariance; class priors are empirical frequencies.
struct ClassStats {
    DenseMatrix class_means;           // K×m, row k = mean of class k (zero row if absent)
    std::vector<double> class_priors;  // n_k / n
    double total_variance = 0.0;
    double intra_variance = 0.0;  // Σ_k p_k tr Cov[X | Y=k]
    double inter_variance = 0.0;  // Σ_k p_k ‖μ_k − μ‖²
    double ratio = 0.0;           // intra / inter
    std::size_t n = 0;
    int num_classes = 0;
};

/// Throws DegenerateLabelsError when fewer than two classes are populated or the
/// class means coincide (zero inter-class variance).
ClassStats variance_decomposition(const Signal2D& x, const LabelVector& y, bool center = false);

/// Class-conditional attribute means e_j (rows of `profiles`, m×K) and their
/// filtered counterparts ê_j = Σ_i F_ij e_i.
struct ClassMeanProfiles {
    DenseMatrix profiles;
    DenseMatrix filtered_profiles;
};

ClassMeanProfiles class_mean_profiles(const Signal2D& x, const LabelVector& y, const FilterMatrix& f);

struct SbmParams {
    std::size_t n = 0;
    int num_classes = 2;
    double r = 0.0;  // same-class edge probability
    double q = 0.0;  // cross-class edge probability
    std::uint64_t seed = 0;

    void validate() const;
};

/// Balanced stochastic block model. Node i belongs to class i / (n/K); each
/// unordered pair is drawn once, with probability r or q.
std::pair<Graph, LabelVector> sample_sbm(const SbmParams& p);

/// x_i = means[y_i] + N(0, noise_scale²) per entry.
DenseMatrix sample_class_features(const LabelVector& y, const DenseMatrix& means, double noise_scale,
                                  std::uint64_t seed);

/// Alternating row/column scaling to a doubly stochastic matrix. Throws
/// DataError for an empty row or column and ConvergenceError after `max_iters`.
SparseMatrix sinkhorn_doubly_stochastic(const SparseMatrix& a, std::size_t max_iters = 1000, double tol = 1e-12);

/// Fraction of stored edges that join same-class endpoints (self-loops excluded).
double intra_class_edge_ratio(const Graph& g, const LabelVector& y);

}  // namespace dsgc
