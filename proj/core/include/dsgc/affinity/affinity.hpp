#pragma once

#include "dsgc/core/dense_matrix.hpp"
#include "dsgc/core/graph.hpp"
#include "dsgc/core/sparse_matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace dsgc {

/// Token-id documents over a vocabulary of `vocab_size` attributes.
struct Corpus {
    std::vector<std::vector<std::uint32_t>> documents;
    std::size_t vocab_size = 0;

    /// Throws DataError if any token id is >= vocab_size.
    void validate() const;
};

/// Pretrained attribute embeddings, one row per attribute.
struct EmbeddingTable {
    DenseMatrix vectors;

    std::size_t dimension() const noexcept { return vectors.cols(); }
    std::size_t size() const noexcept { return vectors.rows(); }
};

enum class CooccurrenceWeighting { inverse_distance, uniform };

struct CooccurrenceCounts {
    SparseMatrix pair_weights;            // symmetric m×m
    std::vector<double> unigram_weights;  // row sums of pair_weights
    double total_weight = 0.0;            // sum of all pair_weights, row-major order
};

/// Sliding-window co-occurrence. For each token pair at distance 1 ≤ d ≤ window
/// inside a document, adds w(d) (1/d or 1) to both (i,j) and (j,i).
CooccurrenceCounts cooccurrence_counts(const Corpus& corpus, std::size_t window,
                                       CooccurrenceWeighting weighting = CooccurrenceWeighting::inverse_distance);

/// Undirected PPMI graph: max(0, log(Pr(i,j) / (Pr(i)Pr(j)))) with natural log,
/// zero diagonal, and no edge where the pair never co-occurs.
Graph ppmi_matrix(const CooccurrenceCounts& counts);

enum class KnnMetric { euclidean };

/// Exact k-NN over all pairs, symmetrized as max(A, Aᵀ), binary weights, zero
/// diagonal. Distance ties go to the lower index.
Graph knn_graph(const EmbeddingTable& e, std::size_t k, KnnMetric metric = KnnMetric::euclidean);

/// One document per line, space-separated token ids.
Corpus read_corpus(std::istream& in, std::size_t vocab_size, const std::string& source = "<stream>");
Corpus read_corpus(const std::filesystem::path& path, std::size_t vocab_size);

/// One line per attribute: `token_id v1 ... vd`. Every id in [0, vocab_size) must appear once.
EmbeddingTable read_embeddings(std::istream& in, std::size_t vocab_size, const std::string& source = "<stream>");
EmbeddingTable read_embeddings(const std::filesystem::path& path, std::size_t vocab_size);

}  // namespace dsgc
