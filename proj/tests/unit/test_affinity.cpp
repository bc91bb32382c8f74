#include "dsgc/affinity/affinity.hpp"
#include "dsgc/core/error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace dsgc;

namespace {

Corpus make_corpus(std::vector<std::vector<std::uint32_t>> docs, std::size_t m) { return Corpus{std::move(docs), m}; }

EmbeddingTable points_1d(std::vector<double> xs) {
    DenseMatrix v(xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) v(i, 0) = xs[i];
    return EmbeddingTable{v};
}

}  // namespace

TEST(Cooccurrence, SingleDocumentPair) {
    const auto c = cooccurrence_counts(make_corpus({{0, 1}}, 2), 20);
    EXPECT_EQ(c.pair_weights.at(0, 1), 1.0);
    EXPECT_EQ(c.pair_weights.at(1, 0), 1.0);
    EXPECT_EQ(c.total_weight, 2.0);
}

TEST(Cooccurrence, RepeatedTokenWindowOne) {
    const auto c = cooccurrence_counts(make_corpus({{0, 0, 0}}, 1), 1, CooccurrenceWeighting::inverse_distance);
    EXPECT_EQ(c.pair_weights.at(0, 0), 4.0);
}

TEST(Cooccurrence, EmptyCorpus) {
    const auto c = cooccurrence_counts(make_corpus({}, 3), 5);
    EXPECT_EQ(c.pair_weights.nnz(), 0u);
    EXPECT_EQ(c.total_weight, 0.0);
    EXPECT_EQ(c.unigram_weights, (std::vector<double>{0, 0, 0}));
    EXPECT_THROW(ppmi_matrix(c), DataError);
}

TEST(Cooccurrence, RejectsBadInput) {
    EXPECT_THROW(cooccurrence_counts(make_corpus({{0, 3}}, 2), 2), DataError);
    EXPECT_THROW(cooccurrence_counts(make_corpus({{0, 1}}, 2), 0), ParameterError);
}

TEST(Ppmi, OnlyCooccurringPairIsLogTwo) {
    const auto g = ppmi_matrix(cooccurrence_counts(make_corpus({{0, 1}}, 2), 20));
    EXPECT_DOUBLE_EQ(g.adjacency().at(0, 1), std::log(2.0));
    EXPECT_DOUBLE_EQ(g.adjacency().at(1, 0), std::log(2.0));
    EXPECT_EQ(g.adjacency().at(0, 0), 0.0);
}

TEST(Ppmi, IndependentTokensGiveZero) {
    // Pair weights [[2,2],[2,2]] factorize into their marginals.
    const auto c = cooccurrence_counts(make_corpus({{0, 1}, {0, 1}, {0, 0}, {1, 1}}, 2), 1, CooccurrenceWeighting::uniform);
    EXPECT_EQ(c.pair_weights.to_dense(), (DenseMatrix{{2, 2}, {2, 2}}));
    const auto g = ppmi_matrix(c);
    EXPECT_EQ(g.adjacency().nnz(), 0u);
}

TEST(Ppmi, RandomCorporaMatchBruteForceExactly) {
    std::mt19937_64 rng(17);
    const std::size_t windows[] = {1, 2, 20};
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + rng() % 19;
        const std::size_t total = 1 + rng() % 200;
        std::vector<std::vector<std::uint32_t>> docs(1 + rng() % 6);
        for (std::size_t t = 0; t < total; ++t) docs[rng() % docs.size()].push_back(static_cast<std::uint32_t>(rng() % m));
        const std::size_t w = windows[trial % 3];
        for (auto weighting : {CooccurrenceWeighting::inverse_distance, CooccurrenceWeighting::uniform}) {
            const auto c = cooccurrence_counts(make_corpus(docs, m), w, weighting);
            const auto o = oracle::brute_force_ppmi(docs, m, w, weighting == CooccurrenceWeighting::inverse_distance);
            ASSERT_EQ(oracle::max_diff(c.pair_weights.to_dense(), o.pair), 0.0);
            ASSERT_EQ(c.unigram_weights, o.unigram);
            ASSERT_EQ(c.total_weight, o.total);
            if (o.total == 0.0) continue;
            ASSERT_EQ(oracle::max_diff(ppmi_matrix(c).adjacency().to_dense(), o.ppmi), 0.0);
        }
    }
}

TEST(Knn, CollinearPoints) {
    const auto g = knn_graph(points_1d({0, 1, 3}), 1);
    EXPECT_EQ(g.adjacency().to_dense(), (DenseMatrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}));
}

TEST(Knn, FullNeighbourhoodIsComplete) {
    std::mt19937_64 rng(3);
    const EmbeddingTable e{oracle::random_dense(6, 3, rng)};
    const auto a = knn_graph(e, 5).adjacency().to_dense();
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(a(i, j), i == j ? 0.0 : 1.0);
    EXPECT_THROW(knn_graph(e, 6), ParameterError);
}

TEST(Knn, TiesGoToLowestIndex) {
    // Points 1, 2 and 3 coincide; 0 sits apart.
    const auto a = knn_graph(points_1d({10, 0, 0, 0}), 1).adjacency().to_dense();
    EXPECT_EQ(a(0, 1), 1.0);  // 0's nearest among equals is index 1
    EXPECT_EQ(a(0, 2), 0.0);
    EXPECT_EQ(a(2, 1), 1.0);
    EXPECT_EQ(a(3, 1), 1.0);
    EXPECT_EQ(a(3, 2), 0.0);
    EXPECT_EQ(a(1, 2), 1.0);  // symmetrized from 2 → 1
}

TEST(CorpusIo, ParsesDocumentsAndRejectsGarbage) {
    std::istringstream ok("0 1 2\n\n2 2\n");
    const auto c = read_corpus(ok, 3);
    ASSERT_EQ(c.documents.size(), 3u);
    EXPECT_EQ(c.documents[0], (std::vector<std::uint32_t>{0, 1, 2}));
    EXPECT_TRUE(c.documents[1].empty());
    std::istringstream bad("0 x\n");
    EXPECT_THROW(read_corpus(bad, 3), DataError);
    std::istringstream range("0 5\n");
    EXPECT_THROW(read_corpus(range, 3), DataError);
}

TEST(EmbeddingIo, ParsesAndValidatesIds) {
    std::istringstream ok("1 0.5 1\n0 -1 2\n");
    const auto e = read_embeddings(ok, 2);
    EXPECT_EQ(e.vectors, (DenseMatrix{{-1, 2}, {0.5, 1}}));
    std::istringstream missing("0 1 1\n");
    EXPECT_THROW(read_embeddings(missing, 2), DataError);
    std::istringstream ragged("0 1 1\n1 2\n");
    EXPECT_THROW(read_embeddings(ragged, 2), DataError);
    std::istringstream dup("0 1\n0 2\n");
    EXPECT_THROW(read_embeddings(dup, 2), DataError);
}
