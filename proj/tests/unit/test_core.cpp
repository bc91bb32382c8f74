#include "dsgc/core/error.hpp"
#include "dsgc/core/graph.hpp"
#include "dsgc/core/labels.hpp"
#include "dsgc/core/signal.hpp"
#include "dsgc/core/smtx.hpp"
#include "dsgc/core/sparse_matrix.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace dsgc;

namespace {

SparseMatrix two_cycle() { return SparseMatrix::from_dense(DenseMatrix{{0, 1}, {1, 0}}); }

}  // namespace

TEST(Spmm, IdentityLeavesMatrixUnchanged) {
    const auto b = SparseMatrix::from_dense(DenseMatrix{{1, 0, 2}, {0, 3, 0}, {4, 0, 5}});
    EXPECT_EQ(spmm(SparseMatrix::identity(3), b), b);
    const DenseMatrix bd = b.to_dense();
    EXPECT_EQ(spmm(SparseMatrix::identity(3), bd), bd);
}

TEST(Spmm, PermutationSwapsRows) {
    const DenseMatrix b{{1, 2}, {3, 4}};
    const DenseMatrix want{{3, 4}, {1, 2}};
    EXPECT_EQ(spmm(two_cycle(), b), want);
    EXPECT_EQ(spmm(two_cycle(), SparseMatrix::from_dense(b)).to_dense(), want);
}

TEST(Spmm, RandomAgainstDenseOracle) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_sparse(20, 20, 0.1, rng);
        const auto b = oracle::random_sparse(20, 20, 0.1, rng);
        const auto want = oracle::multiply(oracle::grid(a), oracle::grid(b));
        EXPECT_LE(oracle::max_diff(spmm(a, b).to_dense(), want), 1e-12);
        EXPECT_LE(oracle::max_diff(spmm(a, b.to_dense()), want), 1e-12);
        EXPECT_LE(oracle::max_diff(matmul(a.to_dense(), b), want), 1e-12);
    }
}

TEST(Spmm, ShapeMismatchThrows) {
    const auto a = SparseMatrix::identity(3);
    EXPECT_THROW(spmm(a, SparseMatrix::identity(2)), ShapeError);
    EXPECT_THROW(spmm(a, DenseMatrix(2, 2)), ShapeError);
}

TEST(Spmm, AssociativityWithinTolerance) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_sparse(10, 10, 0.4, rng);
        const auto b = oracle::random_sparse(10, 10, 0.4, rng);
        const auto c = oracle::random_sparse(10, 10, 0.4, rng);
        EXPECT_LE(max_abs_diff(spmm(spmm(a, b), c).to_dense(), spmm(a, spmm(b, c)).to_dense()), 1e-9);
    }
}

TEST(SparseMatrix, TransposeTwiceIsBitExact) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_sparse(7, 13, 0.3, rng);
        EXPECT_EQ(a.transposed().transposed(), a);
    }
}

TEST(SparseMatrix, ConstructorRejectsBrokenInvariants) {
    EXPECT_THROW(SparseMatrix(2, 2, {0, 2, 1}, {0, 1}, {1.0, 2.0}), DataError);        // decreasing offsets
    EXPECT_THROW(SparseMatrix(2, 2, {0, 2, 2}, {1, 0}, {1.0, 2.0}), DataError);        // unsorted columns
    EXPECT_THROW(SparseMatrix(2, 2, {0, 1, 1}, {2}, {1.0}), DataError);                // column out of range
    EXPECT_THROW(SparseMatrix(1, 1, {0, 1}, {0}, {std::nan("")}), DataError);          // NaN
    EXPECT_THROW(SparseMatrix(1, 1, {0, 1}, {0}, {1.0, 2.0}), DataError);              // length mismatch
}

TEST(SparseMatrix, FromTripletsSumsDuplicatesAndDropsZeros) {
    const auto m = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {0, 1, 2.0}, {1, 0, 0.0}});
    EXPECT_EQ(m.nnz(), 1u);
    EXPECT_EQ(m.at(0, 1), 3.0);
    EXPECT_EQ(m.at(1, 0), 0.0);
}

TEST(Graph, ValidatesUndirectedSymmetry) {
    EXPECT_THROW(Graph(SparseMatrix::from_dense(DenseMatrix{{0, 1}, {0, 0}}), false), DataError);
    EXPECT_NO_THROW(Graph(SparseMatrix::from_dense(DenseMatrix{{0, 1}, {0, 0}}), true));
    EXPECT_THROW(Graph(SparseMatrix::from_dense(DenseMatrix{{0, -1}, {-1, 0}})), DataError);
    const Graph g(two_cycle());
    EXPECT_EQ(g.degrees(), (std::vector<double>{1, 1}));
}

TEST(Normalize, TwoCycleRowStochastic) {
    const auto op = normalize(Graph(two_cycle()), OperatorKind::row_stochastic);
    EXPECT_EQ(op.matrix.to_dense(), (DenseMatrix{{0, 1}, {1, 0}}));
}

TEST(Normalize, TwoCycleSymNormalized) {
    const auto op = normalize(Graph(two_cycle()), OperatorKind::sym_normalized);
    EXPECT_EQ(op.matrix.to_dense(), (DenseMatrix{{0, 1}, {1, 0}}));
}

TEST(Normalize, IdentityAdjacencyGivesZeroRowLaplacian) {
    const auto op = normalize(Graph(SparseMatrix::identity(4)), OperatorKind::laplacian_row);
    EXPECT_EQ(op.matrix.to_dense(), DenseMatrix(4, 4));
}

TEST(Normalize, ZeroDegreeRowIsSelfPreserving) {
    // Vertex 2 is isolated.
    const auto a = SparseMatrix::from_dense(DenseMatrix{{0, 2, 0}, {2, 0, 0}, {0, 0, 0}});
    const auto p = normalize(Graph(a), OperatorKind::row_stochastic).matrix.to_dense();
    EXPECT_EQ(p, (DenseMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
    const auto s = normalize(Graph(a), OperatorKind::sym_normalized).matrix.to_dense();
    EXPECT_EQ(s(2, 2), 0.0);
}

TEST(Normalize, PropertiesOnRandomGraphs) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g(oracle::random_symmetric_adjacency(12, 0.3, rng));
        const auto p = normalize(g, OperatorKind::row_stochastic).matrix;
        for (double s : p.row_sums()) EXPECT_NEAR(s, 1.0, 1e-12);
        // L_r = I − D⁻¹A entrywise, with D⁻¹A from the oracle.
        auto a = oracle::grid(g.adjacency());
        for (std::size_t i = 0; i < a.size(); ++i) {
            double d = 0.0;
            for (double v : a[i]) d += v;
            for (double& v : a[i]) v = d > 0.0 ? v / d : 0.0;
            if (d == 0.0) a[i][i] = 1.0;
        }
        auto want = oracle::eye(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) want[i][j] -= a[i][j];
        EXPECT_LE(oracle::max_diff(normalize(g, OperatorKind::laplacian_row).matrix.to_dense(), want), 1e-12);
        EXPECT_TRUE(normalize(g, OperatorKind::sym_normalized).matrix.is_symmetric());
        const auto c = normalize(g, OperatorKind::col_stochastic).matrix;
        for (double s : c.col_sums()) EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(Normalize, KindNamesRoundTrip) {
    for (auto k : {OperatorKind::row_stochastic, OperatorKind::col_stochastic, OperatorKind::sym_normalized,
                   OperatorKind::laplacian_row, OperatorKind::laplacian_col, OperatorKind::laplacian_sym,
                   OperatorKind::unnormalized_laplacian})
        EXPECT_EQ(operator_kind_from_string(to_string(k)), k);
    EXPECT_THROW(operator_kind_from_string("nope"), ParameterError);
}

TEST(MeanCenter, Examples) {
    EXPECT_EQ(mean_center(DenseMatrix(3, 2)).dense(), DenseMatrix(3, 2));
    EXPECT_EQ(mean_center(DenseMatrix{{1}, {3}}).dense(), (DenseMatrix{{-1}, {1}}));
    std::mt19937_64 rng(2);
    const auto x = oracle::random_dense(10, 4, rng);
    for (const Signal2D& s : {Signal2D(x), Signal2D(SparseMatrix::from_dense(x))}) {
        const DenseMatrix c = mean_center(s).dense();
        for (std::size_t j = 0; j < 4; ++j) {
            double m = 0.0;
            for (std::size_t i = 0; i < 10; ++i) m += c(i, j);
            EXPECT_LE(std::abs(m / 10.0), 1e-12);
        }
    }
}

TEST(Signal, MaterializeByDensity) {
    DenseMatrix sparse_like(4, 4);
    sparse_like(0, 0) = 1.0;
    EXPECT_TRUE(materialize(sparse_like).is_sparse());
    EXPECT_FALSE(materialize(DenseMatrix(4, 4, 1.0)).is_sparse());
    EXPECT_THROW(Signal2D(DenseMatrix(3, 2)).check_shape(3, 3, "test"), ShapeError);
}

TEST(Labels, MasksMustBeDisjointAndInRange) {
    EXPECT_THROW(LabelVector({0, 1, 2}, 2), DataError);
    EXPECT_THROW(LabelVector({0, 1}, 2, {0}, {0}), DataError);
    EXPECT_THROW(LabelVector({0, 1}, 2, {5}), DataError);
    const LabelVector y({0, 1, 0}, 2, {0}, {1}, {2});
    EXPECT_EQ(y.class_members()[0], (std::vector<std::size_t>{0, 2}));
}

TEST(Smtx, ExactRoundTrip) {
    std::mt19937_64 rng(9);
    auto m = oracle::random_sparse(9, 6, 0.4, rng);
    // Values chosen to stress shortest round-trip formatting.
    m = add(m, SparseMatrix::from_triplets(9, 6, {{0, 0, 0.1}, {8, 5, 1e-300}, {4, 2, 123456789.123456789}}));
    std::stringstream ss;
    write_smtx(ss, m);
    EXPECT_EQ(read_smtx(ss), m);
}

TEST(Smtx, RejectsMalformedInput) {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_smtx(in);
    };
    EXPECT_THROW(parse("2 2 2\n1 0 1\n0 1 1\n"), DataError);  // unsorted
    EXPECT_THROW(parse("2 2 1\n2 0 1\n"), DataError);         // out of range
    EXPECT_THROW(parse("2 2 2\n0 0 1\n"), DataError);         // too few entries
    EXPECT_THROW(parse("2 2\n"), DataError);                  // bad header
    EXPECT_THROW(parse("1 1 1\n0 0 x\n"), DataError);
    EXPECT_EQ(parse("2 3 0\n").cols(), 3u);
}
