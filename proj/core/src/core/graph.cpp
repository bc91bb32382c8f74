#include "dsgc/core/graph.hpp"

#include "dsgc/core/error.hpp"

#include <cmath>
#include <string>

namespace dsgc {

Graph::Graph(SparseMatrix adjacency, bool directed) : adjacency_(std::move(adjacency)), directed_(directed) {
    if (!adjacency_.is_square()) throw ShapeError("Graph: adjacency must be square");
    for (double v : adjacency_.values()) {
        if (v < 0.0) throw DataError("Graph: negative edge weight");
    }
    if (!directed_ && !adjacency_.is_symmetric())
        throw DataError("Graph: undirected graph with asymmetric adjacency");
    degrees_ = adjacency_.row_sums();
}

Graph Graph::symmetrized() const { return Graph(symmetrize_max(adjacency_), false); }

std::string_view to_string(OperatorKind kind) noexcept {
    switch (kind) {
        case OperatorKind::row_stochastic: return "row_stochastic";
        case OperatorKind::col_stochastic: return "col_stochastic";
        case OperatorKind::sym_normalized: return "sym_normalized";
        case OperatorKind::laplacian_row: return "laplacian_row";
        case OperatorKind::laplacian_col: return "laplacian_col";
        case OperatorKind::laplacian_sym: return "laplacian_sym";
        case OperatorKind::unnormalized_laplacian: return "unnormalized_laplacian";
    }
    return "unknown";
}

OperatorKind operator_kind_from_string(std::string_view name) {
    for (auto k : {OperatorKind::row_stochastic, OperatorKind::col_stochastic, OperatorKind::sym_normalized,
                   OperatorKind::laplacian_row, OperatorKind::laplacian_col, OperatorKind::laplacian_sym,
                   OperatorKind::unnormalized_laplacian}) {
        if (to_string(k) == name) return k;
    }
    throw ParameterError("unknown operator kind '" + std::string(name) + "'");
}

namespace {

SparseMatrix row_stochastic(const SparseMatrix& a, const std::vector<double>& deg) {
    std::vector<Triplet> t;
    t.reserve(a.nnz() + a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (deg[i] == 0.0) {
            t.push_back({static_cast<Index>(i), static_cast<Index>(i), 1.0});
            continue;
        }
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) t.push_back({static_cast<Index>(i), cols[p], vals[p] / deg[i]});
    }
    return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseMatrix col_stochastic(const SparseMatrix& a) {
    const auto deg = a.col_sums();
    std::vector<Triplet> t;
    t.reserve(a.nnz() + a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) t.push_back({static_cast<Index>(i), cols[p], vals[p] / deg[cols[p]]});
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (deg[j] == 0.0) t.push_back({static_cast<Index>(j), static_cast<Index>(j), 1.0});
    }
    return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseMatrix sym_normalized(const SparseMatrix& a, const std::vector<double>& deg) {
    std::vector<double> inv_sqrt(deg.size(), 0.0);
    for (std::size_t i = 0; i < deg.size(); ++i) inv_sqrt[i] = deg[i] > 0.0 ? 1.0 / std::sqrt(deg[i]) : 0.0;
    std::vector<Triplet> t;
    t.reserve(a.nnz());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        // The scale is formed as a commutative product so symmetric input stays bit-exactly symmetric.
        for (std::size_t p = 0; p < cols.size(); ++p)
            t.push_back({static_cast<Index>(i), cols[p], vals[p] * (inv_sqrt[i] * inv_sqrt[cols[p]])});
    }
    return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

}  // namespace

NormalizedOperator normalize(const Graph& g, OperatorKind kind) {
    const auto& a = g.adjacency();
    const auto& deg = g.degrees();
    const SparseMatrix eye = SparseMatrix::identity(g.size());
    switch (kind) {
        case OperatorKind::row_stochastic: return {row_stochastic(a, deg), kind};
        case OperatorKind::col_stochastic: return {col_stochastic(a), kind};
        case OperatorKind::sym_normalized: return {sym_normalized(a, deg), kind};
        case OperatorKind::laplacian_row: return {add(eye, row_stochastic(a, deg), 1.0, -1.0), kind};
        case OperatorKind::laplacian_col: return {add(eye, col_stochastic(a), 1.0, -1.0), kind};
        case OperatorKind::laplacian_sym: return {add(eye, sym_normalized(a, deg), 1.0, -1.0), kind};
        case OperatorKind::unnormalized_laplacian: return {add(SparseMatrix::diagonal(deg), a, 1.0, -1.0), kind};
    }
    throw ParameterError("normalize: unknown operator kind");
}

}  // namespace dsgc
