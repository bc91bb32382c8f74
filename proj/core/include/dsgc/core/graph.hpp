#pragma once

#include "dsgc/core/sparse_matrix.hpp"

#include <string_view>
#include <vector>

namespace dsgc {

/// Weighted graph over n vertices. Adjacency must be square and nonnegative;
/// an undirected graph must have an exactly symmetric adjacency.
class Graph {
public:
    Graph() = default;
    explicit Graph(SparseMatrix adjacency, bool directed = false);

    const SparseMatrix& adjacency() const noexcept { return adjacency_; }
    bool directed() const noexcept { return directed_; }
    std::size_t size() const noexcept { return adjacency_.rows(); }
    /// Row sums of the adjacency.
    const std::vector<double>& degrees() const noexcept { return degrees_; }

    /// Undirected copy with A <- max(A, Aᵀ).
    Graph symmetrized() const;

private:
    SparseMatrix adjacency_;
    bool directed_ = false;
    std::vector<double> degrees_;
};

enum class OperatorKind {
    row_stochastic,          // D⁻¹A
    col_stochastic,          // A D⁻¹ (column sums)
    sym_normalized,          // D⁻½ A D⁻½
    laplacian_row,           // I − D⁻¹A
    laplacian_col,           // I − A D⁻¹
    laplacian_sym,           // I − D⁻½ A D⁻½
    unnormalized_laplacian,  // D − A
};

std::string_view to_string(OperatorKind kind) noexcept;
OperatorKind operator_kind_from_string(std::string_view name);

struct NormalizedOperator {
    SparseMatrix matrix;
    OperatorKind kind = OperatorKind::row_stochastic;
};

/// Builds the requested normalization of `g`.
///
/// Zero-degree vertices: in the stochastic kinds the empty row (column) is
/// replaced by the unit vector e_i so the vertex keeps its own signal, and the
/// matching Laplacian row is zero. In D⁻½ the inverse square root of a zero
/// degree is taken as 0, so the vertex contributes nothing to D⁻½AD⁻½.
NormalizedOperator normalize(const Graph& g, OperatorKind kind);

}  // namespace dsgc
