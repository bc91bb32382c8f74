#pragma once

#include "dsgc/core/dense_matrix.hpp"
#include "dsgc/core/sparse_matrix.hpp"

#include <variant>

namespace dsgc {

/// A 2-D graph signal: an n×m matrix whose rows live on the object graph and
/// whose columns live on the attribute graph. Stored sparse or dense.
class Signal2D {
public:
    Signal2D() = default;
    Signal2D(DenseMatrix dense) : data_(std::move(dense)) {}    // NOLINT(google-explicit-constructor)
    Signal2D(SparseMatrix sparse) : data_(std::move(sparse)) {}  // NOLINT(google-explicit-constructor)

    std::size_t n_objects() const noexcept;
    std::size_t n_attributes() const noexcept;

    bool is_sparse() const noexcept { return std::holds_alternative<SparseMatrix>(data_); }
    const SparseMatrix& sparse() const { return std::get<SparseMatrix>(data_); }
    const DenseMatrix& dense() const { return std::get<DenseMatrix>(data_); }

    DenseMatrix to_dense() const;
    SparseMatrix to_sparse() const;
    /// Number of stored entries (all cells when dense).
    std::size_t stored() const noexcept;

    /// Checks the signal against the object- and attribute-graph sizes.
    void check_shape(std::size_t n, std::size_t m, const char* where) const;

private:
    std::variant<DenseMatrix, SparseMatrix> data_;
};

/// Dense when the fraction of nonzeros exceeds `dense_threshold`, else CSR.
Signal2D materialize(DenseMatrix m, double dense_threshold = 0.25);
Signal2D materialize(SparseMatrix m, double dense_threshold = 0.25);

/// A·X for a sparse operator on the object dimension.
Signal2D left_multiply(const SparseMatrix& a, const Signal2D& x);
/// X·B for a sparse operator on the attribute dimension.
Signal2D right_multiply(const Signal2D& x, const SparseMatrix& b);

/// Subtracts the per-attribute mean over objects. Output is dense.
Signal2D mean_center(const Signal2D& x);

}  // namespace dsgc
