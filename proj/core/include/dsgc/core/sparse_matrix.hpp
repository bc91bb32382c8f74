#pragma once

#include "dsgc/core/dense_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dsgc {

using Index = std::uint32_t;

struct Triplet {
    Index row;
    Index col;
    double value;
};

/// Compressed sparse row matrix. Immutable once constructed; every
/// constructor validates the CSR invariants (monotone offsets, strictly
/// increasing column indices per row, indices in range, finite values).
class SparseMatrix {
public:
    SparseMatrix() : row_offsets_(1, 0) {}
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                 std::vector<Index> col_indices, std::vector<double> values);

    /// Builds from unordered triplets. Duplicates are summed; explicit zeros are kept
    /// only when `keep_zeros` is set.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets,
                                      bool keep_zeros = false);
    static SparseMatrix from_dense(const DenseMatrix& dense);
    static SparseMatrix identity(std::size_t n, double scale = 1.0);
    static SparseMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }
    double density() const noexcept;

    std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
    std::span<const Index> col_indices() const noexcept { return col_indices_; }
    std::span<const double> values() const noexcept { return values_; }

    std::span<const Index> row_cols(std::size_t i) const noexcept {
        return {col_indices_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
    }
    std::span<const double> row_values(std::size_t i) const noexcept {
        return {values_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
    }

    /// Entry lookup by binary search; absent entries are 0.
    double at(std::size_t i, std::size_t j) const;

    SparseMatrix transposed() const;
    DenseMatrix to_dense() const;
    std::vector<double> row_sums() const;
    std::vector<double> col_sums() const;
    bool is_square() const noexcept { return rows_ == cols_; }
    /// Exact structural and value symmetry.
    bool is_symmetric() const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_offsets_;
    std::vector<Index> col_indices_;
    std::vector<double> values_;
};

/// Sparse-times-sparse (Gustavson) product.
SparseMatrix spmm(const SparseMatrix& a, const SparseMatrix& b);
/// Sparse-times-dense product.
DenseMatrix spmm(const SparseMatrix& a, const DenseMatrix& b);
/// Dense-times-sparse product.
DenseMatrix matmul(const DenseMatrix& a, const SparseMatrix& b);

/// Entrywise linear combination alpha*A + beta*B of equally shaped matrices.
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0, double beta = 1.0);
SparseMatrix scale(const SparseMatrix& a, double s);
/// Entrywise max(A, Aᵀ) of a square matrix.
SparseMatrix symmetrize_max(const SparseMatrix& a);

/// Floating-point work of a*b counted as multiply-adds, without forming the product.
std::size_t product_flops(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace dsgc
