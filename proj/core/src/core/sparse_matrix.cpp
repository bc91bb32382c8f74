#include "dsgc/core/sparse_matrix.hpp"

#include "dsgc/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dsgc {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                           std::vector<Index> col_indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
    if (row_offsets_.size() != rows_ + 1 || row_offsets_.front() != 0 ||
        row_offsets_.back() != values_.size() || col_indices_.size() != values_.size()) {
        throw DataError("SparseMatrix: inconsistent CSR arrays");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        if (row_offsets_[i] > row_offsets_[i + 1]) throw DataError("SparseMatrix: decreasing row offsets");
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
            if (col_indices_[p] >= cols_) throw DataError("SparseMatrix: column index out of range");
            if (p > row_offsets_[i] && col_indices_[p] <= col_indices_[p - 1])
                throw DataError("SparseMatrix: column indices not strictly increasing in row " +
                                std::to_string(i));
            if (!std::isfinite(values_[p])) throw DataError("SparseMatrix: non-finite value");
        }
    }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets,
                                         bool keep_zeros) {
    for (const auto& t : triplets) {
        if (t.row >= rows || t.col >= cols) throw DataError("SparseMatrix: triplet index out of range");
    }
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<std::size_t> offsets(rows + 1, 0);
    std::vector<Index> cols_out;
    std::vector<double> vals;
    cols_out.reserve(triplets.size());
    vals.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < triplets.size() && triplets[j].row == triplets[i].row && triplets[j].col == triplets[i].col) {
            sum += triplets[j].value;
            ++j;
        }
        if (sum != 0.0 || keep_zeros) {
            cols_out.push_back(triplets[i].col);
            vals.push_back(sum);
            ++offsets[triplets[i].row + 1];
        }
        i = j;
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    return SparseMatrix(rows, cols, std::move(offsets), std::move(cols_out), std::move(vals));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
    std::vector<std::size_t> offsets(dense.rows() + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    for (std::size_t i = 0; i < dense.rows(); ++i) {
        for (std::size_t j = 0; j < dense.cols(); ++j) {
            if (dense(i, j) != 0.0) {
                cols.push_back(static_cast<Index>(j));
                vals.push_back(dense(i, j));
            }
        }
        offsets[i + 1] = vals.size();
    }
    return SparseMatrix(dense.rows(), dense.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::identity(std::size_t n, double scale) {
    std::vector<double> diag(n, scale);
    return diagonal(diag);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> diag) {
    const std::size_t n = diag.size();
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    for (std::size_t i = 0; i < n; ++i) {
        if (diag[i] != 0.0) {
            cols.push_back(static_cast<Index>(i));
            vals.push_back(diag[i]);
        }
        offsets[i + 1] = vals.size();
    }
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

double SparseMatrix::density() const noexcept {
    const double cells = static_cast<double>(rows_) * static_cast<double>(cols_);
    return cells == 0.0 ? 0.0 : static_cast<double>(nnz()) / cells;
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<Index>(j));
    if (it == cols.end() || *it != j) return 0.0;
    return values_[row_offsets_[i] + static_cast<std::size_t>(it - cols.begin())];
}

SparseMatrix SparseMatrix::transposed() const {
    std::vector<std::size_t> offsets(cols_ + 1, 0);
    for (Index c : col_indices_) ++offsets[c + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    std::vector<Index> cols(nnz());
    std::vector<double> vals(nnz());
    // Row-major traversal keeps each output row sorted.
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
            const std::size_t dst = cursor[col_indices_[p]]++;
            cols[dst] = static_cast<Index>(i);
            vals[dst] = values_[p];
        }
    }
    return SparseMatrix(cols_, rows_, std::move(offsets), std::move(cols), std::move(vals));
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) d(i, col_indices_[p]) = values_[p];
    return d;
}

std::vector<double> SparseMatrix::row_sums() const {
    std::vector<double> sums(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) sums[i] += values_[p];
    return sums;
}

std::vector<double> SparseMatrix::col_sums() const {
    std::vector<double> sums(cols_, 0.0);
    for (std::size_t p = 0; p < values_.size(); ++p) sums[col_indices_[p]] += values_[p];
    return sums;
}

bool SparseMatrix::is_symmetric() const {
    if (!is_square()) return false;
    return *this == transposed();
}

SparseMatrix spmm(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) detail::throw_shape("spmm", a.rows(), a.cols(), b.rows(), b.cols());
    std::vector<std::size_t> offsets(a.rows() + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    std::vector<double> acc(b.cols(), 0.0);
    std::vector<char> used(b.cols(), 0);
    std::vector<Index> touched;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        touched.clear();
        auto acols = a.row_cols(i);
        auto avals = a.row_values(i);
        for (std::size_t p = 0; p < acols.size(); ++p) {
            auto bcols = b.row_cols(acols[p]);
            auto bvals = b.row_values(acols[p]);
            for (std::size_t q = 0; q < bcols.size(); ++q) {
                const Index c = bcols[q];
                if (!used[c]) {
                    used[c] = 1;
                    touched.push_back(c);
                }
                acc[c] += avals[p] * bvals[q];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (Index c : touched) {
            if (acc[c] != 0.0) {
                cols.push_back(c);
                vals.push_back(acc[c]);
            }
            acc[c] = 0.0;
            used[c] = 0;
        }
        offsets[i + 1] = vals.size();
    }
    return SparseMatrix(a.rows(), b.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

DenseMatrix spmm(const SparseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) detail::throw_shape("spmm", a.rows(), a.cols(), b.rows(), b.cols());
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        auto acols = a.row_cols(i);
        auto avals = a.row_values(i);
        for (std::size_t p = 0; p < acols.size(); ++p) {
            auto brow = b.row(acols[p]);
            const double w = avals[p];
            for (std::size_t j = 0; j < brow.size(); ++j) out[j] += w * brow[j];
        }
    }
    return c;
}

DenseMatrix matmul(const DenseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) detail::throw_shape("matmul", a.rows(), a.cols(), b.rows(), b.cols());
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        auto arow = a.row(i);
        for (std::size_t k = 0; k < arow.size(); ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            auto bcols = b.row_cols(k);
            auto bvals = b.row_values(k);
            for (std::size_t q = 0; q < bcols.size(); ++q) out[bcols[q]] += aik * bvals[q];
        }
    }
    return c;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        detail::throw_shape("add", a.rows(), a.cols(), b.rows(), b.cols());
    std::vector<std::size_t> offsets(a.rows() + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ac = a.row_cols(i);
        auto av = a.row_values(i);
        auto bc = b.row_cols(i);
        auto bv = b.row_values(i);
        std::size_t p = 0, q = 0;
        auto emit = [&](Index c, double v) {
            if (v != 0.0) {
                cols.push_back(c);
                vals.push_back(v);
            }
        };
        while (p < ac.size() || q < bc.size()) {
            if (q == bc.size() || (p < ac.size() && ac[p] < bc[q])) {
                emit(ac[p], alpha * av[p]);
                ++p;
            } else if (p == ac.size() || bc[q] < ac[p]) {
                emit(bc[q], beta * bv[q]);
                ++q;
            } else {
                emit(ac[p], alpha * av[p] + beta * bv[q]);
                ++p;
                ++q;
            }
        }
        offsets[i + 1] = vals.size();
    }
    return SparseMatrix(a.rows(), a.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix scale(const SparseMatrix& a, double s) {
    std::vector<double> vals(a.values().begin(), a.values().end());
    for (double& v : vals) v *= s;
    return SparseMatrix(a.rows(), a.cols(), {a.row_offsets().begin(), a.row_offsets().end()},
                        {a.col_indices().begin(), a.col_indices().end()}, std::move(vals));
}

SparseMatrix symmetrize_max(const SparseMatrix& a) {
    if (!a.is_square()) throw ShapeError("symmetrize_max: matrix must be square");
    const SparseMatrix t = a.transposed();
    std::vector<std::size_t> offsets(a.rows() + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ac = a.row_cols(i);
        auto av = a.row_values(i);
        auto tc = t.row_cols(i);
        auto tv = t.row_values(i);
        std::size_t p = 0, q = 0;
        while (p < ac.size() || q < tc.size()) {
            Index c;
            double v;
            if (q == tc.size() || (p < ac.size() && ac[p] < tc[q])) {
                c = ac[p];
                v = std::max(av[p], 0.0);
                ++p;
            } else if (p == ac.size() || tc[q] < ac[p]) {
                c = tc[q];
                v = std::max(tv[q], 0.0);
                ++q;
            } else {
                c = ac[p];
                v = std::max(av[p], tv[q]);
                ++p;
                ++q;
            }
            if (v != 0.0) {
                cols.push_back(c);
                vals.push_back(v);
            }
        }
        offsets[i + 1] = vals.size();
    }
    return SparseMatrix(a.rows(), a.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

std::size_t product_flops(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) detail::throw_shape("product_flops", a.rows(), a.cols(), b.rows(), b.cols());
    std::size_t flops = 0;
    for (Index c : a.col_indices()) flops += b.row_offsets()[c + 1] - b.row_offsets()[c];
    return flops;
}

}  // namespace dsgc
