#include "dsgc/core/signal.hpp"

#include "dsgc/core/error.hpp"

#include <string>

namespace dsgc {

std::size_t Signal2D::n_objects() const noexcept {
    return std::visit([](const auto& m) { return m.rows(); }, data_);
}

std::size_t Signal2D::n_attributes() const noexcept {
    return std::visit([](const auto& m) { return m.cols(); }, data_);
}

DenseMatrix Signal2D::to_dense() const {
    if (is_sparse()) return sparse().to_dense();
    return dense();
}

SparseMatrix Signal2D::to_sparse() const {
    if (is_sparse()) return sparse();
    return SparseMatrix::from_dense(dense());
}

std::size_t Signal2D::stored() const noexcept {
    if (is_sparse()) return std::get<SparseMatrix>(data_).nnz();
    return std::get<DenseMatrix>(data_).size();
}

void Signal2D::check_shape(std::size_t n, std::size_t m, const char* where) const {
    if (n_objects() != n || n_attributes() != m) {
        throw ShapeError(std::string(where) + ": signal is " + std::to_string(n_objects()) + "x" +
                         std::to_string(n_attributes()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(m));
    }
}

Signal2D materialize(DenseMatrix m, double dense_threshold) {
    std::size_t nz = 0;
    for (double v : m.values()) nz += v != 0.0;
    const double cells = static_cast<double>(m.size());
    if (cells > 0.0 && static_cast<double>(nz) / cells <= dense_threshold) return SparseMatrix::from_dense(m);
    return m;
}

Signal2D materialize(SparseMatrix m, double dense_threshold) {
    if (m.density() > dense_threshold) return m.to_dense();
    return m;
}

Signal2D left_multiply(const SparseMatrix& a, const Signal2D& x) {
    if (x.is_sparse()) return spmm(a, x.sparse());
    return spmm(a, x.dense());
}

Signal2D right_multiply(const Signal2D& x, const SparseMatrix& b) {
    if (x.is_sparse()) return spmm(x.sparse(), b);
    return matmul(x.dense(), b);
}

Signal2D mean_center(const Signal2D& x) {
    DenseMatrix d = x.to_dense();
    const std::size_t n = d.rows();
    if (n == 0) return d;
    std::vector<double> mean(d.cols(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = d.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) mean[j] += r[j];
    }
    for (double& v : mean) v /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = d.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= mean[j];
    }
    return d;
}

}  // namespace dsgc
