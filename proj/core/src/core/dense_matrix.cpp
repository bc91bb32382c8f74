#include "dsgc/core/dense_matrix.hpp"

#include "dsgc/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace dsgc {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
        throw ShapeError("DenseMatrix: " + std::to_string(values_.size()) + " values for a " +
                         std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    values_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("DenseMatrix: ragged initializer");
        values_.insert(values_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool DenseMatrix::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) detail::throw_shape("matmul", a.rows(), a.cols(), b.rows(), b.cols());
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
        }
    }
    return c;
}

namespace {

template <class Op>
DenseMatrix zip(const DenseMatrix& a, const DenseMatrix& b, const char* where, Op op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        detail::throw_shape(where, a.rows(), a.cols(), b.rows(), b.cols());
    DenseMatrix c(a.rows(), a.cols());
    auto av = a.values();
    auto bv = b.values();
    auto cv = c.values();
    for (std::size_t i = 0; i < cv.size(); ++i) cv[i] = op(av[i], bv[i]);
    return c;
}

}  // namespace

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    return zip(a, b, "operator+", [](double x, double y) { return x + y; });
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    return zip(a, b, "operator-", [](double x, double y) { return x - y; });
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
    return zip(a, b, "hadamard", [](double x, double y) { return x * y; });
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix c = a;
    for (double& v : c.values()) v *= s;
    return c;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        detail::throw_shape("max_abs_diff", a.rows(), a.cols(), b.rows(), b.cols());
    double worst = 0.0;
    auto av = a.values();
    auto bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) worst = std::max(worst, std::abs(av[i] - bv[i]));
    return worst;
}

}  // namespace dsgc
