#pragma once

#include "dsgc/core/dense_matrix.hpp"
#include "dsgc/core/signal.hpp"
#include "dsgc/core/sparse_matrix.hpp"
#include "dsgc/core/random.hpp"
#include "dsgc/learn/config.hpp"

#include <cmath>

#include <span>
#include <vector>

namespace dsgc::detail {

inline DenseMatrix times(const Signal2D& x, const DenseMatrix& w) {
    return x.is_sparse() ? spmm(x.sparse(), w) : matmul(x.dense(), w);
}

inline Signal2D transposed(const Signal2D& x) {
    if (x.is_sparse()) return x.sparse().transposed();
    return x.dense().transposed();
}

/// aᵀ b without forming aᵀ.
inline DenseMatrix transpose_times(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.cols(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto ar = a.row(r);
        auto br = b.row(r);
        for (std::size_t i = 0; i < ar.size(); ++i) {
            const double v = ar[i];
            if (v == 0.0) continue;
            auto out = c.row(i);
            for (std::size_t j = 0; j < br.size(); ++j) out[j] += v * br[j];
        }
    }
    return c;
}

/// a bᵀ without forming bᵀ.
inline DenseMatrix times_transpose(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ar = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            auto br = b.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < ar.size(); ++k) s += ar[k] * br[k];
            c(i, j) = s;
        }
    }
    return c;
}

inline double activate(Activation a, double v) { return a == Activation::relu ? (v > 0.0 ? v : 0.0) : std::tanh(v); }

/// Derivative expressed through the activation output h.
inline double activate_grad(Activation a, double pre, double h) {
    return a == Activation::relu ? (pre > 0.0 ? 1.0 : 0.0) : 1.0 - h * h;
}

inline double squared_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.values()) s += v * v;
    return s;
}

void glorot_uniform(DenseMatrix& w, Rng& rng);

Signal2D gather_rows(const Signal2D& x, std::span<const std::size_t> rows);

}  // namespace dsgc::detail
