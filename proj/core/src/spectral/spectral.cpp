#include "dsgc/spectral/spectral.hpp"

#include "dsgc/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dsgc {

namespace {

constexpr int kMaxSweeps = 60;

double off_diagonal_norm2(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return s;
}

// Applies the rotation that annihilates a(p,q), updating eigenvector columns in v.
void rotate(DenseMatrix& a, DenseMatrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

void check_basis(const DenseMatrix& x, const EigenBasis& b1, const EigenBasis& b2, const char* where) {
    if (x.rows() != b1.size() || x.cols() != b2.size())
        detail::throw_shape(where, x.rows(), x.cols(), b1.size(), b2.size());
}

}  // namespace

EigenBasis eigendecompose(const DenseMatrix& symmetric, OperatorKind kind, std::size_t max_dim) {
    if (symmetric.rows() != symmetric.cols()) throw ShapeError("eigendecompose: operator must be square");
    const std::size_t n = symmetric.rows();
    if (n > max_dim)
        throw ParameterError("eigendecompose: dimension " + std::to_string(n) + " exceeds dense cap " +
                             std::to_string(max_dim));
    double scale = 1.0;
    for (double v : symmetric.values()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(symmetric(i, j) - symmetric(j, i)) > 1e-12 * scale)
                throw UnsupportedError("eigendecompose: operator is not symmetric; symmetrize directed graphs first");

    DenseMatrix a = symmetric;
    DenseMatrix v = DenseMatrix::identity(n);
    double total = 0.0;
    for (double x : a.values()) total += x * x;
    const double tol = 1e-28 * total;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm2(a) > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (a(p, q) != 0.0) rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    EigenBasis basis;
    basis.source_kind = kind;
    basis.values.resize(n);
    basis.vectors = DenseMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        basis.values[c] = a(order[c], order[c]);
        for (std::size_t k = 0; k < n; ++k) basis.vectors(k, c) = v(k, order[c]);
    }
    return basis;
}

EigenBasis eigendecompose(const NormalizedOperator& op, std::size_t max_dim) {
    if (op.matrix.rows() > max_dim)
        throw ParameterError("eigendecompose: dimension " + std::to_string(op.matrix.rows()) + " exceeds dense cap " +
                             std::to_string(max_dim));
    return eigendecompose(op.matrix.to_dense(), op.kind, max_dim);
}

Spectrum gft2d(const Signal2D& x, const EigenBasis& b1, const EigenBasis& b2) {
    const DenseMatrix xd = x.to_dense();
    check_basis(xd, b1, b2, "gft2d");
    return {matmul(matmul(b1.vectors.transposed(), xd), b2.vectors)};
}

DenseMatrix igft2d(const Spectrum& s, const EigenBasis& b1, const EigenBasis& b2) {
    check_basis(s.coefficients, b1, b2, "igft2d");
    return matmul(matmul(b1.vectors, s.coefficients), b2.vectors.transposed());
}

DenseMatrix spectral_conv(const Signal2D& x, const SpectralKernel& p, const EigenBasis& b1, const EigenBasis& b2) {
    Spectrum s = gft2d(x, b1, b2);
    if (p.gains.rows() != s.coefficients.rows() || p.gains.cols() != s.coefficients.cols())
        detail::throw_shape("spectral_conv", p.gains.rows(), p.gains.cols(), s.coefficients.rows(),
                            s.coefficients.cols());
    return igft2d({hadamard(s.coefficients, p.gains)}, b1, b2);
}

SpectralKernel polynomial_kernel(const SpatialKernel& theta, const EigenBasis& b1, const EigenBasis& b2) {
    const std::size_t n = b1.size();
    const std::size_t m = b2.size();
    // Powers λ_i^k and μ_j^k tabulated once.
    DenseMatrix lam(n, theta.order1() + 1, 1.0);
    DenseMatrix mu(m, theta.order2() + 1, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 1; k <= theta.order1(); ++k) lam(i, k) = lam(i, k - 1) * b1.values[i];
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 1; k <= theta.order2(); ++k) mu(j, k) = mu(j, k - 1) * b2.values[j];
    // P = Λ-powers · Θ · (M-powers)ᵀ
    return {matmul(matmul(lam, theta.coefficients()), mu.transposed())};
}

double reconstruction_residual(const EigenBasis& basis, const DenseMatrix& a) {
    DenseMatrix scaled = basis.vectors;
    for (std::size_t i = 0; i < scaled.rows(); ++i)
        for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= basis.values[j];
    return max_abs_diff(matmul(scaled, basis.vectors.transposed()), a);
}

}  // namespace dsgc
