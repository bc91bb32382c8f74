#include "dsgc/conv/convolution.hpp"

#include "dsgc/core/error.hpp"

#include <algorithm>

namespace dsgc {

namespace {

void check_operators(const Signal2D& x, const NormalizedOperator& l1, const NormalizedOperator& l2, const char* where) {
    if (!l1.matrix.is_square() || !l2.matrix.is_square()) throw ShapeError(std::string(where) + ": operators must be square");
    x.check_shape(l1.matrix.rows(), l2.matrix.rows(), where);
}

// acc <- acc + s * y
void axpy(DenseMatrix& acc, double s, const DenseMatrix& y) {
    if (s == 0.0) return;
    auto a = acc.values();
    auto v = y.values();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * v[i];
}

DenseMatrix right_horner(const DenseMatrix& y, const SparseMatrix& l2t, std::span<const double> theta,
                         ConvCounter* counter) {
    DenseMatrix w(y.rows(), y.cols());
    axpy(w, theta.back(), y);
    for (std::size_t k = theta.size() - 1; k-- > 0;) {
        w = matmul(w, l2t);
        if (counter) ++counter->operator_products;
        axpy(w, theta[k], y);
    }
    return w;
}

void check_filters(const Signal2D& x, const FilterMatrix& g, const FilterMatrix& f) {
    if (g.side() != FilterSide::object) throw ShapeError("dsgc: G must be an object-side filter");
    if (f.side() != FilterSide::attribute) throw ShapeError("dsgc: F must be an attribute-side filter");
    x.check_shape(g.size(), f.size(), "dsgc");
}

}  // namespace

DenseMatrix spatial_conv2d(const Signal2D& x, const NormalizedOperator& l1, const NormalizedOperator& l2,
                           const SpatialKernel& theta, ConvCounter* counter) {
    check_operators(x, l1, l2, "spatial_conv2d");
    const SparseMatrix l2t = l2.matrix.transposed();
    const auto& coeff = theta.coefficients();
    DenseMatrix y = x.to_dense();
    DenseMatrix z(y.rows(), y.cols());
    for (std::size_t k1 = 0; k1 <= theta.order1(); ++k1) {
        if (k1 > 0) {
            y = spmm(l1.matrix, y);
            if (counter) ++counter->operator_products;
        }
        axpy(z, 1.0, right_horner(y, l2t, coeff.row(k1), counter));
    }
    return z;
}

DenseMatrix separable_conv2d(const Signal2D& x, const NormalizedOperator& l1, const NormalizedOperator& l2,
                             const SeparableKernel& kernel, ConvCounter* counter) {
    check_operators(x, l1, l2, "separable_conv2d");
    const DenseMatrix xd = x.to_dense();
    const auto& t1 = kernel.theta1();
    DenseMatrix a(xd.rows(), xd.cols());
    axpy(a, t1.back(), xd);
    for (std::size_t k = t1.size() - 1; k-- > 0;) {
        a = spmm(l1.matrix, a);
        if (counter) ++counter->operator_products;
        axpy(a, t1[k], xd);
    }
    return right_horner(a, l2.matrix.transposed(), kernel.theta2(), counter);
}

Association choose_association(const Signal2D& x, const FilterMatrix& g, const FilterMatrix& f) {
    const double n = static_cast<double>(x.n_objects());
    const double m = static_cast<double>(x.n_attributes());
    if (n == 0.0 || m == 0.0) return Association::object_first;
    const double nnz_g = static_cast<double>(g.matrix().nnz());
    const double nnz_f = static_cast<double>(f.matrix().nnz());
    const double flops_gx = x.is_sparse() ? static_cast<double>(product_flops(g.matrix(), x.sparse())) : nnz_g * m;
    const double flops_xf = x.is_sparse() ? static_cast<double>(product_flops(x.sparse(), f.matrix())) : n * nnz_f;
    const double nnz_gx = std::min(flops_gx, n * m);
    const double nnz_xf = std::min(flops_xf, n * m);
    const double object_first = flops_gx + nnz_gx * (nnz_f / m);
    const double attribute_first = flops_xf + nnz_g * (nnz_xf / n);
    return attribute_first < object_first ? Association::attribute_first : Association::object_first;
}

Signal2D dsgc(const Signal2D& x, const FilterMatrix& g, const FilterMatrix& f, Association order,
              ConvCounter* counter) {
    check_filters(x, g, f);
    if (order == Association::automatic) order = choose_association(x, g, f);
    Signal2D z;
    if (order == Association::object_first) {
        z = right_multiply(left_multiply(g.matrix(), x), f.matrix());
    } else {
        z = left_multiply(g.matrix(), right_multiply(x, f.matrix()));
    }
    if (counter) counter->operator_products += 2;
    if (z.is_sparse()) return materialize(z.sparse());
    return materialize(z.dense());
}

Signal2D apply_object_filter(const Signal2D& x, const FilterMatrix& g) {
    if (g.side() != FilterSide::object) throw ShapeError("apply_object_filter: expected an object-side filter");
    if (x.n_objects() != g.size()) detail::throw_shape("apply_object_filter", g.size(), g.size(), x.n_objects(), x.n_attributes());
    Signal2D z = left_multiply(g.matrix(), x);
    if (z.is_sparse()) return materialize(z.sparse());
    return materialize(z.dense());
}

Signal2D apply_attribute_filter(const Signal2D& x, const FilterMatrix& f) {
    if (f.side() != FilterSide::attribute) throw ShapeError("apply_attribute_filter: expected an attribute-side filter");
    if (x.n_attributes() != f.size()) detail::throw_shape("apply_attribute_filter", x.n_objects(), x.n_attributes(), f.size(), f.size());
    Signal2D z = right_multiply(x, f.matrix());
    if (z.is_sparse()) return materialize(z.sparse());
    return materialize(z.dense());
}

}  // namespace dsgc
