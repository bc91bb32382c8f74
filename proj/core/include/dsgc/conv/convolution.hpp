#pragma once

#include "dsgc/conv/filters.hpp"
#include "dsgc/conv/kernels.hpp"
#include "dsgc/core/graph.hpp"
#include "dsgc/core/signal.hpp"

namespace dsgc {

/// Counts products of a sparse operator with a full signal.
struct ConvCounter {
    std::size_t operator_products = 0;
};

/// General 2-D spatial convolution Z = Σ θ_{k1k2} L₁^{k1} X (L₂^{k2})ᵀ.
///
/// Powers are never formed: L₁^{k1}X is built by repeated products with the
/// signal and each row of Θ is folded in with a Horner recurrence on L₂ᵀ,
/// for K₁K₂ + K₁ + K₂ operator products in total.
DenseMatrix spatial_conv2d(const Signal2D& x, const NormalizedOperator& l1, const NormalizedOperator& l2,
                           const SpatialKernel& theta, ConvCounter* counter = nullptr);

/// Rank-one special case evaluated as (Σθ⁽¹⁾L₁^k) X (Σθ⁽²⁾L₂^k)ᵀ with two
/// Horner recurrences: exactly K₁ + K₂ operator products.
DenseMatrix separable_conv2d(const Signal2D& x, const NormalizedOperator& l1, const NormalizedOperator& l2,
                             const SeparableKernel& kernel, ConvCounter* counter = nullptr);

enum class Association { automatic, object_first, attribute_first };

/// Z = G X F. With `automatic`, (GX)F or G(XF) is picked by estimated flops.
/// The result is dense when more than 25% of entries are nonzero.
Signal2D dsgc(const Signal2D& x, const FilterMatrix& g, const FilterMatrix& f,
              Association order = Association::automatic, ConvCounter* counter = nullptr);

/// Object-side filtering only: Z = G X.
Signal2D apply_object_filter(const Signal2D& x, const FilterMatrix& g);
/// Attribute-side filtering only: Z = X F.
Signal2D apply_attribute_filter(const Signal2D& x, const FilterMatrix& f);

/// The order `automatic` resolves to for these operands.
Association choose_association(const Signal2D& x, const FilterMatrix& g, const FilterMatrix& f);

}  // namespace dsgc
