#pragma once

#include "dsgc/core/dense_matrix.hpp"

#include <utility>
#include <vector>

namespace dsgc {

/// Coefficients θ_{k1k2} of a bivariate polynomial kernel, shape (K₁+1)×(K₂+1).
class SpatialKernel {
public:
    SpatialKernel() : coefficients_(1, 1, 1.0) {}
    explicit SpatialKernel(DenseMatrix coefficients);

    std::size_t order1() const noexcept { return coefficients_.rows() - 1; }
    std::size_t order2() const noexcept { return coefficients_.cols() - 1; }
    double operator()(std::size_t k1, std::size_t k2) const noexcept { return coefficients_(k1, k2); }
    const DenseMatrix& coefficients() const noexcept { return coefficients_; }

private:
    DenseMatrix coefficients_;
};

/// Rank-one kernel Θ = θ⁽¹⁾θ⁽²⁾ᵀ kept in factored form.
class SeparableKernel {
public:
    SeparableKernel(std::vector<double> theta1, std::vector<double> theta2);

    const std::vector<double>& theta1() const noexcept { return theta1_; }
    const std::vector<double>& theta2() const noexcept { return theta2_; }
    std::size_t order1() const noexcept { return theta1_.size() - 1; }
    std::size_t order2() const noexcept { return theta2_.size() - 1; }

    SpatialKernel to_spatial() const;

private:
    std::vector<double> theta1_;
    std::vector<double> theta2_;
};

/// The factored kernel together with its outer-product Θ.
std::pair<SeparableKernel, SpatialKernel> make_separable_kernel(std::vector<double> theta1,
                                                                std::vector<double> theta2);

}  // namespace dsgc
