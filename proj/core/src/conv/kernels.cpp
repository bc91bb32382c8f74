#include "dsgc/conv/kernels.hpp"

#include "dsgc/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace dsgc {

namespace {

void check_coefficients(const std::vector<double>& theta, const char* name) {
    if (theta.empty()) throw ParameterError(std::string("separable kernel: ") + name + " is empty");
    if (!std::all_of(theta.begin(), theta.end(), [](double v) { return std::isfinite(v); }))
        throw ParameterError(std::string("separable kernel: ") + name + " has non-finite entries");
    if (std::all_of(theta.begin(), theta.end(), [](double v) { return v == 0.0; }))
        throw ParameterError(std::string("separable kernel: ") + name + " is identically zero");
}

}  // namespace

SpatialKernel::SpatialKernel(DenseMatrix coefficients) : coefficients_(std::move(coefficients)) {
    if (coefficients_.rows() == 0 || coefficients_.cols() == 0)
        throw ParameterError("SpatialKernel: coefficient matrix must be at least 1x1");
    if (!coefficients_.all_finite()) throw ParameterError("SpatialKernel: non-finite coefficient");
}

SeparableKernel::SeparableKernel(std::vector<double> theta1, std::vector<double> theta2)
    : theta1_(std::move(theta1)), theta2_(std::move(theta2)) {
    check_coefficients(theta1_, "theta1");
    check_coefficients(theta2_, "theta2");
}

SpatialKernel SeparableKernel::to_spatial() const {
    DenseMatrix theta(theta1_.size(), theta2_.size());
    for (std::size_t i = 0; i < theta1_.size(); ++i)
        for (std::size_t j = 0; j < theta2_.size(); ++j) theta(i, j) = theta1_[i] * theta2_[j];
    return SpatialKernel(std::move(theta));
}

std::pair<SeparableKernel, SpatialKernel> make_separable_kernel(std::vector<double> theta1,
                                                                std::vector<double> theta2) {
    SeparableKernel sep(std::move(theta1), std::move(theta2));
    SpatialKernel full = sep.to_spatial();
    return {std::move(sep), std::move(full)};
}

}  // namespace dsgc
