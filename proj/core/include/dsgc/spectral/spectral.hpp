#pragma once

#include "dsgc/conv/kernels.hpp"
#include "dsgc/core/dense_matrix.hpp"
#include "dsgc/core/graph.hpp"
#include "dsgc/core/signal.hpp"

#include <vector>

namespace dsgc {

/// Dense size limit for the spectral path.
inline constexpr std::size_t kDefaultDenseCap = 512;

/// Orthonormal eigenvectors (columns) and ascending eigenvalues of a symmetric operator.
struct EigenBasis {
    DenseMatrix vectors;
    std::vector<double> values;
    OperatorKind source_kind = OperatorKind::laplacian_sym;

    std::size_t size() const noexcept { return values.size(); }
};

/// Fourier coefficients S of a 2-D signal.
struct Spectrum {
    DenseMatrix coefficients;
};

/// Per-frequency gains P applied entrywise to a spectrum.
struct SpectralKernel {
    DenseMatrix gains;
};

/// Cyclic Jacobi eigendecomposition. Throws UnsupportedError for a non-symmetric
/// operator and ParameterError when n exceeds `max_dim`.
EigenBasis eigendecompose(const NormalizedOperator& op, std::size_t max_dim = kDefaultDenseCap);
EigenBasis eigendecompose(const DenseMatrix& symmetric, OperatorKind kind, std::size_t max_dim = kDefaultDenseCap);

/// S = Uᵀ X V (bases are orthonormal).
Spectrum gft2d(const Signal2D& x, const EigenBasis& b1, const EigenBasis& b2);
/// X = U S Vᵀ.
DenseMatrix igft2d(const Spectrum& s, const EigenBasis& b1, const EigenBasis& b2);
/// Z = U (S ∘ P) Vᵀ.
DenseMatrix spectral_conv(const Signal2D& x, const SpectralKernel& p, const EigenBasis& b1, const EigenBasis& b2);
/// P_ij = Σ θ_{k1k2} λ_i^{k1} μ_j^{k2}.
SpectralKernel polynomial_kernel(const SpatialKernel& theta, const EigenBasis& b1, const EigenBasis& b2);

/// max |U diag(λ) Uᵀ − A|.
double reconstruction_residual(const EigenBasis& basis, const DenseMatrix& a);

}  // namespace dsgc
