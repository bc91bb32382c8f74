#pragma once

#include "dsgc/core/graph.hpp"
#include "dsgc/core/sparse_matrix.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

namespace dsgc {

enum class FilterSide { object, attribute };

std::string_view to_string(FilterSide side) noexcept;

/// Named construction recipe plus its parameters, carried with every filter
/// so that reports can state exactly which filter produced a result.
struct FilterRecipe {
    std::string name;
    std::map<std::string, std::string> params;

    /// `name(key=value,...)`
    std::string tag() const;
};

/// A square filter applied on one side of a 2-D signal: G on objects (left), F on attributes (right).
class FilterMatrix {
public:
    FilterMatrix(SparseMatrix matrix, FilterSide side, FilterRecipe recipe);

    const SparseMatrix& matrix() const noexcept { return matrix_; }
    FilterSide side() const noexcept { return side_; }
    const FilterRecipe& recipe() const noexcept { return recipe_; }
    std::size_t size() const noexcept { return matrix_.rows(); }

    static FilterMatrix identity(std::size_t n, FilterSide side);

private:
    SparseMatrix matrix_;
    FilterSide side_;
    FilterRecipe recipe_;
};

/// G = (D⁻¹A)², the two-step row-normalized random walk. Isolated vertices
/// keep their own row (self-preservation).
FilterMatrix build_object_filter(const Graph& g);

/// F = ½(I + D⁻½AD⁻½), the one-step lazy random walk. Requires an undirected
/// graph. An isolated attribute gets ½ on its diagonal and is not rescaled.
FilterMatrix build_attribute_filter(const Graph& g);

/// Renormalized propagation D̃⁻½(A+I)D̃⁻½ used by the two-layer GCN.
FilterMatrix build_gcn_filter(const Graph& g);

/// Σ θ_k L^k on the object side, or Σ θ_k (L^k)ᵀ on the attribute side.
/// Materializes the polynomial; prefer the signal-side recurrences for filtering.
FilterMatrix polynomial_filter(const NormalizedOperator& l, std::span<const double> theta, FilterSide side);

/// Writes `<path>` as .smtx and `<path>.json` with side, size and recipe.
void save_filter(const std::filesystem::path& path, const FilterMatrix& f);
FilterMatrix load_filter(const std::filesystem::path& path);

}  // namespace dsgc
