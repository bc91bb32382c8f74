#include "dsgc/conv/filters.hpp"

#include "dsgc/core/error.hpp"
#include "dsgc/core/smtx.hpp"

#include <json.hpp>

#include <fstream>

namespace dsgc {

std::string_view to_string(FilterSide side) noexcept { return side == FilterSide::object ? "object" : "attribute"; }

std::string FilterRecipe::tag() const {
    std::string out = name + "(";
    bool first = true;
    for (const auto& [k, v] : params) {
        if (!first) out += ",";
        out += k + "=" + v;
        first = false;
    }
    return out + ")";
}

FilterMatrix::FilterMatrix(SparseMatrix matrix, FilterSide side, FilterRecipe recipe)
    : matrix_(std::move(matrix)), side_(side), recipe_(std::move(recipe)) {
    if (!matrix_.is_square()) throw ShapeError("FilterMatrix: filter must be square");
}

FilterMatrix FilterMatrix::identity(std::size_t n, FilterSide side) {
    return FilterMatrix(SparseMatrix::identity(n), side, {"identity", {}});
}

FilterMatrix build_object_filter(const Graph& g) {
    const auto p = normalize(g, OperatorKind::row_stochastic);
    return FilterMatrix(spmm(p.matrix, p.matrix), FilterSide::object, {"row_walk", {{"power", "2"}}});
}

FilterMatrix build_attribute_filter(const Graph& g) {
    if (g.directed()) throw UnsupportedError("build_attribute_filter: attribute graph must be undirected");
    const auto s = normalize(g, OperatorKind::sym_normalized);
    return FilterMatrix(add(SparseMatrix::identity(g.size()), s.matrix, 0.5, 0.5), FilterSide::attribute,
                        {"lazy_walk", {{"alpha", "0.5"}}});
}

FilterMatrix build_gcn_filter(const Graph& g) {
    if (g.directed()) throw UnsupportedError("build_gcn_filter: object graph must be undirected");
    const Graph with_loops(add(g.adjacency(), SparseMatrix::identity(g.size())), false);
    return FilterMatrix(normalize(with_loops, OperatorKind::sym_normalized).matrix, FilterSide::object,
                        {"gcn_renormalized", {}});
}

FilterMatrix polynomial_filter(const NormalizedOperator& l, std::span<const double> theta, FilterSide side) {
    if (theta.empty()) throw ParameterError("polynomial_filter: empty coefficient vector");
    const std::size_t n = l.matrix.rows();
    const SparseMatrix eye = SparseMatrix::identity(n);
    SparseMatrix p = scale(eye, theta.back());
    for (std::size_t k = theta.size() - 1; k-- > 0;) p = add(spmm(p, l.matrix), eye, 1.0, theta[k]);
    if (side == FilterSide::attribute) p = p.transposed();
    FilterRecipe recipe{"polynomial", {{"operator", std::string(to_string(l.kind))}, {"order", std::to_string(theta.size() - 1)}}};
    for (std::size_t k = 0; k < theta.size(); ++k) recipe.params["theta" + std::to_string(k)] = format_exact(theta[k]);
    return FilterMatrix(std::move(p), side, std::move(recipe));
}

void save_filter(const std::filesystem::path& path, const FilterMatrix& f) {
    write_smtx(path, f.matrix());
    nlohmann::ordered_json meta;
    meta["side"] = std::string(to_string(f.side()));
    meta["size"] = f.size();
    meta["recipe"] = f.recipe().name;
    meta["params"] = f.recipe().params;
    meta["tag"] = f.recipe().tag();
    std::ofstream out(path.string() + ".json");
    if (!out) throw IoError("cannot write " + path.string() + ".json");
    out << meta.dump(2) << '\n';
}

FilterMatrix load_filter(const std::filesystem::path& path) {
    SparseMatrix m = read_smtx(path);
    const std::string sidecar = path.string() + ".json";
    std::ifstream in(sidecar);
    if (!in) throw DataError("missing filter sidecar " + sidecar);
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(sidecar + ": " + e.what());
    }
    const std::string side = meta.value("side", "");
    if (side != "object" && side != "attribute") throw DataError(sidecar + ": side must be object or attribute");
    FilterRecipe recipe{meta.value("recipe", ""), {}};
    if (meta.contains("params")) recipe.params = meta["params"].get<std::map<std::string, std::string>>();
    return FilterMatrix(std::move(m), side == "object" ? FilterSide::object : FilterSide::attribute, std::move(recipe));
}

}  // namespace dsgc
