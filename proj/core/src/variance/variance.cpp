#include "dsgc/variance/variance.hpp"

#include "dsgc/core/error.hpp"
#include "dsgc/core/random.hpp"

#include <algorithm>
#include <cmath>

namespace dsgc {

namespace {

void check_labels(const Signal2D& x, const LabelVector& y, const char* where) {
    if (x.n_objects() != y.size())
        throw ShapeError(std::string(where) + ": signal has " + std::to_string(x.n_objects()) + " rows but " +
                         std::to_string(y.size()) + " labels");
}

// Per-class means (K×m) and counts; works on either storage.
std::pair<DenseMatrix, std::vector<std::size_t>> class_means_of(const Signal2D& x, const LabelVector& y) {
    const auto k = static_cast<std::size_t>(y.num_classes());
    DenseMatrix means(k, x.n_attributes());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < y.size(); ++i) ++counts[static_cast<std::size_t>(y[i])];
    if (x.is_sparse()) {
        const auto& s = x.sparse();
        for (std::size_t i = 0; i < s.rows(); ++i) {
            auto out = means.row(static_cast<std::size_t>(y[i]));
            auto cols = s.row_cols(i);
            auto vals = s.row_values(i);
            for (std::size_t p = 0; p < cols.size(); ++p) out[cols[p]] += vals[p];
        }
    } else {
        const auto& d = x.dense();
        for (std::size_t i = 0; i < d.rows(); ++i) {
            auto out = means.row(static_cast<std::size_t>(y[i]));
            auto r = d.row(i);
            for (std::size_t j = 0; j < r.size(); ++j) out[j] += r[j];
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        for (double& v : means.row(c)) v /= static_cast<double>(counts[c]);
    }
    return {std::move(means), std::move(counts)};
}

// Σ_j (x_ij − c_j)² for a row of either storage.
double squared_distance(const Signal2D& x, std::size_t i, std::span<const double> c, double c_norm2) {
    if (!x.is_sparse()) {
        auto r = x.dense().row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            const double d = r[j] - c[j];
            s += d * d;
        }
        return s;
    }
    // ‖c‖² plus corrections on the stored entries.
    const auto& sp = x.sparse();
    auto cols = sp.row_cols(i);
    auto vals = sp.row_values(i);
    double s = c_norm2;
    for (std::size_t p = 0; p < cols.size(); ++p) {
        const double cj = c[cols[p]];
        const double d = vals[p] - cj;
        s += d * d - cj * cj;
    }
    return s;
}

}  // namespace

ClassStats variance_decomposition(const Signal2D& x_in, const LabelVector& y, bool center) {
    check_labels(x_in, y, "variance_decomposition");
    const Signal2D x = center ? mean_center(x_in) : x_in;
    const std::size_t n = x.n_objects();
    const std::size_t m = x.n_attributes();
    auto [means, counts] = class_means_of(x, y);
    const auto k = static_cast<std::size_t>(y.num_classes());
    const auto populated = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; });
    if (populated < 2) throw DegenerateLabelsError("variance_decomposition: need at least two populated classes");

    ClassStats st;
    st.n = n;
    st.num_classes = y.num_classes();
    st.class_priors.resize(k);
    std::vector<double> grand(m, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        st.class_priors[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
        auto row = means.row(c);
        for (std::size_t j = 0; j < m; ++j) grand[j] += st.class_priors[c] * row[j];
    }
    std::vector<double> mean_norm2(k, 0.0);
    for (std::size_t c = 0; c < k; ++c)
        for (double v : means.row(c)) mean_norm2[c] += v * v;
    double grand_norm2 = 0.0;
    for (double v : grand) grand_norm2 += v * v;

    std::vector<double> within(k, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(y[i]);
        within[c] += squared_distance(x, i, means.row(c), mean_norm2[c]);
        total += squared_distance(x, i, grand, grand_norm2);
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        st.intra_variance += st.class_priors[c] * (within[c] / static_cast<double>(counts[c]));
        double d2 = 0.0;
        auto row = means.row(c);
        for (std::size_t j = 0; j < m; ++j) d2 += (row[j] - grand[j]) * (row[j] - grand[j]);
        st.inter_variance += st.class_priors[c] * d2;
    }
    st.intra_variance = std::max(st.intra_variance, 0.0);
    st.total_variance = total / static_cast<double>(n);
    if (!(st.inter_variance > 0.0))
        throw DegenerateLabelsError("variance_decomposition: class means coincide (inter-class variance is 0)");
    st.ratio = st.intra_variance / st.inter_variance;
    st.class_means = std::move(means);
    return st;
}

ClassMeanProfiles class_mean_profiles(const Signal2D& x, const LabelVector& y, const FilterMatrix& f) {
    check_labels(x, y, "class_mean_profiles");
    if (f.side() != FilterSide::attribute) throw ShapeError("class_mean_profiles: F must be an attribute-side filter");
    if (f.size() != x.n_attributes())
        detail::throw_shape("class_mean_profiles", x.n_objects(), x.n_attributes(), f.size(), f.size());
    auto [means, counts] = class_means_of(x, y);
    ClassMeanProfiles out;
    out.profiles = means.transposed();
    // ê = Fᵀ E, i.e. ê_j = Σ_i F_ij e_i.
    out.filtered_profiles = spmm(f.matrix().transposed(), out.profiles);
    return out;
}

void SbmParams::validate() const {
    if (num_classes <= 0) throw ParameterError("sbm: class count must be positive");
    if (n == 0 || n % static_cast<std::size_t>(num_classes) != 0)
        throw ParameterError("sbm: n must be a positive multiple of K for balanced classes");
    if (!(0.0 <= q && q <= r && r <= 1.0)) throw ParameterError("sbm: need 0 <= q <= r <= 1");
}

std::pair<Graph, LabelVector> sample_sbm(const SbmParams& p) {
    p.validate();
    const std::size_t block = p.n / static_cast<std::size_t>(p.num_classes);
    std::vector<int> labels(p.n);
    for (std::size_t i = 0; i < p.n; ++i) labels[i] = static_cast<int>(i / block);
    Rng rng(p.seed);
    std::vector<Triplet> edges;
    for (std::size_t i = 0; i < p.n; ++i) {
        for (std::size_t j = i + 1; j < p.n; ++j) {
            const double prob = labels[i] == labels[j] ? p.r : p.q;
            if (uniform01(rng) < prob) {
                edges.push_back({static_cast<Index>(i), static_cast<Index>(j), 1.0});
                edges.push_back({static_cast<Index>(j), static_cast<Index>(i), 1.0});
            }
        }
    }
    Graph g(SparseMatrix::from_triplets(p.n, p.n, std::move(edges)), false);
    return {std::move(g), LabelVector(std::move(labels), p.num_classes)};
}

DenseMatrix sample_class_features(const LabelVector& y, const DenseMatrix& means, double noise_scale,
                                  std::uint64_t seed) {
    if (noise_scale < 0.0) throw ParameterError("sample_class_features: noise_scale must be >= 0");
    if (means.rows() != static_cast<std::size_t>(y.num_classes()))
        throw ShapeError("sample_class_features: means must have one row per class");
    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    DenseMatrix x(y.size(), means.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        auto mu = means.row(static_cast<std::size_t>(y[i]));
        auto r = x.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = mu[j] + noise_scale * noise(rng);
    }
    return x;
}

SparseMatrix sinkhorn_doubly_stochastic(const SparseMatrix& a, std::size_t max_iters, double tol) {
    if (!a.is_square()) throw ShapeError("sinkhorn: matrix must be square");
    for (double v : a.values())
        if (v < 0.0) throw DataError("sinkhorn: negative entry");
    const auto rs = a.row_sums();
    const auto cs = a.col_sums();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (rs[i] <= 0.0) throw DataError("sinkhorn: row " + std::to_string(i) + " has no support");
        if (cs[i] <= 0.0) throw DataError("sinkhorn: column " + std::to_string(i) + " has no support");
    }
    const std::size_t n = a.rows();
    std::vector<double> r(n, 1.0), c(n, 1.0), acc(n);
    auto scaled = [&] {
        std::vector<double> vals(a.values().begin(), a.values().end());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t p = a.row_offsets()[i]; p < a.row_offsets()[i + 1]; ++p)
                vals[p] *= r[i] * c[a.col_indices()[p]];
        return SparseMatrix(n, n, {a.row_offsets().begin(), a.row_offsets().end()},
                            {a.col_indices().begin(), a.col_indices().end()}, std::move(vals));
    };
    for (std::size_t it = 0; it < max_iters; ++it) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t p = a.row_offsets()[i]; p < a.row_offsets()[i + 1]; ++p)
                acc[i] += a.values()[p] * c[a.col_indices()[p]];
        for (std::size_t i = 0; i < n; ++i) r[i] = 1.0 / acc[i];
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t p = a.row_offsets()[i]; p < a.row_offsets()[i + 1]; ++p)
                acc[a.col_indices()[p]] += a.values()[p] * r[i];
        for (std::size_t j = 0; j < n; ++j) c[j] = 1.0 / acc[j];

        SparseMatrix s = scaled();
        double worst = 0.0;
        for (double v : s.row_sums()) worst = std::max(worst, std::abs(v - 1.0));
        for (double v : s.col_sums()) worst = std::max(worst, std::abs(v - 1.0));
        if (worst <= tol) return s;
    }
    throw ConvergenceError("sinkhorn: no convergence to tolerance " + std::to_string(tol) + " within " +
                           std::to_string(max_iters) + " iterations");
}

double intra_class_edge_ratio(const Graph& g, const LabelVector& y) {
    if (g.size() != y.size()) throw ShapeError("intra_class_edge_ratio: graph and labels differ in size");
    const auto& a = g.adjacency();
    std::size_t same = 0, all = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (Index j : a.row_cols(i)) {
            if (j == i) continue;
            ++all;
            same += y[i] == y[j];
        }
    }
    return all == 0 ? 0.0 : static_cast<double>(same) / static_cast<double>(all);
}

}  // namespace dsgc
