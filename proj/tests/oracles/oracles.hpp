#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the plain data types.

#include "dsgc/core/dense_matrix.hpp"
#include "dsgc/core/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Grid = std::vector<std::vector<double>>;

inline Grid grid(const dsgc::DenseMatrix& m) {
    Grid g(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
    return g;
}

inline Grid grid(const dsgc::SparseMatrix& m) {
    Grid g(m.rows(), std::vector<double>(m.cols(), 0.0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto c = m.row_cols(i);
        auto v = m.row_values(i);
        for (std::size_t p = 0; p < c.size(); ++p) g[i][c[p]] = v[p];
    }
    return g;
}

inline Grid multiply(const Grid& a, const Grid& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Grid c(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
            c[i][j] = s;
        }
    return c;
}

inline Grid transpose(const Grid& a) {
    Grid t(a.empty() ? 0 : a[0].size(), std::vector<double>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline Grid eye(std::size_t n) {
    Grid g(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = 1.0;
    return g;
}

inline Grid power(const Grid& a, std::size_t k) {
    Grid r = eye(a.size());
    for (std::size_t i = 0; i < k; ++i) r = multiply(r, a);
    return r;
}

inline double max_diff(const Grid& a, const Grid& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}

inline double max_diff(const dsgc::DenseMatrix& a, const Grid& b) { return max_diff(grid(a), b); }

/// Σ θ_{k1k2} L1^{k1} X (L2^{k2})ᵀ with every power formed explicitly.
inline Grid spatial_conv(const Grid& x, const Grid& l1, const Grid& l2, const Grid& theta) {
    Grid z(x.size(), std::vector<double>(x.empty() ? 0 : x[0].size(), 0.0));
    for (std::size_t k1 = 0; k1 < theta.size(); ++k1)
        for (std::size_t k2 = 0; k2 < theta[k1].size(); ++k2) {
            const Grid term = multiply(multiply(power(l1, k1), x), transpose(power(l2, k2)));
            for (std::size_t i = 0; i < z.size(); ++i)
                for (std::size_t j = 0; j < z[i].size(); ++j) z[i][j] += theta[k1][k2] * term[i][j];
        }
    return z;
}

/// Co-occurrence weights and PPMI by enumerating every position pair of every
/// document, accumulating in (document, position, distance) order.
struct PpmiOracle {
    Grid pair;
    std::vector<double> unigram;
    double total = 0.0;
    Grid ppmi;
};

inline PpmiOracle brute_force_ppmi(const std::vector<std::vector<std::uint32_t>>& docs, std::size_t m,
                                   std::size_t window, bool inverse_distance) {
    PpmiOracle o;
    o.pair.assign(m, std::vector<double>(m, 0.0));
    for (const auto& d : docs)
        for (std::size_t p = 0; p < d.size(); ++p)
            for (std::size_t q = p + 1; q < d.size(); ++q) {
                if (q - p > window) continue;
                const double w = inverse_distance ? 1.0 / static_cast<double>(q - p) : 1.0;
                o.pair[d[p]][d[q]] += w;
                o.pair[d[q]][d[p]] += w;
            }
    o.unigram.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) o.unigram[i] += o.pair[i][j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) o.total += o.pair[i][j];
    o.ppmi.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || o.pair[i][j] <= 0.0) continue;
            const double v = std::log((o.pair[i][j] / o.total) / ((o.unigram[i] / o.total) * (o.unigram[j] / o.total)));
            o.ppmi[i][j] = v > 0.0 ? v : 0.0;
        }
    return o;
}

/// Best accuracy over every injective map from clusters to classes (K small).
inline double permutation_accuracy(const std::vector<int>& pred, const std::vector<int>& truth, int k_pred, int k_truth) {
    const int k = std::max(k_pred, k_truth);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t hit = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) hit += perm[static_cast<std::size_t>(pred[i])] == truth[i];
        best = std::max(best, hit);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return pred.empty() ? 0.0 : static_cast<double>(best) / static_cast<double>(pred.size());
}

/// Random symmetric nonnegative adjacency with zero diagonal.
inline dsgc::SparseMatrix random_symmetric_adjacency(std::size_t n, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<dsgc::Triplet> t;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (u(rng) < density) {
                const double w = 0.1 + u(rng);
                t.push_back({static_cast<dsgc::Index>(i), static_cast<dsgc::Index>(j), w});
                t.push_back({static_cast<dsgc::Index>(j), static_cast<dsgc::Index>(i), w});
            }
    return dsgc::SparseMatrix::from_triplets(n, n, std::move(t));
}

inline dsgc::DenseMatrix random_dense(std::size_t r, std::size_t c, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    dsgc::DenseMatrix m(r, c);
    for (double& v : m.values()) v = u(rng);
    return m;
}

inline dsgc::SparseMatrix random_sparse(std::size_t r, std::size_t c, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<dsgc::Triplet> t;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (u(rng) < density) t.push_back({static_cast<dsgc::Index>(i), static_cast<dsgc::Index>(j), 2.0 * u(rng) - 1.0});
    return dsgc::SparseMatrix::from_triplets(r, c, std::move(t));
}

/// Law-of-total-variance pieces by direct two-pass formulas on a dense grid.
struct VarianceOracle {
    double total = 0.0, intra = 0.0, inter = 0.0;
};

inline VarianceOracle variance(const Grid& x, const std::vector<int>& y, int k) {
    const std::size_t n = x.size(), m = x.empty() ? 0 : x[0].size();
    VarianceOracle o;
    std::vector<double> mu(m, 0.0);
    for (const auto& r : x)
        for (std::size_t j = 0; j < m; ++j) mu[j] += r[j] / static_cast<double>(n);
    for (const auto& r : x)
        for (std::size_t j = 0; j < m; ++j) o.total += (r[j] - mu[j]) * (r[j] - mu[j]) / static_cast<double>(n);
    for (int c = 0; c < k; ++c) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (y[i] == c) idx.push_back(i);
        if (idx.empty()) continue;
        std::vector<double> mc(m, 0.0);
        for (auto i : idx)
            for (std::size_t j = 0; j < m; ++j) mc[j] += x[i][j] / static_cast<double>(idx.size());
        const double prior = static_cast<double>(idx.size()) / static_cast<double>(n);
        double within = 0.0, between = 0.0;
        for (auto i : idx)
            for (std::size_t j = 0; j < m; ++j) within += (x[i][j] - mc[j]) * (x[i][j] - mc[j]);
        for (std::size_t j = 0; j < m; ++j) between += (mc[j] - mu[j]) * (mc[j] - mu[j]);
        o.intra += prior * within / static_cast<double>(idx.size());
        o.inter += prior * between;
    }
    return o;
}

}  // namespace oracle
