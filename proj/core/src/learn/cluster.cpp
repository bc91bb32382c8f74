#include "dsgc/learn/cluster.hpp"

#include "dense_ops.hpp"
#include "dsgc/core/error.hpp"
#include "dsgc/core/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dsgc {

namespace {

constexpr std::size_t kPowerIters = 500;
constexpr double kPowerTol = 1e-10;
// Eigenvalues below this fraction of the leading one are treated as zero.
constexpr double kNullFraction = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// w = Z (Zᵀ v)
std::vector<double> gram_apply(const Signal2D& z, const Signal2D& zt, const std::vector<double>& v) {
    const DenseMatrix col(v.size(), 1, v);
    const DenseMatrix u = detail::times(zt, col);
    const DenseMatrix w = detail::times(z, u);
    return {w.values().begin(), w.values().end()};
}

void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
            const double c = dot(w, b);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
        }
}

double norm(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

KMeansResult lloyd(const DenseMatrix& x, std::size_t k, Rng& rng, std::size_t max_iters) {
    const std::size_t n = x.rows();
    DenseMatrix c(k, x.cols());
    // k-means++ seeding.
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::vector<char> chosen(n, 0);
    std::size_t first = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    for (std::size_t ci = 0; ci < k; ++ci) {
        std::size_t pick = first;
        if (ci > 0) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) total += d2[i];
            if (total > 0.0) {
                const double r = uniform01(rng) * total;
                double acc = 0.0;
                pick = n - 1;
                for (std::size_t i = 0; i < n; ++i) {
                    acc += d2[i];
                    if (d2[i] > 0.0 && acc > r) {
                        pick = i;
                        break;
                    }
                }
            } else {
                // Every point coincides with a centre already: take the lowest unused index.
                pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), 0) - chosen.begin());
                if (pick == n) pick = 0;
            }
        }
        chosen[pick] = 1;
        std::copy(x.row(pick).begin(), x.row(pick).end(), c.row(ci).begin());
        for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], sq_dist(x.row(i), c.row(ci)));
    }

    KMeansResult res;
    res.assignments.assign(n, -1);
    for (std::size_t it = 0; it < max_iters; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double bd = sq_dist(x.row(i), c.row(0));
            for (std::size_t ci = 1; ci < k; ++ci) {
                const double d = sq_dist(x.row(i), c.row(ci));
                if (d < bd) {
                    bd = d;
                    best = static_cast<int>(ci);
                }
            }
            if (res.assignments[i] != best) {
                res.assignments[i] = best;
                changed = true;
            }
        }
        if (!changed) break;
        DenseMatrix sum(k, x.cols());
        std::vector<std::size_t> count(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = static_cast<std::size_t>(res.assignments[i]);
            ++count[a];
            auto s = sum.row(a);
            auto r = x.row(i);
            for (std::size_t j = 0; j < r.size(); ++j) s[j] += r[j];
        }
        for (std::size_t ci = 0; ci < k; ++ci) {
            if (count[ci] == 0) continue;  // empty cluster keeps its centre
            auto s = sum.row(ci);
            auto out = c.row(ci);
            for (std::size_t j = 0; j < s.size(); ++j) out[j] = s[j] / static_cast<double>(count[ci]);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        res.inertia += sq_dist(x.row(i), c.row(static_cast<std::size_t>(res.assignments[i])));
    res.centroids = std::move(c);
    return res;
}

}  // namespace

DenseMatrix top_eigenvectors_gram(const Signal2D& z, std::size_t k, std::uint64_t seed, std::vector<double>* eigenvalues) {
    const std::size_t n = z.n_objects();
    const Signal2D zt = detail::transposed(z);
    Rng rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<std::vector<double>> basis;
    DenseMatrix out(n, k);
    double leading = 0.0;
    if (eigenvalues) eigenvalues->clear();
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<double> v(n);
        for (double& e : v) e = nd(rng);
        orthogonalize(v, basis);
        double nv = norm(v);
        double lambda = 0.0;
        bool null_direction = nv == 0.0;
        if (!null_direction) {
            for (double& e : v) e /= nv;
            for (std::size_t it = 0; it < kPowerIters; ++it) {
                std::vector<double> w = gram_apply(z, zt, v);
                orthogonalize(w, basis);
                const double next = norm(w);
                if (next == 0.0 || (leading > 0.0 && next <= kNullFraction * leading)) {
                    null_direction = true;
                    lambda = 0.0;
                    break;
                }
                for (double& e : w) e /= next;
                v = std::move(w);
                const bool done = std::abs(next - lambda) < kPowerTol * next;
                lambda = next;
                if (done) break;
            }
        }
        if (c == 0) leading = lambda;
        if (eigenvalues) eigenvalues->push_back(lambda);
        if (null_direction) continue;  // column stays zero
        for (std::size_t i = 0; i < n; ++i) out(i, c) = v[i];
        basis.push_back(std::move(v));
    }
    return out;
}

KMeansResult kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed, std::size_t restarts, std::size_t max_iters) {
    if (k == 0 || k > points.rows()) throw ParameterError("kmeans: need 1 <= k <= number of points");
    if (restarts == 0) throw ParameterError("kmeans: restarts must be positive");
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, r));
        KMeansResult cand = lloyd(points, k, rng, max_iters);
        if (cand.inertia < best.inertia) best = std::move(cand);
    }
    return best;
}

ClusterAssignment spectral_cluster(const Signal2D& z, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw ParameterError("spectral_cluster: k must be at least 2");
    if (k > z.n_objects())
        throw ParameterError("spectral_cluster: k=" + std::to_string(k) + " exceeds n=" + std::to_string(z.n_objects()));
    DenseMatrix u = top_eigenvectors_gram(z, k, seed);
    for (std::size_t i = 0; i < u.rows(); ++i) {
        auto r = u.row(i);
        const double nr = std::sqrt(dot(r, r));
        if (nr > 0.0)
            for (double& v : r) v /= nr;
    }
    KMeansResult km = kmeans(u, k, seed);
    return {std::move(km.assignments), static_cast<int>(k)};
}

}  // namespace dsgc
