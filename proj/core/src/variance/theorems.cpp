#include "dsgc/variance/theorems.hpp"

#include "dsgc/conv/convolution.hpp"
#include "dsgc/core/error.hpp"
#include "dsgc/core/random.hpp"
#include "dsgc/variance/variance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dsgc {

namespace {

constexpr double kSlack = 1e-9;

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    DenseMatrix out(rows, cols);
    for (double& v : out.values()) v = nd(rng);
    return out;
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Population inter-class variance of balanced class means.
double balanced_inter(const DenseMatrix& means) {
    const std::size_t k = means.rows();
    std::vector<double> grand(means.cols(), 0.0);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < means.cols(); ++j) grand[j] += means(c, j) / static_cast<double>(k);
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < means.cols(); ++j) s += (means(c, j) - grand[j]) * (means(c, j) - grand[j]);
    return s / static_cast<double>(k);
}

FilterMatrix walk_filter(const Graph& g) {
    return FilterMatrix(normalize(g, OperatorKind::row_stochastic).matrix, FilterSide::object,
                        FilterRecipe{"row_walk", {{"power", "1"}}});
}

void finish(TheoremCheck& c) {
    c.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < c.trials; ++t) c.worst_slack = std::min(c.worst_slack, c.rhs[t] - c.lhs[t]);
    if (c.trials == 0) c.worst_slack = 0.0;
}

}  // namespace

TheoremCheck check_theorem1(std::size_t trials, std::uint64_t seed, const Theorem1Options& opt) {
    if (trials == 0) throw ParameterError("theorem-check: trials must be positive");
    TheoremCheck c;
    c.theorem = 1;
    c.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, t);
        auto [g, y] = sample_sbm({opt.n, opt.num_classes, opt.r, opt.q, s});
        Rng rng(s ^ 0x9e3779b97f4a7c15ULL);
        const DenseMatrix means = gaussian_matrix(static_cast<std::size_t>(opt.num_classes), opt.attributes, rng);
        const double noise = std::sqrt(opt.target_ratio * balanced_inter(means) / static_cast<double>(opt.attributes));
        const DenseMatrix x = sample_class_features(y, means, noise, rng());
        const double before = variance_decomposition(x, y).ratio;
        const double after = variance_decomposition(apply_object_filter(x, walk_filter(g)), y).ratio;
        c.raw_ratio.push_back(before);
        c.lhs.push_back(after);
        c.rhs.push_back(before);
        c.holds += after < before;
    }
    finish(c);

    // q = 0, noise 0: class means are fixed points of the walk.
    {
        auto [g, y] = sample_sbm({opt.n, opt.num_classes, opt.r, 0.0, seed});
        Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const DenseMatrix means = gaussian_matrix(static_cast<std::size_t>(opt.num_classes), opt.attributes, rng);
        const DenseMatrix x = sample_class_features(y, means, 0.0, rng());
        const double inter_x = variance_decomposition(x, y).inter_variance;
        const double inter_gx = variance_decomposition(apply_object_filter(x, walk_filter(g)), y).inter_variance;
        c.inter_drift = std::abs(inter_gx - inter_x) / inter_x;
    }
    c.passed = static_cast<double>(c.holds) >= opt.required_fraction * static_cast<double>(trials) - 1e-12 &&
               c.inter_drift <= opt.max_inter_drift;
    return c;
}

TheoremCheck check_theorem2(std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw ParameterError("theorem-check: trials must be positive");
    TheoremCheck c;
    c.theorem = 2;
    c.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        const std::size_t m = uniform_index(rng, 2, 30);
        const int k = static_cast<int>(uniform_index(rng, 2, 5));
        const std::size_t n = uniform_index(rng, 4 * static_cast<std::size_t>(k), 120);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i)
            labels[i] = i < 2 * static_cast<std::size_t>(k) ? static_cast<int>(i % static_cast<std::size_t>(k))
                                                            : static_cast<int>(uniform_index(rng, 0, k - 1));
        const LabelVector y(labels, k);
        const DenseMatrix means = gaussian_matrix(static_cast<std::size_t>(k), m, rng);
        const double noise = 0.2 + 2.0 * uniform01(rng);
        const Signal2D x = mean_center(sample_class_features(y, means, noise, rng()));

        // Random nonnegative weights on a symmetric pattern that includes the
        // diagonal; such a pattern has total support, so balancing converges.
        const double density = 0.1 + 0.5 * uniform01(rng);
        std::vector<Triplet> entries;
        for (std::size_t i = 0; i < m; ++i) {
            entries.push_back({static_cast<Index>(i), static_cast<Index>(i), 0.05 + uniform01(rng)});
            for (std::size_t j = i + 1; j < m; ++j)
                if (uniform01(rng) < density) {
                    entries.push_back({static_cast<Index>(i), static_cast<Index>(j), 0.05 + uniform01(rng)});
                    entries.push_back({static_cast<Index>(j), static_cast<Index>(i), 0.05 + uniform01(rng)});
                }
        }
        const SparseMatrix f = sinkhorn_doubly_stochastic(SparseMatrix::from_triplets(m, m, std::move(entries)),
                                                          10000, 1e-12);
        const FilterMatrix fm(f, FilterSide::attribute, FilterRecipe{"sinkhorn", {}});
        const double before = variance_decomposition(x, y).intra_variance;
        const double after = variance_decomposition(apply_attribute_filter(x, fm), y).intra_variance;
        c.lhs.push_back(after);
        c.rhs.push_back(before);
        c.holds += after <= before + kSlack;
    }
    finish(c);
    c.passed = c.holds == trials;
    return c;
}

TheoremCheck check_theorem3(std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw ParameterError("theorem-check: trials must be positive");
    TheoremCheck c;
    c.theorem = 3;
    c.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        const std::size_t m = uniform_index(rng, 3, 30);
        const int k = static_cast<int>(uniform_index(rng, 2, 5));
        const double eps = 0.1 + 0.9 * uniform01(rng);

        // Attribute profiles scattered around a few centres so that ε-close pairs exist.
        const std::size_t centres = uniform_index(rng, 1, std::max<std::size_t>(1, m / 3));
        const DenseMatrix centre = gaussian_matrix(centres, static_cast<std::size_t>(k), rng);
        DenseMatrix means(static_cast<std::size_t>(k), m);
        std::normal_distribution<double> jitter(0.0, eps / 2.0);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t home = uniform_index(rng, 0, centres - 1);
            for (std::size_t cl = 0; cl < static_cast<std::size_t>(k); ++cl) means(cl, j) = centre(home, cl) + jitter(rng);
        }
        const std::size_t per_class = uniform_index(rng, 1, 5);
        std::vector<int> labels(per_class * static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % static_cast<std::size_t>(k));
        const LabelVector y(labels, k);
        const Signal2D x = sample_class_features(y, means, 0.0, rng());
        const DenseMatrix e = class_mean_profiles(x, y, FilterMatrix::identity(m, FilterSide::attribute)).profiles;

        auto dist = [&](std::size_t a, std::size_t b) {
            double s = 0.0;
            for (std::size_t cl = 0; cl < e.cols(); ++cl) s += (e(a, cl) - e(b, cl)) * (e(a, cl) - e(b, cl));
            return std::sqrt(s);
        };
        // Column j of F mixes only profiles within ε of e_j; columns sum to 1.
        std::vector<Triplet> entries;
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<std::pair<std::size_t, double>> col;
            double total = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (dist(i, j) > eps) continue;
                const double w = 0.05 + uniform01(rng);
                col.emplace_back(i, w);
                total += w;
            }
            for (auto [i, w] : col) entries.push_back({static_cast<Index>(i), static_cast<Index>(j), w / total});
        }
        const FilterMatrix f(SparseMatrix::from_triplets(m, m, std::move(entries)), FilterSide::attribute,
                             FilterRecipe{"eps_support", {}});
        const auto prof = class_mean_profiles(x, y, f);
        double worst = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t cl = 0; cl < prof.profiles.cols(); ++cl) {
                const double d = prof.profiles(j, cl) - prof.filtered_profiles(j, cl);
                s += d * d;
            }
            worst = std::max(worst, std::sqrt(s));
        }
        c.lhs.push_back(worst);
        c.rhs.push_back(eps);
        c.holds += worst <= eps + kSlack;
    }
    finish(c);
    c.passed = c.holds == trials;
    return c;
}

}  // namespace dsgc
