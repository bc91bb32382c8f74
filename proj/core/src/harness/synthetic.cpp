#include "dsgc/harness/synthetic.hpp"

#include "dsgc/core/error.hpp"
#include "dsgc/core/random.hpp"
#include "dsgc/variance/variance.hpp"

namespace dsgc {

DatasetBundle make_synthetic_benchmark(const SyntheticParams& p) {
    if (p.noise < 0.0) throw ParameterError("synthetic: noise must be >= 0");
    auto [g, y] = sample_sbm({p.n, p.num_classes, p.r, p.q, p.seed});
    const auto k = static_cast<std::size_t>(p.num_classes);
    const std::size_t m = k * p.block_size + p.noise_attributes;

    DenseMatrix means(k, m);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = c * p.block_size; j < (c + 1) * p.block_size; ++j) means(c, j) = p.signal;
    DenseMatrix x = sample_class_features(y, means, p.noise, derive_seed(p.seed, 1));

    // Attribute blocks: one per class plus one for the noise attributes.
    auto block_of = [&](std::size_t j) { return j < k * p.block_size ? j / p.block_size : k; };
    Rng rng(derive_seed(p.seed, 2));
    std::vector<Triplet> edges;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (uniform01(rng) < (block_of(i) == block_of(j) ? p.r_attr : p.q_attr)) {
                edges.push_back({static_cast<Index>(i), static_cast<Index>(j), 1.0});
                edges.push_back({static_cast<Index>(j), static_cast<Index>(i), 1.0});
            }

    DatasetBundle b;
    b.name = "synthetic";
    b.features = std::move(x);
    b.object_graph = std::move(g);
    b.labels = std::move(y);
    b.attribute_graph = Graph(SparseMatrix::from_triplets(m, m, std::move(edges)), false);
    return b;
}

DatasetBundle make_blobs(std::size_t n, int num_classes, std::size_t dims, double separation, std::uint64_t seed) {
    if (num_classes < 1 || n % static_cast<std::size_t>(num_classes) != 0)
        throw ParameterError("blobs: n must be a positive multiple of the class count");
    const auto k = static_cast<std::size_t>(num_classes);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i / (n / k));
    LabelVector y(labels, num_classes);
    // Class c sits at separation·e_c (dims ≥ K) so centres are pairwise separation·√2 apart.
    if (dims < k) throw ParameterError("blobs: need at least one dimension per class");
    DenseMatrix means(k, dims);
    for (std::size_t c = 0; c < k; ++c) means(c, c) = separation;
    DatasetBundle b;
    b.name = "blobs";
    b.features = sample_class_features(y, means, 1.0, seed);
    b.object_graph = Graph(SparseMatrix(n, n, std::vector<std::size_t>(n + 1, 0), {}, {}), false);
    b.labels = std::move(y);
    return b;
}

}  // namespace dsgc
