#include "dsgc/affinity/affinity.hpp"
#include "dsgc/conv/convolution.hpp"
#include "dsgc/conv/filters.hpp"
#include "dsgc/core/random.hpp"
#include "dsgc/core/sparse_matrix.hpp"
#include "dsgc/harness/synthetic.hpp"

#include <benchmark/benchmark.h>

using namespace dsgc;

namespace {

SparseMatrix random_sparse(std::size_t n, std::size_t m, double density, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (uniform01(rng) < density) t.push_back({static_cast<Index>(i), static_cast<Index>(j), uniform01(rng)});
    return SparseMatrix::from_triplets(n, m, std::move(t));
}

Graph random_graph(std::size_t n, double density, std::uint64_t seed) {
    return Graph(symmetrize_max(random_sparse(n, n, density, seed)));
}

void BM_SpmmSparseDense(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_sparse(n, n, 10.0 / static_cast<double>(n), 1);
    const DenseMatrix b = random_sparse(n, 64, 0.5, 2).to_dense();
    for (auto _ : state) benchmark::DoNotOptimize(spmm(a, b));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * a.nnz() * 64));
}
BENCHMARK(BM_SpmmSparseDense)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_SpmmSparseSparse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_sparse(n, n, 10.0 / static_cast<double>(n), 3);
    const auto b = random_sparse(n, n, 10.0 / static_cast<double>(n), 4);
    for (auto _ : state) benchmark::DoNotOptimize(spmm(a, b));
}
BENCHMARK(BM_SpmmSparseSparse)->Arg(1000)->Arg(4000)->Arg(16000);

// General Θ against its factored form for the same kernel order.
void BM_SpatialConvGeneral(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto l1 = normalize(random_graph(2000, 0.005, 5), OperatorKind::row_stochastic);
    const auto l2 = normalize(random_graph(500, 0.02, 6), OperatorKind::row_stochastic);
    const Signal2D x = random_sparse(2000, 500, 0.02, 7);
    const SpatialKernel theta = make_separable_kernel(std::vector<double>(k + 1, 0.5), std::vector<double>(k + 1, 0.5)).second;
    for (auto _ : state) benchmark::DoNotOptimize(spatial_conv2d(x, l1, l2, theta));
}
BENCHMARK(BM_SpatialConvGeneral)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SeparableConv(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto l1 = normalize(random_graph(2000, 0.005, 5), OperatorKind::row_stochastic);
    const auto l2 = normalize(random_graph(500, 0.02, 6), OperatorKind::row_stochastic);
    const Signal2D x = random_sparse(2000, 500, 0.02, 7);
    const SeparableKernel kernel(std::vector<double>(k + 1, 0.5), std::vector<double>(k + 1, 0.5));
    for (auto _ : state) benchmark::DoNotOptimize(separable_conv2d(x, l1, l2, kernel));
}
BENCHMARK(BM_SeparableConv)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_DsgcFilters(benchmark::State& state) {
    const auto bundle = make_synthetic_benchmark({});
    const auto g = build_object_filter(bundle.object_graph);
    const auto f = build_attribute_filter(*bundle.attribute_graph);
    for (auto _ : state) benchmark::DoNotOptimize(dsgc::dsgc(bundle.features, g, f));
}
BENCHMARK(BM_DsgcFilters)->Unit(benchmark::kMillisecond);

void BM_Ppmi(benchmark::State& state) {
    const auto tokens = static_cast<std::size_t>(state.range(0));
    Rng rng(8);
    Corpus c;
    c.vocab_size = 2000;
    c.documents.resize(tokens / 200);
    for (auto& d : c.documents)
        for (std::size_t t = 0; t < 200; ++t) d.push_back(static_cast<std::uint32_t>(rng() % c.vocab_size));
    for (auto _ : state) benchmark::DoNotOptimize(ppmi_matrix(cooccurrence_counts(c, 20)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * tokens));
}
BENCHMARK(BM_Ppmi)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
