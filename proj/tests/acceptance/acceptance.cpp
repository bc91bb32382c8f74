// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Criterion 11 runs only when a dataset directory is given as the first
// argument or through DSGC_EXTENDED_DATA; it never affects the exit code.

#include "dsgc/affinity/affinity.hpp"
#include "dsgc/conv/convolution.hpp"
#include "dsgc/core/error.hpp"
#include "dsgc/harness/dataset.hpp"
#include "dsgc/harness/experiment.hpp"
#include "dsgc/harness/synthetic.hpp"
#include "dsgc/learn/metrics.hpp"
#include "dsgc/learn/mlp.hpp"
#include "dsgc/spectral/spectral.hpp"
#include "dsgc/variance/theorems.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>

using namespace dsgc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    bool skipped = false;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

NormalizedOperator random_laplacian(std::size_t n, std::mt19937_64& rng) {
    const double density = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
    return normalize(Graph(oracle::random_symmetric_adjacency(n, density, rng)), OperatorKind::laplacian_sym);
}

Outcome spectral_spatial() {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = draw(rng, 2, 10), m = draw(rng, 2, 10);
        const std::size_t k1 = draw(rng, 0, 3), k2 = draw(rng, 0, 3);
        const auto l1 = random_laplacian(n, rng), l2 = random_laplacian(m, rng);
        const SpatialKernel theta(oracle::random_dense(k1 + 1, k2 + 1, rng));
        const auto x = oracle::random_dense(n, m, rng);
        const auto b1 = eigendecompose(l1), b2 = eigendecompose(l2);
        const auto spectral = spectral_conv(x, polynomial_kernel(theta, b1, b2), b1, b2);
        worst = std::max(worst, max_abs_diff(spectral, spatial_conv2d(x, l1, l2, theta)));
    }
    return {worst <= 1e-8, fmt("100 instances, worst |spectral - spatial| = %.3g (tol 1e-8)", worst)};
}

Outcome separable_consistency() {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = draw(rng, 2, 10), m = draw(rng, 2, 10);
        std::vector<double> t1(draw(rng, 1, 4)), t2(draw(rng, 1, 4));
        for (double& v : t1) v = u(rng);
        for (double& v : t2) v = u(rng);
        const auto l1 = random_laplacian(n, rng), l2 = random_laplacian(m, rng);
        const auto x = oracle::random_dense(n, m, rng);
        auto [sep, full] = make_separable_kernel(t1, t2);
        worst = std::max(worst, max_abs_diff(separable_conv2d(x, l1, l2, sep), spatial_conv2d(x, l1, l2, full)));
    }
    return {worst <= 1e-10, fmt("100 instances, worst |separable - rank-1 spatial| = %.3g (tol 1e-10)", worst)};
}

Outcome theorem2() {
    const auto c = check_theorem2(200, 2000);
    const bool ok = c.holds == 200 && c.worst_slack >= -1e-9;
    return {ok, fmt("%zu/200 draws hold, worst slack %.3g (need >= -1e-9)", c.holds, c.worst_slack)};
}

Outcome theorem3() {
    const auto c = check_theorem3(100, 3000);
    return {c.holds == 100, fmt("%zu/100 trials with max_j |e_j - e^_j| <= eps + 1e-9, worst slack %.3g", c.holds,
                                c.worst_slack)};
}

Outcome theorem1() {
    const auto c = check_theorem1(50, 4000);
    const auto [lo, hi] = std::minmax_element(c.raw_ratio.begin(), c.raw_ratio.end());
    const bool calibrated = *lo >= 0.5 && *hi <= 2.0;
    const bool ok = calibrated && c.holds >= 48 && c.inter_drift <= 0.1;
    return {ok, fmt("ratio(GX) < ratio(X) in %zu/50 (need 48), raw ratio in [%.3f, %.3f] (need [0.5, 2]), "
                    "inter drift at q=0 %.3g (tol 0.1)",
                    c.holds, *lo, *hi, c.inter_drift)};
}

ExperimentConfig synthetic_config() {
    ExperimentConfig cfg;
    cfg.affinity_source = AffinitySource::provided;
    return cfg;
}

Outcome ratio_ordering() {
    ExperimentConfig cfg = synthetic_config();
    cfg.pipeline = Pipeline::theorem_check;
    std::size_t ok = 0;
    double mean[4] = {0, 0, 0, 0};
    for (std::uint64_t s = 0; s < 50; ++s) {
        SyntheticParams p;
        p.seed = 5000 + s;
        const auto r = run_experiment(make_synthetic_benchmark(p), cfg);
        const auto& v = r.per_seed.front().values;  // X, GX, XF, GXF
        for (int i = 0; i < 4; ++i) mean[i] += v[static_cast<std::size_t>(i)] / 50.0;
        ok += v[3] < v[1] && v[3] < v[2] && v[2] < v[0];
    }
    return {ok >= 45, fmt("ordering holds in %zu/50 trials (need 45); mean ratios X %.2f, GX %.2f, XF %.2f, GXF %.2f",
                          ok, mean[0], mean[1], mean[2], mean[3])};
}

Outcome ppmi_oracle() {
    std::mt19937_64 rng(1007);
    const std::size_t windows[] = {1, 2, 20};
    std::size_t exact = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = draw(rng, 2, 20);
        const std::size_t total = draw(rng, 2, 200);
        std::vector<std::vector<std::uint32_t>> docs(draw(rng, 1, 8));
        for (std::size_t i = 0; i < total; ++i)
            docs[draw(rng, 0, docs.size() - 1)].push_back(static_cast<std::uint32_t>(draw(rng, 0, m - 1)));
        const std::size_t w = windows[t % 3];
        const auto c = cooccurrence_counts(Corpus{docs, m}, w);
        const auto o = oracle::brute_force_ppmi(docs, m, w, true);
        bool same = oracle::max_diff(c.pair_weights.to_dense(), o.pair) == 0.0 && c.unigram_weights == o.unigram &&
                    c.total_weight == o.total;
        if (same && o.total > 0.0) same = oracle::max_diff(ppmi_matrix(c).adjacency().to_dense(), o.ppmi) == 0.0;
        exact += same;
    }
    return {exact == 50, fmt("%zu/50 corpora match the brute-force oracle bit for bit", exact)};
}

Outcome mlp_gradient() {
    TrainConfig cfg;
    cfg.activation = Activation::tanh;
    cfg.dropout = 0.0;
    cfg.hidden = 8;
    std::mt19937_64 rng(1008);
    double worst = 0.0;
    for (int point = 0; point < 20; ++point) {
        const std::size_t n = draw(rng, 3, 12), m = draw(rng, 2, 8), k = draw(rng, 2, 4);
        const auto x = oracle::random_dense(n, m, rng);
        std::vector<int> targets(n);
        for (int& v : targets) v = static_cast<int>(draw(rng, 0, k - 1));
        Rng init(rng());
        MlpParams p = init_mlp(m, cfg.hidden, k, init);
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        for (double& b : p.b1) b = u(rng);
        for (double& b : p.b2) b = u(rng);
        const auto g = mlp_loss_gradient(p, x, targets, cfg);
        const std::vector<std::span<const double>> analytic{g.grad.w1.values(), g.grad.b1, g.grad.w2.values(), g.grad.b2};
        const std::vector<std::span<double>> params{p.w1.values(), p.b1, p.w2.values(), p.b2};
        for (std::size_t blk = 0; blk < params.size(); ++blk)
            for (std::size_t i = 0; i < params[blk].size(); ++i) {
                const double keep = params[blk][i];
                params[blk][i] = keep + 1e-5;
                const double up = mlp_loss_gradient(p, x, targets, cfg).loss;
                params[blk][i] = keep - 1e-5;
                const double down = mlp_loss_gradient(p, x, targets, cfg).loss;
                params[blk][i] = keep;
                const double fd = (up - down) / 2e-5, a = analytic[blk][i];
                worst = std::max(worst, std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-8}));
            }
    }
    return {worst <= 1e-4, fmt("20 points, worst relative error %.3g (tol 1e-4)", worst)};
}

Outcome synthetic_classification() {
    SyntheticParams p;
    p.seed = 0;
    const auto bundle = make_synthetic_benchmark(p);
    ExperimentConfig cfg = synthetic_config();
    cfg.labels_per_class = 5;
    cfg.valid_size = 100;
    cfg.seeds.clear();
    for (std::uint64_t s = 0; s < 20; ++s) cfg.seeds.push_back(s);
    auto acc = [&](Pipeline pipe, bool g, bool f) {
        ExperimentConfig c = cfg;
        c.pipeline = pipe;
        c.use_G = g;
        c.use_F = f;
        return run_experiment(bundle, c).mean_of("test_accuracy");
    };
    const double x = acc(Pipeline::classify_two_step, false, false);
    const double gx = acc(Pipeline::classify_two_step, true, false);
    const double gxf = acc(Pipeline::classify_two_step, true, true);
    const double gcn = acc(Pipeline::classify_gcn, true, false);
    const double gcn_f = acc(Pipeline::classify_gcn, true, true);
    const bool ok = gxf >= x + 0.05 && gxf >= gx && gcn_f >= gcn;
    return {ok, fmt("mean test accuracy over 20 seeds: X %.4f, GX %.4f, GXF %.4f (need >= X + 0.05 and >= GX); "
                    "GCN %.4f, GCN+F %.4f (need GCN+F >= GCN)",
                    x, gx, gxf, gcn, gcn_f)};
}

Outcome clustering_metrics() {
    const LabelVector two({0, 0, 1, 1}, 2);
    const LabelVector three({0, 0, 1, 1, 2, 2}, 3);
    struct Case {
        const char* name;
        double got, want;
    };
    const Case cases[] = {
        {"acc(pred = truth)", clustering_accuracy({{0, 0, 1, 1, 2, 2}, 3}, three), 1.0},
        {"acc(permuted)", clustering_accuracy({{2, 2, 0, 0, 1, 1}, 3}, three), 1.0},
        {"acc([0,1,0,1])", clustering_accuracy({{0, 1, 0, 1}, 2}, two), 0.5},
        {"nmi(pred = truth)", nmi({{0, 0, 1, 1}, 2}, two), 1.0},
        {"nmi(constant)", nmi({{0, 0, 0, 0}, 1}, two), 0.0},
        {"nmi([0,1,0,1])", nmi({{0, 1, 0, 1}, 2}, two), 0.0},
    };
    std::string bad;
    for (const auto& c : cases)
        if (c.got != c.want) bad += fmt(" %s=%.17g", c.name, c.got);

    ExperimentConfig cfg;
    cfg.pipeline = Pipeline::cluster;
    cfg.use_F = false;
    const auto r = run_experiment(make_blobs(100, 2, 5, 20.0, 10), cfg);
    const double a = r.mean_of("accuracy"), n = r.mean_of("nmi");
    const bool ok = bad.empty() && a == 1.0 && n == 1.0;
    return {ok, fmt("6/6 metric examples exact%s; blobs pipeline Acc %.6g, NMI %.6g (need 1, 1)",
                    bad.empty() ? "" : (" except" + bad).c_str(), a, n)};
}

struct TableRow {
    std::size_t vertices, edges;
    int classes;
    std::size_t features;
};

std::optional<TableRow> reference_stats(std::string name) {
    std::string key;
    for (char c : name)
        if (std::isalnum(static_cast<unsigned char>(c))) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::map<std::string, TableRow> table{
        {"20ng", {18846, 147034, 20, 11697}}, {"wiki", {3767, 129597, 9, 18316}},
        {"lcora", {11881, 64898, 10, 3780}},  {"cornell", {247, 384, 5, 3371}},
        {"texas", {255, 205, 5, 3371}},       {"wisconsin", {320, 721, 5, 3371}},
        {"washington", {265, 417, 5, 3371}},
    };
    for (const auto& [k, row] : table)
        if (key == k || (k.size() >= 4 && key.rfind(k.substr(0, 4), 0) == 0)) return row;
    return std::nullopt;
}

Outcome extended(const char* dir) {
    if (!dir || !*dir) return {true, "no dataset supplied (pass a bundle directory or set DSGC_EXTENDED_DATA)", true};
    try {
        const auto b = load_dataset(dir);
        const auto ref = reference_stats(b.name);
        if (!ref) return {false, "dataset name '" + b.name + "' has no reference statistics"};
        const bool counts = b.n_objects() == ref->vertices && b.n_edges() == ref->edges &&
                            b.labels.num_classes() == ref->classes && b.n_attributes() == ref->features;
        ExperimentConfig cfg;
        cfg.affinity_source = AffinitySource::ppmi;
        const auto out = std::filesystem::temp_directory_path() / "dsgc_extended_report.json";
        emit_report(run_experiment(b, cfg), ReportFormat::json, out);
        return {counts, fmt("%s: %zu vertices, %zu edges, %d classes, %zu features (reference %zu, %zu, %d, %zu); "
                            "GXF+PPMI report written to %s",
                            b.name.c_str(), b.n_objects(), b.n_edges(), b.labels.num_classes(), b.n_attributes(),
                            ref->vertices, ref->edges, ref->classes, ref->features, out.c_str())};
    } catch (const std::exception& e) {
        return {false, std::string("error: ") + e.what()};
    }
}

}  // namespace

int main(int argc, char** argv) {
    const char* ext = argc > 1 ? argv[1] : std::getenv("DSGC_EXTENDED_DATA");
    struct Criterion {
        int id;
        const char* name;
        double limit_s;  // 0 = no runtime bound
        std::function<Outcome()> run;
        bool gating = true;
    };
    const std::vector<Criterion> all{
        {1, "spectral-spatial equivalence", 60, spectral_spatial},
        {2, "separable consistency", 30, separable_consistency},
        {3, "doubly stochastic F lowers intra-class variance", 60, theorem2},
        {4, "eps-supported F keeps class-mean profiles", 0, theorem3},
        {5, "object filtering on SBM lowers the variance ratio", 0, theorem1},
        {6, "variance-ratio ordering on synthetic data", 300, ratio_ordering},
        {7, "PPMI oracle equivalence", 0, ppmi_oracle},
        {8, "MLP gradient check", 0, mlp_gradient},
        {9, "end-to-end synthetic classification", 600, synthetic_classification},
        {10, "clustering metrics", 0, clustering_metrics},
        {11, "extended real-data check (non-gating)", 0, [ext] { return extended(ext); }, false},
    };
    int failures = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            o.pass = false;
            o.detail += fmt("; over the %.0f s limit", c.limit_s);
        }
        const char* verdict = o.skipped ? "SKIP" : (o.pass ? "PASS" : "FAIL");
        std::printf("criterion %2d %s  %s: %s [%.2f s%s]\n", c.id, verdict, c.name, o.detail.c_str(), secs,
                    c.limit_s > 0 ? fmt(", limit %.0f s", c.limit_s).c_str() : "");
        std::fflush(stdout);
        if (c.gating && !o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
