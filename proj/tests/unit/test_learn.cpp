#include "dsgc/conv/convolution.hpp"
#include "dsgc/conv/filters.hpp"
#include "dsgc/core/error.hpp"
#include "dsgc/harness/synthetic.hpp"
#include "dsgc/learn/cluster.hpp"
#include "dsgc/learn/gcn.hpp"
#include "dsgc/learn/metrics.hpp"
#include "dsgc/learn/mlp.hpp"
#include "dsgc/learn/model_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>

using namespace dsgc;

namespace {

LabelVector toy_labels() { return LabelVector({0, 0, 1, 1}, 2, {0, 1, 2, 3}); }
DenseMatrix toy_points() { return DenseMatrix{{-1, 0}, {-1, 1}, {1, 0}, {1, 1}}; }

std::vector<std::span<double>> blocks(MlpParams& p) { return {p.w1.values(), p.b1, p.w2.values(), p.b2}; }
std::vector<std::span<const double>> blocks(const MlpParams& p) { return {p.w1.values(), p.b1, p.w2.values(), p.b2}; }

double relative_error(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8}); }

}  // namespace

TEST(Mlp, LearnsSeparableToy) {
    const auto y = toy_labels();
    const auto p = train_mlp(toy_points(), y, TrainConfig{});
    EXPECT_EQ(predict_mlp(p, toy_points()).labels, y.labels());
}

TEST(Mlp, ZeroLearningRateKeepsInitialization) {
    TrainConfig cfg;
    cfg.learning_rate = 0.0;
    cfg.epochs = 5;
    const auto p = train_mlp(toy_points(), toy_labels(), cfg);
    Rng rng(cfg.seed);
    const auto init = init_mlp(2, cfg.hidden, 2, rng);
    EXPECT_EQ(p.w1, init.w1);
    EXPECT_EQ(p.b1, init.b1);
    EXPECT_EQ(p.w2, init.w2);
    EXPECT_EQ(p.b2, init.b2);
}

TEST(Mlp, EmptyTrainMaskThrows) {
    EXPECT_THROW(train_mlp(toy_points(), LabelVector({0, 0, 1, 1}, 2), TrainConfig{}), TrainingError);
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
    TrainConfig cfg;
    cfg.activation = Activation::tanh;
    cfg.dropout = 0.0;
    cfg.hidden = 5;
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int point = 0; point < 20; ++point) {
        const auto x = oracle::random_dense(7, 4, rng);
        std::vector<int> targets(7);
        for (int& t : targets) t = static_cast<int>(rng() % 3);
        Rng init(rng());
        MlpParams p = init_mlp(4, cfg.hidden, 3, init);
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        for (double& b : p.b1) b = u(rng);
        for (double& b : p.b2) b = u(rng);
        const auto g = mlp_loss_gradient(p, x, targets, cfg);
        const auto analytic = blocks(g.grad);
        auto params = blocks(p);
        for (std::size_t blk = 0; blk < params.size(); ++blk)
            for (std::size_t i = 0; i < params[blk].size(); ++i) {
                const double keep = params[blk][i];
                params[blk][i] = keep + 1e-5;
                const double up = mlp_loss_gradient(p, x, targets, cfg).loss;
                params[blk][i] = keep - 1e-5;
                const double down = mlp_loss_gradient(p, x, targets, cfg).loss;
                params[blk][i] = keep;
                worst = std::max(worst, relative_error(analytic[blk][i], (up - down) / 2e-5));
            }
    }
    EXPECT_LE(worst, 1e-4);
}

TEST(Mlp, SoftmaxRows) {
    const auto u = softmax_rows(DenseMatrix{{3, 3, 3}, {-1e3, -1e3, -1e3}});
    for (double v : u.values()) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
    std::mt19937_64 rng(2);
    Rng init(5);
    const auto p = init_mlp(6, 8, 4, init);
    const auto pred = predict_mlp(p, oracle::random_dense(10, 6, rng, -5.0, 5.0));
    for (std::size_t i = 0; i < 10; ++i) {
        double s = 0.0;
        for (double v : pred.probabilities.row(i)) s += v;
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(Mlp, LossMostlyDecreasesWithoutDropout) {
    const auto bundle = make_blobs(60, 3, 5, 4.0, 1);
    std::vector<std::size_t> train(60);
    for (std::size_t i = 0; i < 60; ++i) train[i] = i;
    const auto y = bundle.labels.with_masks(train, {}, {});
    TrainConfig cfg;
    cfg.dropout = 0.0;
    cfg.learning_rate = 0.01;
    cfg.epochs = 100;
    std::vector<double> history;
    train_mlp(bundle.features, y, cfg, &history);
    ASSERT_EQ(history.size(), 100u);
    std::size_t down = 0;
    for (std::size_t e = 1; e < history.size(); ++e) down += history[e] <= history[e - 1];
    EXPECT_GE(static_cast<double>(down), 0.9 * static_cast<double>(history.size() - 1));
}

TEST(Gcn, IdentityFilterReduction) {
    std::mt19937_64 rng(3);
    const auto x = oracle::random_dense(6, 4, rng);
    const FilterMatrix g = build_gcn_filter(Graph(oracle::random_symmetric_adjacency(6, 0.5, rng)));
    TrainConfig cfg;
    cfg.hidden = 3;
    const GcnParams p{oracle::random_dense(4, 3, rng), oracle::random_dense(3, 2, rng)};
    EXPECT_EQ(gcn_forward(x, g, FilterMatrix::identity(4, FilterSide::attribute), p, cfg),
              gcn_forward(x, g, std::nullopt, p, cfg));
}

TEST(Gcn, ZeroWeightsGiveUniform) {
    const auto x = DenseMatrix{{1, 2}, {3, 4}, {5, 6}};
    const GcnParams p{DenseMatrix(2, 4), DenseMatrix(4, 3)};
    const auto probs = gcn_forward(x, FilterMatrix::identity(3, FilterSide::object),
                                   FilterMatrix::identity(2, FilterSide::attribute), p, TrainConfig{});
    for (double v : probs.values()) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
}

TEST(Gcn, GradientMatchesFiniteDifferences) {
    TrainConfig cfg;
    cfg.activation = Activation::tanh;
    cfg.dropout = 0.0;
    std::mt19937_64 rng(4);
    const auto x = oracle::random_dense(6, 4, rng);
    const FilterMatrix g = build_gcn_filter(Graph(oracle::random_symmetric_adjacency(6, 0.5, rng)));
    const LabelVector y({0, 1, 2, 0, 1, 2}, 3, {0, 1, 2, 4});
    GcnParams p{oracle::random_dense(4, 3, rng), oracle::random_dense(3, 3, rng)};
    const Signal2D prop = apply_object_filter(x, g);
    const auto grad = gcn_loss_gradient(p, prop, g, y, cfg);
    double worst = 0.0;
    for (auto [w, gw] : {std::pair{&p.w1, &grad.grad.w1}, std::pair{&p.w2, &grad.grad.w2}})
        for (std::size_t i = 0; i < w->size(); ++i) {
            const double keep = w->values()[i];
            w->values()[i] = keep + 1e-5;
            const double up = gcn_loss_gradient(p, prop, g, y, cfg).loss;
            w->values()[i] = keep - 1e-5;
            const double down = gcn_loss_gradient(p, prop, g, y, cfg).loss;
            w->values()[i] = keep;
            worst = std::max(worst, relative_error(gw->values()[i], (up - down) / 2e-5));
        }
    EXPECT_LE(worst, 1e-4);
}

TEST(Metrics, ClassificationAccuracy) {
    const LabelVector y({0, 1, 1, 0}, 2);
    const std::vector<int> pred{0, 1, 0, 0};
    EXPECT_DOUBLE_EQ(classification_accuracy(pred, y), 0.75);
    const std::vector<std::size_t> idx{1, 2};
    EXPECT_DOUBLE_EQ(classification_accuracy(pred, y, idx), 0.5);
}

TEST(Metrics, ClusteringAccuracyExamples) {
    const LabelVector y({0, 0, 1, 1, 2, 2}, 3);
    EXPECT_EQ(clustering_accuracy({{0, 0, 1, 1, 2, 2}, 3}, y), 1.0);
    EXPECT_EQ(clustering_accuracy({{2, 2, 0, 0, 1, 1}, 3}, y), 1.0);
    EXPECT_EQ(clustering_accuracy({{0, 1, 0, 1}, 2}, LabelVector({0, 0, 1, 1}, 2)), 0.5);
}

TEST(Metrics, ClusteringAccuracyMatchesPermutationOracle) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const int kp = 1 + static_cast<int>(rng() % 5), kt = 1 + static_cast<int>(rng() % 5);
        std::vector<int> pred(30), truth(30);
        for (int& v : pred) v = static_cast<int>(rng() % static_cast<unsigned>(kp));
        for (int& v : truth) v = static_cast<int>(rng() % static_cast<unsigned>(kt));
        EXPECT_DOUBLE_EQ(clustering_accuracy({pred, kp}, LabelVector(truth, kt)),
                         oracle::permutation_accuracy(pred, truth, kp, kt));
    }
}

TEST(Metrics, HungarianRectangular) {
    EXPECT_EQ(hungarian_assignment({{4, 1, 3}, {2, 0, 5}}), (std::vector<int>{1, 0}));
    EXPECT_EQ(hungarian_assignment({{1}, {0}, {3}}), (std::vector<int>{-1, 0, -1}));
}

TEST(Metrics, NmiExamples) {
    const LabelVector y({0, 0, 1, 1}, 2);
    EXPECT_EQ(nmi({{0, 0, 1, 1}, 2}, y), 1.0);
    EXPECT_NEAR(nmi({{1, 1, 0, 0}, 2}, y), 1.0, 1e-15);
    EXPECT_EQ(nmi({{0, 0, 0, 0}, 1}, y), 0.0);
    EXPECT_EQ(nmi({{0, 1, 0, 1}, 2}, y), 0.0);
    EXPECT_EQ(nmi({{0, 0, 0, 0}, 1}, LabelVector({0, 0, 0, 0}, 1)), 1.0);
}

TEST(Cluster, SeparatedBlobs) {
    const auto b = make_blobs(100, 2, 5, 20.0, 3);
    const auto c = spectral_cluster(b.features, 2, 0);
    EXPECT_EQ(clustering_accuracy(c, b.labels), 1.0);
    EXPECT_EQ(nmi(c, b.labels), 1.0);
}

TEST(Cluster, IdenticalRowsFormOneCluster) {
    const DenseMatrix z(8, 3, 2.0);
    const auto c = spectral_cluster(z, 2, 0);
    EXPECT_EQ(clustering_accuracy(c, LabelVector(std::vector<int>(8, 0), 1)), 1.0);
}

TEST(Cluster, ScaleInvariantPartition) {
    const auto b = make_blobs(60, 3, 4, 3.0, 9);
    const auto a = spectral_cluster(b.features, 3, 1);
    const DenseMatrix scaled = 7.5 * b.features.to_dense();
    const auto c = spectral_cluster(scaled, 3, 1);
    EXPECT_EQ(clustering_accuracy(a, LabelVector(c.assignments, 3)), 1.0);
}

TEST(Cluster, RejectsBadK) {
    EXPECT_THROW(spectral_cluster(DenseMatrix(4, 2, 1.0), 1, 0), ParameterError);
    EXPECT_THROW(spectral_cluster(DenseMatrix(4, 2, 1.0), 5, 0), ParameterError);
}

TEST(Cluster, KMeansRecoversCentres) {
    const DenseMatrix pts{{0, 0}, {0, 1}, {10, 0}, {10, 1}};
    const auto r = kmeans(pts, 2, 0);
    EXPECT_EQ(r.assignments[0], r.assignments[1]);
    EXPECT_EQ(r.assignments[2], r.assignments[3]);
    EXPECT_NE(r.assignments[0], r.assignments[2]);
    EXPECT_DOUBLE_EQ(r.inertia, 1.0);
}

TEST(ModelIo, RoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "dsgc_model_io";
    std::filesystem::create_directories(dir);
    Rng rng(1);
    auto p = init_mlp(3, 4, 2, rng);
    p.b1 = {0.1, -0.2, 1e-17, 3.0};
    TrainConfig cfg;
    cfg.activation = Activation::tanh;
    cfg.learning_rate = 0.012345678901234;
    save_mlp(dir / "mlp", p, cfg, 17);
    TrainConfig back_cfg;
    const auto q = load_mlp(dir / "mlp", &back_cfg);
    EXPECT_EQ(q.w1, p.w1);
    EXPECT_EQ(q.b1, p.b1);
    EXPECT_EQ(q.w2, p.w2);
    EXPECT_EQ(q.b2, p.b2);
    EXPECT_EQ(back_cfg.activation, Activation::tanh);
    EXPECT_EQ(back_cfg.learning_rate, cfg.learning_rate);

    const GcnParams gp{DenseMatrix{{1, 2}}, DenseMatrix{{0.5}, {-0.25}}};
    save_gcn(dir / "gcn", gp, cfg, 3);
    const auto gq = load_gcn(dir / "gcn");
    EXPECT_EQ(gq.w1, gp.w1);
    EXPECT_EQ(gq.w2, gp.w2);
    EXPECT_THROW(load_mlp(dir / "gcn"), Error);
    std::filesystem::remove_all(dir);
}
