// dsgc: command line front end for dataset checks, filtering, learning and theorem checks.

#include "dsgc/affinity/affinity.hpp"
#include "dsgc/conv/convolution.hpp"
#include "dsgc/conv/filters.hpp"
#include "dsgc/core/error.hpp"
#include "dsgc/core/random.hpp"
#include "dsgc/core/smtx.hpp"
#include "dsgc/harness/dataset.hpp"
#include "dsgc/harness/experiment.hpp"
#include "dsgc/harness/synthetic.hpp"
#include "dsgc/variance/theorems.hpp"
#include "dsgc/variance/variance.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <string>

namespace {

using ojson = nlohmann::ordered_json;
using namespace dsgc;

struct Common {
    std::string data;
    bool use_g = false;
    bool use_f = false;
    std::string source = "ppmi";
    std::size_t window = 20;
    std::size_t k = 20;
};

void add_filter_flags(CLI::App* cmd, Common& c) {
    cmd->add_flag("--use-g", c.use_g, "Apply the object filter G = (D^-1 A)^2");
    cmd->add_flag("--use-f", c.use_f, "Apply the attribute filter F = (I + D^-1/2 A D^-1/2) / 2");
    cmd->add_option("--source", c.source, "Attribute affinity source")
        ->check(CLI::IsMember({"ppmi", "emb", "provided"}))
        ->capture_default_str();
    cmd->add_option("--window", c.window, "PPMI co-occurrence window")->capture_default_str();
    cmd->add_option("--knn-k", c.k, "Neighbours for the embedding k-NN graph")->capture_default_str();
}

ExperimentConfig base_config(const Common& c, Pipeline p) {
    ExperimentConfig cfg;
    cfg.pipeline = p;
    cfg.use_G = c.use_g;
    cfg.use_F = c.use_f;
    cfg.affinity_source = affinity_source_from_string(c.source);
    cfg.window = c.window;
    cfg.knn_k = c.k;
    return cfg;
}

void print(const ojson& j) { std::cout << j.dump(2) << '\n'; }

void write_report(const Report& r, const std::string& path, const std::string& format) {
    const ReportFormat f = format == "csv" ? ReportFormat::csv : ReportFormat::json;
    if (path.empty()) {
        std::cout << (f == ReportFormat::json ? report_to_json(r) : report_to_csv(r));
    } else {
        emit_report(r, f, path);
        std::cerr << "report written to " << path << '\n';
    }
}

ojson theorem_json(const TheoremCheck& c) {
    ojson j{{"theorem", c.theorem},          {"trials", c.trials}, {"holds", c.holds},
            {"worst_slack", c.worst_slack}, {"passed", c.passed}};
    if (c.theorem == 1) {
        double lo = c.raw_ratio.empty() ? 0.0 : c.raw_ratio.front(), hi = lo;
        for (double v : c.raw_ratio) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        j["raw_ratio_min"] = lo;
        j["raw_ratio_max"] = hi;
        j["inter_drift_q0"] = c.inter_drift;
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dimensionwise separable 2-D graph convolution toolkit"};
    app.require_subcommand(1);
    Common c;

    auto* load_check = app.add_subcommand("load-check", "Validate a dataset directory and print its statistics");
    load_check->add_option("--data", c.data, "Dataset directory")->required();

    std::string out;
    std::string filter_out;
    auto* affinity = app.add_subcommand("build-affinity", "Build the attribute affinity graph A2");
    affinity->add_option("--data", c.data, "Dataset directory")->required();
    affinity->add_option("--source", c.source, "Affinity source")
        ->check(CLI::IsMember({"ppmi", "emb"}))
        ->required();
    affinity->add_option("--window", c.window, "PPMI co-occurrence window")->capture_default_str();
    affinity->add_option("--k", c.k, "Neighbours for the k-NN graph")->capture_default_str();
    affinity->add_option("--out", out, "Write the adjacency as .smtx");
    affinity->add_option("--filter-out", filter_out, "Write F as .smtx with a .json sidecar");

    auto* filter = app.add_subcommand("filter", "Compute Z in {X, GX, XF, GXF}");
    filter->add_option("--data", c.data, "Dataset directory")->required();
    add_filter_flags(filter, c);
    filter->add_option("--out", out, "Write Z as .smtx");

    std::size_t labels_per_class = 20, valid_size = 500, threads = 1, clusters = 0;
    double train_fraction = -1.0, valid_fraction = 0.3;
    std::vector<std::uint64_t> seeds{0};
    std::string model = "mlp", report_path, format = "json", activation = "relu";
    TrainConfig train;
    bool sweep = false;
    auto* classify = app.add_subcommand("classify", "Semi-supervised classification (two-step MLP or GCN)");
    classify->add_option("--data", c.data, "Dataset directory")->required();
    add_filter_flags(classify, c);
    classify->add_option("--model", model, "Downstream model")->check(CLI::IsMember({"mlp", "gcn"}))->capture_default_str();
    classify->add_option("--labels-per-class", labels_per_class, "Training labels per class")->capture_default_str();
    classify->add_option("--valid-size", valid_size, "Validation objects")->capture_default_str();
    classify->add_option("--train-fraction", train_fraction, "Per-class fractional split instead of fixed counts");
    classify->add_option("--valid-fraction", valid_fraction, "Validation fraction with --train-fraction")->capture_default_str();
    classify->add_option("--lr", train.learning_rate, "Adam learning rate")->capture_default_str();
    classify->add_option("--epochs", train.epochs, "Training epochs")->capture_default_str();
    classify->add_option("--dropout", train.dropout, "Hidden-layer dropout")->capture_default_str();
    classify->add_option("--weight-decay", train.weight_decay, "L2 weight decay")->capture_default_str();
    classify->add_option("--hidden", train.hidden, "Hidden units")->capture_default_str();
    classify->add_option("--activation", activation, "Hidden activation")->check(CLI::IsMember({"relu", "tanh"}));
    classify->add_flag("--sweep", sweep, "Grid search dropout x learning rate x weight decay on validation accuracy");

    auto* cluster = app.add_subcommand("cluster", "Spectral clustering on the linear kernel ZZ^T");
    cluster->add_option("--data", c.data, "Dataset directory")->required();
    add_filter_flags(cluster, c);
    cluster->add_option("--k", clusters, "Number of clusters (default: number of classes)");

    for (auto* cmd : {classify, cluster}) {
        cmd->add_option("--seeds", seeds, "Seeds, comma separated")->delimiter(',')->capture_default_str();
        cmd->add_option("--threads", threads, "Seeds evaluated in parallel")->capture_default_str();
        cmd->add_option("--report", report_path, "Report file (stdout when absent)");
        cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    }

    auto* stats = app.add_subcommand("stats", "Intra/inter-class variance of Z");
    stats->add_option("--data", c.data, "Dataset directory")->required();
    add_filter_flags(stats, c);

    SbmParams sbm_params;
    sbm_params.n = 400;
    sbm_params.num_classes = 4;
    sbm_params.r = 0.2;
    sbm_params.q = 0.001;
    std::size_t sbm_attributes = 16;
    double sbm_noise = 1.0;
    auto* sbm = app.add_subcommand("sbm", "Sample a stochastic block model dataset");
    sbm->add_option("--n", sbm_params.n, "Objects")->capture_default_str();
    sbm->add_option("--k", sbm_params.num_classes, "Classes")->capture_default_str();
    sbm->add_option("--r", sbm_params.r, "Same-class edge probability")->capture_default_str();
    sbm->add_option("--q", sbm_params.q, "Cross-class edge probability")->capture_default_str();
    sbm->add_option("--seed", sbm_params.seed, "Seed")->capture_default_str();
    sbm->add_option("--attributes", sbm_attributes, "Feature columns")->capture_default_str();
    sbm->add_option("--noise", sbm_noise, "Feature noise scale around Gaussian class means")->capture_default_str();
    sbm->add_option("--out", out, "Dataset directory to write");

    SyntheticParams syn;
    auto* synthetic = app.add_subcommand("synthetic", "Write the two-view synthetic benchmark dataset");
    synthetic->add_option("--seed", syn.seed, "Seed")->capture_default_str();
    synthetic->add_option("--out", out, "Dataset directory to write")->required();

    int theorem = 1;
    std::size_t trials = 50;
    std::uint64_t theorem_seed = 0;
    auto* tcheck = app.add_subcommand("theorem-check", "Numerical checks of the variance-reduction theorems");
    tcheck->add_option("theorem", theorem, "Theorem number")->check(CLI::IsMember({1, 2, 3}))->required();
    tcheck->add_option("--trials", trials, "Seeded trials")->capture_default_str();
    tcheck->add_option("--seed", theorem_seed, "Base seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (load_check->parsed()) {
            const DatasetBundle b = load_dataset(c.data);
            print(ojson{{"name", b.name},
                        {"vertices", b.n_objects()},
                        {"edges", b.n_edges()},
                        {"features", b.n_attributes()},
                        {"classes", b.labels.num_classes()},
                        {"intra_class_edge_ratio", round6(b.intra_class_edge_ratio())},
                        {"directed", b.source_directed},
                        {"corpus", b.corpus.has_value()},
                        {"embeddings", b.embeddings.has_value()},
                        {"attribute_graph", b.attribute_graph.has_value()}});
        } else if (affinity->parsed()) {
            const DatasetBundle b = load_dataset(c.data);
            ExperimentConfig cfg = base_config(c, Pipeline::classify_two_step);
            const Graph a = build_attribute_graph(b, cfg);
            if (!out.empty()) write_smtx(std::filesystem::path(out), a.adjacency());
            std::size_t isolated = 0;
            for (double d : a.degrees()) isolated += d == 0.0;
            if (!filter_out.empty()) {
                cfg.use_F = true;
                save_filter(filter_out, *build_filters(b, cfg).f);
            }
            print(ojson{{"source", c.source},
                        {"attributes", a.size()},
                        {"nnz", a.adjacency().nnz()},
                        {"isolated_attributes", isolated}});
        } else if (filter->parsed()) {
            const DatasetBundle b = load_dataset(c.data);
            const ExperimentConfig cfg = base_config(c, Pipeline::stats);
            const FilterSet fs = build_filters(b, cfg);
            Signal2D z = b.features;
            if (fs.g && fs.f) z = dsgc::dsgc(z, *fs.g, *fs.f);
            else if (fs.g) z = apply_object_filter(z, *fs.g);
            else if (fs.f) z = apply_attribute_filter(z, *fs.f);
            if (!out.empty()) write_smtx(std::filesystem::path(out), z.to_sparse());
            ojson recipes = ojson::array();
            if (fs.g) recipes.push_back(fs.g->recipe().tag());
            if (fs.f) recipes.push_back(fs.f->recipe().tag());
            print(ojson{{"rows", z.n_objects()},
                        {"cols", z.n_attributes()},
                        {"stored", z.stored()},
                        {"dense", !z.is_sparse()},
                        {"recipes", recipes}});
        } else if (classify->parsed() || cluster->parsed()) {
            const DatasetBundle b = load_dataset(c.data);
            const bool is_classify = classify->parsed();
            ExperimentConfig cfg = base_config(
                c, is_classify ? (model == "gcn" ? Pipeline::classify_gcn : Pipeline::classify_two_step) : Pipeline::cluster);
            cfg.labels_per_class = labels_per_class;
            cfg.valid_size = valid_size;
            if (train_fraction >= 0.0) cfg.train_fraction = train_fraction;
            cfg.valid_fraction = valid_fraction;
            cfg.clusters = clusters;
            cfg.seeds = seeds;
            cfg.threads = threads;
            train.activation = activation_from_string(activation);
            cfg.train = train;
            cfg.output_path = report_path;
            if (sweep) {
                const auto entries = run_sweep(b, cfg);
                const auto& best = entries.front();
                std::cerr << "best: dropout=" << best.train.dropout << " lr=" << best.train.learning_rate
                          << " weight_decay=" << best.train.weight_decay << '\n';
                write_report(best.report, report_path, format);
            } else {
                write_report(run_experiment(b, cfg), report_path, format);
            }
        } else if (stats->parsed()) {
            const DatasetBundle b = load_dataset(c.data);
            const ExperimentConfig cfg = base_config(c, Pipeline::stats);
            const Report r = run_experiment(b, cfg);
            print(ojson{{"intra", round6(r.mean_of("intra"))},
                        {"inter", round6(r.mean_of("inter"))},
                        {"ratio", round6(r.mean_of("ratio"))},
                        {"n", b.n_objects()},
                        {"K", b.labels.num_classes()}});
        } else if (sbm->parsed()) {
            auto [g, y] = sample_sbm(sbm_params);
            DatasetBundle b;
            b.name = "sbm";
            Rng rng(derive_seed(sbm_params.seed, 1));
            DenseMatrix means(static_cast<std::size_t>(sbm_params.num_classes), sbm_attributes);
            std::normal_distribution<double> nd(0.0, 1.0);
            for (double& v : means.values()) v = nd(rng);
            b.features = sample_class_features(y, means, sbm_noise, derive_seed(sbm_params.seed, 2));
            b.object_graph = std::move(g);
            b.labels = std::move(y);
            if (!out.empty()) save_dataset(out, b);
            print(ojson{{"vertices", b.n_objects()},
                        {"edges", b.n_edges()},
                        {"classes", b.labels.num_classes()},
                        {"intra_class_edge_ratio", round6(b.intra_class_edge_ratio())}});
        } else if (synthetic->parsed()) {
            const DatasetBundle b = make_synthetic_benchmark(syn);
            save_dataset(out, b);
            print(ojson{{"vertices", b.n_objects()}, {"edges", b.n_edges()}, {"features", b.n_attributes()},
                        {"classes", b.labels.num_classes()}});
        } else if (tcheck->parsed()) {
            TheoremCheck r = theorem == 1   ? check_theorem1(trials, theorem_seed)
                             : theorem == 2 ? check_theorem2(trials, theorem_seed)
                                            : check_theorem3(trials, theorem_seed);
            print(theorem_json(r));
            return r.passed ? 0 : 1;
        }
    } catch (const ValidationError& e) {
        std::cerr << "dsgc: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dsgc: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
