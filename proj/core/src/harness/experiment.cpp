#include "dsgc/harness/experiment.hpp"

#include "dsgc/affinity/affinity.hpp"
#include "dsgc/conv/convolution.hpp"
#include "dsgc/core/error.hpp"
#include "dsgc/harness/split.hpp"
#include "dsgc/learn/cluster.hpp"
#include "dsgc/learn/gcn.hpp"
#include "dsgc/learn/metrics.hpp"
#include "dsgc/learn/mlp.hpp"
#include "dsgc/variance/variance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>

namespace dsgc {

using ojson = nlohmann::ordered_json;

std::string_view to_string(Pipeline p) noexcept {
    switch (p) {
        case Pipeline::classify_two_step: return "classify_two_step";
        case Pipeline::classify_gcn: return "classify_gcn";
        case Pipeline::cluster: return "cluster";
        case Pipeline::stats: return "stats";
        case Pipeline::theorem_check: return "theorem_check";
    }
    return "?";
}

Pipeline pipeline_from_string(std::string_view s) {
    for (auto p : {Pipeline::classify_two_step, Pipeline::classify_gcn, Pipeline::cluster, Pipeline::stats,
                   Pipeline::theorem_check})
        if (to_string(p) == s) return p;
    throw ParameterError("unknown pipeline '" + std::string(s) + "'");
}

std::string_view to_string(AffinitySource a) noexcept {
    switch (a) {
        case AffinitySource::ppmi: return "ppmi";
        case AffinitySource::emb: return "emb";
        case AffinitySource::provided: return "provided";
    }
    return "?";
}

AffinitySource affinity_source_from_string(std::string_view s) {
    for (auto a : {AffinitySource::ppmi, AffinitySource::emb, AffinitySource::provided})
        if (to_string(a) == s) return a;
    throw ParameterError("unknown affinity source '" + std::string(s) + "' (expected ppmi, emb or provided)");
}

void ExperimentConfig::validate() const {
    train.validate();
    if (seeds.empty()) throw ParameterError("experiment: at least one seed is required");
    if (threads == 0) throw ParameterError("experiment: threads must be positive");
    if (window == 0) throw ParameterError("experiment: window must be >= 1");
    if (knn_k == 0) throw ParameterError("experiment: k must be >= 1");
    if (train_fraction && !(*train_fraction >= 0.0 && *train_fraction + valid_fraction <= 1.0))
        throw ParameterError("experiment: split fractions must lie in [0, 1]");
}

Graph build_attribute_graph(const DatasetBundle& b, const ExperimentConfig& cfg) {
    switch (cfg.affinity_source) {
        case AffinitySource::ppmi:
            if (!b.corpus) throw ParameterError("affinity source ppmi needs corpus.txt in the dataset");
            return ppmi_matrix(cooccurrence_counts(*b.corpus, cfg.window));
        case AffinitySource::emb:
            if (!b.embeddings) throw ParameterError("affinity source emb needs embeddings.tsv in the dataset");
            return knn_graph(*b.embeddings, cfg.knn_k);
        case AffinitySource::provided:
            if (!b.attribute_graph)
                throw ParameterError("affinity source provided needs attribute_graph.tsv in the dataset");
            return *b.attribute_graph;
    }
    throw ParameterError("unknown affinity source");
}

namespace {

std::string affinity_tag(const ExperimentConfig& cfg) {
    switch (cfg.affinity_source) {
        case AffinitySource::ppmi: return "ppmi(log=natural,weighting=inverse_distance,window=" + std::to_string(cfg.window) + ")";
        case AffinitySource::emb: return "knn(k=" + std::to_string(cfg.knn_k) + ",metric=euclidean,weights=binary)";
        case AffinitySource::provided: return "provided(attribute_graph.tsv)";
    }
    return "?";
}

bool needs_g(const ExperimentConfig& cfg) {
    return cfg.pipeline == Pipeline::classify_gcn || cfg.pipeline == Pipeline::theorem_check || cfg.use_G;
}

bool needs_f(const ExperimentConfig& cfg) { return cfg.pipeline == Pipeline::theorem_check || cfg.use_F; }

// Stage labels for propagated errors.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(name) + ": " + e.what());
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string(name) + ": " + e.what());
    } catch (const IoError& e) {
        throw IoError(std::string(name) + ": " + e.what());
    }
}

Signal2D filtered_signal(const DatasetBundle& b, const std::optional<FilterMatrix>& g,
                         const std::optional<FilterMatrix>& f) {
    if (g && f) return dsgc(b.features, *g, *f);
    if (g) return apply_object_filter(b.features, *g);
    if (f) return apply_attribute_filter(b.features, *f);
    return b.features;
}

LabelVector split_for(const LabelVector& y, const ExperimentConfig& cfg, std::uint64_t seed) {
    if (cfg.train_fraction) return sample_fraction_split(y, *cfg.train_fraction, cfg.valid_fraction, seed);
    return sample_label_split(y, cfg.labels_per_class, cfg.valid_size, seed);
}

bool has_valid(const ExperimentConfig& cfg) { return cfg.train_fraction ? cfg.valid_fraction > 0.0 : cfg.valid_size > 0; }

ojson config_json(const ExperimentConfig& cfg) {
    const auto& t = cfg.train;
    ojson seeds = ojson::array();
    for (auto s : cfg.seeds) seeds.push_back(s);
    return ojson{{"pipeline", to_string(cfg.pipeline)},
                 {"use_G", cfg.use_G},
                 {"use_F", cfg.use_F},
                 {"affinity_source", to_string(cfg.affinity_source)},
                 {"window", cfg.window},
                 {"k", cfg.knn_k},
                 {"labels_per_class", cfg.labels_per_class},
                 {"valid_size", cfg.valid_size},
                 {"train_fraction", cfg.train_fraction ? ojson(*cfg.train_fraction) : ojson(nullptr)},
                 {"valid_fraction", cfg.valid_fraction},
                 {"clusters", cfg.clusters},
                 {"seeds", seeds},
                 {"train",
                  {{"learning_rate", t.learning_rate},
                   {"epochs", t.epochs},
                   {"dropout", t.dropout},
                   {"weight_decay", t.weight_decay},
                   {"adam_beta1", t.adam_beta1},
                   {"adam_beta2", t.adam_beta2},
                   {"adam_eps", t.adam_eps},
                   {"hidden", t.hidden},
                   {"activation", to_string(t.activation)}}}};
}

}  // namespace

FilterSet build_filters(const DatasetBundle& b, const ExperimentConfig& cfg) {
    FilterSet fs;
    if (needs_g(cfg)) {
        fs.g = stage("object filter", [&] {
            return cfg.pipeline == Pipeline::classify_gcn ? build_gcn_filter(b.object_graph)
                                                           : build_object_filter(b.object_graph);
        });
    }
    if (needs_f(cfg)) {
        fs.attribute_graph = stage("attribute graph", [&] { return build_attribute_graph(b, cfg); });
        fs.f = stage("attribute filter", [&] {
            FilterMatrix f = build_attribute_filter(*fs.attribute_graph);
            FilterRecipe r = f.recipe();
            r.params["graph"] = affinity_tag(cfg);
            return FilterMatrix(f.matrix(), f.side(), std::move(r));
        });
        for (double d : fs.attribute_graph->degrees()) fs.isolated_attributes += d == 0.0;
    }
    return fs;
}

std::string config_hash(const ExperimentConfig& cfg, std::string_view dataset) {
    const std::string text = std::string(dataset) + "\n" + config_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void Report::summarize() {
    mean.assign(metrics.size(), 0.0);
    std.assign(metrics.size(), 0.0);
    if (per_seed.empty()) return;
    const auto n = static_cast<double>(per_seed.size());
    for (std::size_t k = 0; k < metrics.size(); ++k) {
        double s = 0.0;
        for (const auto& r : per_seed) s += r.values[k];
        mean[k] = s / n;
        double v = 0.0;
        for (const auto& r : per_seed) v += (r.values[k] - mean[k]) * (r.values[k] - mean[k]);
        std[k] = std::sqrt(v / n);
    }
}

double Report::mean_of(std::string_view metric) const {
    for (std::size_t k = 0; k < metrics.size(); ++k)
        if (metrics[k] == metric) return mean.at(k);
    throw ParameterError("report has no metric '" + std::string(metric) + "'");
}

Report run_experiment(const DatasetBundle& b, const ExperimentConfig& cfg) {
    cfg.validate();
    b.validate();
    Report rep;
    rep.dataset = b.name;
    rep.pipeline = std::string(to_string(cfg.pipeline));
    rep.config_hash = config_hash(cfg, b.name);

    const FilterSet fs = build_filters(b, cfg);
    if (fs.g) rep.recipes.push_back("G=" + fs.g->recipe().tag());
    if (fs.f) rep.recipes.push_back("F=" + fs.f->recipe().tag());
    if (b.source_directed) rep.notes.push_back("object graph was directed and has been symmetrized as max(A, A^T)");
    if (fs.isolated_attributes > 0)
        rep.notes.push_back(std::to_string(fs.isolated_attributes) +
                            " isolated attributes keep a 1/2 diagonal in F (not rescaled)");
    if (cfg.pipeline == Pipeline::classify_gcn && !cfg.use_G)
        rep.notes.push_back("classify_gcn always propagates with G; use_G=false has no effect");

    const auto& y = b.labels;
    std::function<std::vector<double>(std::uint64_t)> per_seed;

    Signal2D z;
    if (cfg.pipeline != Pipeline::classify_gcn && cfg.pipeline != Pipeline::theorem_check)
        z = stage("filtering", [&] {
            return filtered_signal(b, cfg.use_G ? fs.g : std::nullopt, cfg.use_F ? fs.f : std::nullopt);
        });

    switch (cfg.pipeline) {
        case Pipeline::classify_two_step:
        case Pipeline::classify_gcn: {
            rep.metrics = {"test_accuracy", "train_accuracy"};
            if (has_valid(cfg)) rep.metrics.insert(rep.metrics.begin() + 1, "valid_accuracy");
            rep.recipes.push_back(cfg.pipeline == Pipeline::classify_gcn ? "model=gcn(layers=2,first=GXF)"
                                                                          : "model=mlp(hidden_layers=1)");
            per_seed = [&, gcn = cfg.pipeline == Pipeline::classify_gcn](std::uint64_t seed) {
                const LabelVector split = stage("split", [&] { return split_for(y, cfg, seed); });
                TrainConfig t = cfg.train;
                t.seed = seed;
                std::vector<int> pred;
                if (gcn) {
                    const std::optional<FilterMatrix> f = cfg.use_F ? fs.f : std::nullopt;
                    const GcnParams p = stage("training", [&] { return train_gcn(b.features, *fs.g, f, split, t); });
                    pred = argmax_rows(gcn_forward(b.features, *fs.g, f, p, t)).labels;
                } else {
                    const MlpParams p = stage("training", [&] { return train_mlp(z, split, t); });
                    pred = predict_mlp(p, z, t.activation).labels;
                }
                std::vector<double> out{classification_accuracy(pred, split, split.test())};
                if (has_valid(cfg)) out.push_back(classification_accuracy(pred, split, split.valid()));
                out.push_back(classification_accuracy(pred, split, split.train()));
                return out;
            };
            break;
        }
        case Pipeline::cluster: {
            rep.metrics = {"accuracy", "nmi"};
            rep.recipes.push_back("clustering=spectral(kernel=linear,rows=l2,init=kmeans++,restarts=10)");
            const std::size_t k = cfg.clusters ? cfg.clusters : static_cast<std::size_t>(y.num_classes());
            per_seed = [&, k](std::uint64_t seed) {
                const ClusterAssignment a = stage("clustering", [&] { return spectral_cluster(z, k, seed); });
                return std::vector<double>{clustering_accuracy(a, y), nmi(a, y)};
            };
            break;
        }
        case Pipeline::stats: {
            rep.metrics = {"intra", "inter", "ratio", "total"};
            const ClassStats st = stage("variance", [&] { return variance_decomposition(z, y); });
            rep.per_seed.push_back({cfg.seeds.front(), {st.intra_variance, st.inter_variance, st.ratio, st.total_variance}});
            break;
        }
        case Pipeline::theorem_check: {
            rep.metrics = {"ratio_X", "ratio_GX", "ratio_XF", "ratio_GXF"};
            std::vector<double> v;
            for (auto [use_g, use_f] : {std::pair{false, false}, {true, false}, {false, true}, {true, true}}) {
                const Signal2D s = filtered_signal(b, use_g ? fs.g : std::nullopt, use_f ? fs.f : std::nullopt);
                v.push_back(stage("variance", [&] { return variance_decomposition(s, y).ratio; }));
            }
            rep.per_seed.push_back({cfg.seeds.front(), std::move(v)});
            break;
        }
    }

    if (per_seed) {
        rep.per_seed.resize(cfg.seeds.size());
        const std::size_t workers = std::min(cfg.threads, cfg.seeds.size());
        if (workers <= 1) {
            for (std::size_t i = 0; i < cfg.seeds.size(); ++i) rep.per_seed[i] = {cfg.seeds[i], per_seed(cfg.seeds[i])};
        } else {
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex mu;
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t i; (i = next++) < cfg.seeds.size();) {
                        try {
                            rep.per_seed[i] = {cfg.seeds[i], per_seed(cfg.seeds[i])};
                        } catch (...) {
                            std::lock_guard lock(mu);
                            if (!failure) failure = std::current_exception();
                        }
                    }
                });
            for (auto& t : pool) t.join();
            if (failure) std::rethrow_exception(failure);
        }
    }
    rep.summarize();
    return rep;
}

std::vector<SweepEntry> run_sweep(const DatasetBundle& b, const ExperimentConfig& cfg) {
    if (cfg.pipeline != Pipeline::classify_two_step && cfg.pipeline != Pipeline::classify_gcn)
        throw ParameterError("sweep: only classification pipelines can be swept");
    if (!has_valid(cfg)) throw ParameterError("sweep: a validation set is required");
    std::vector<SweepEntry> out;
    for (double dropout : {0.0, 0.2, 0.5})
        for (double lr : {1.0, 0.1, 0.01, 0.001})
            for (double wd : {5e-3, 5e-4, 5e-5, 5e-6, 5e-7}) {
                ExperimentConfig c = cfg;
                c.train.dropout = dropout;
                c.train.learning_rate = lr;
                c.train.weight_decay = wd;
                out.push_back({c.train, run_experiment(b, c)});
            }
    std::stable_sort(out.begin(), out.end(), [](const SweepEntry& a, const SweepEntry& c) {
        return a.report.mean_of("valid_accuracy") > c.report.mean_of("valid_accuracy");
    });
    return out;
}

double round6(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

namespace {

std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string report_to_json(const Report& r) {
    ojson j;
    j["dataset"] = r.dataset;
    j["pipeline"] = r.pipeline;
    j["config_hash"] = r.config_hash;
    j["recipes"] = r.recipes;
    j["notes"] = r.notes;
    j["metrics"] = r.metrics;
    ojson rows = ojson::array();
    for (const auto& s : r.per_seed) {
        ojson row;
        row["seed"] = s.seed;
        for (std::size_t k = 0; k < r.metrics.size(); ++k) row[r.metrics[k]] = round6(s.values[k]);
        rows.push_back(std::move(row));
    }
    j["per_seed"] = std::move(rows);
    ojson mean = ojson::object(), sd = ojson::object();
    for (std::size_t k = 0; k < r.metrics.size(); ++k) {
        mean[r.metrics[k]] = round6(r.mean.at(k));
        sd[r.metrics[k]] = round6(r.std.at(k));
    }
    j["mean"] = std::move(mean);
    j["std"] = std::move(sd);
    return j.dump(2) + "\n";
}

std::string report_to_csv(const Report& r) {
    std::ostringstream out;
    out << "seed";
    for (const auto& m : r.metrics) out << ',' << m;
    for (const auto& m : r.metrics) out << ',' << m << "_std";
    out << '\n';
    for (const auto& s : r.per_seed) {
        out << s.seed;
        for (double v : s.values) out << ',' << csv_number(v);
        for (std::size_t k = 0; k < r.metrics.size(); ++k) out << ',';
        out << '\n';
    }
    out << "summary";
    for (double v : r.mean) out << ',' << csv_number(v);
    for (double v : r.std) out << ',' << csv_number(v);
    out << '\n';
    return out.str();
}

void emit_report(const Report& r, ReportFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write report " + path.string());
    out << (format == ReportFormat::json ? report_to_json(r) : report_to_csv(r));
    if (!out) throw IoError("write failed for report " + path.string());
}

Report parse_report_json(std::string_view text) {
    ojson j;
    try {
        j = ojson::parse(text);
        Report r;
        r.dataset = j.at("dataset").get<std::string>();
        r.pipeline = j.at("pipeline").get<std::string>();
        r.config_hash = j.at("config_hash").get<std::string>();
        r.recipes = j.at("recipes").get<std::vector<std::string>>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
        r.metrics = j.at("metrics").get<std::vector<std::string>>();
        for (const auto& row : j.at("per_seed")) {
            SeedResult s;
            s.seed = row.at("seed").get<std::uint64_t>();
            for (const auto& m : r.metrics) s.values.push_back(row.at(m).get<double>());
            r.per_seed.push_back(std::move(s));
        }
        for (const auto& m : r.metrics) {
            r.mean.push_back(j.at("mean").at(m).get<double>());
            r.std.push_back(j.at("std").at(m).get<double>());
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("report: ") + e.what());
    }
}

Report load_report_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open report " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_report_json(ss.str());
}

}  // namespace dsgc
