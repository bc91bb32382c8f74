#pragma once

#include "dsgc/conv/filters.hpp"
#include "dsgc/harness/dataset.hpp"
#include "dsgc/learn/config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dsgc {

enum class Pipeline { classify_two_step, classify_gcn, cluster, stats, theorem_check };
enum class AffinitySource { ppmi, emb, provided };
enum class ReportFormat { json, csv };

std::string_view to_string(Pipeline p) noexcept;
Pipeline pipeline_from_string(std::string_view s);
std::string_view to_string(AffinitySource a) noexcept;
AffinitySource affinity_source_from_string(std::string_view s);

struct ExperimentConfig {
    Pipeline pipeline = Pipeline::classify_two_step;
    bool use_G = true;
    bool use_F = true;
    AffinitySource affinity_source = AffinitySource::ppmi;
    std::size_t window = 20;
    std::size_t knn_k = 20;
    std::size_t labels_per_class = 20;
    std::size_t valid_size = 500;
    /// When set, the per-class fractional split replaces labels_per_class/valid_size.
    std::optional<double> train_fraction;
    double valid_fraction = 0.3;
    std::size_t clusters = 0;  // 0 = number of classes
    std::vector<std::uint64_t> seeds{0};
    TrainConfig train;
    std::size_t threads = 1;
    std::string output_path;

    /// Throws ParameterError.
    void validate() const;
};

/// Filters resolved for a bundle and configuration.
struct FilterSet {
    std::optional<FilterMatrix> g;
    std::optional<FilterMatrix> f;
    std::optional<Graph> attribute_graph;
    std::size_t isolated_attributes = 0;
};

/// A⁽²⁾ from the configured source. Throws ParameterError when the bundle lacks it.
Graph build_attribute_graph(const DatasetBundle& bundle, const ExperimentConfig& cfg);
FilterSet build_filters(const DatasetBundle& bundle, const ExperimentConfig& cfg);

struct SeedResult {
    std::uint64_t seed = 0;
    std::vector<double> values;  // aligned with Report::metrics
};

struct Report {
    std::string dataset;
    std::string pipeline;
    std::string config_hash;
    std::vector<std::string> recipes;
    std::vector<std::string> notes;
    std::vector<std::string> metrics;
    std::vector<SeedResult> per_seed;
    std::vector<double> mean;
    std::vector<double> std;  // population standard deviation over seeds

    /// Fills mean and std from per_seed.
    void summarize();
    double mean_of(std::string_view metric) const;
};

/// Stable FNV-1a hash of the canonical configuration plus dataset name.
std::string config_hash(const ExperimentConfig& cfg, std::string_view dataset);

Report run_experiment(const DatasetBundle& bundle, const ExperimentConfig& cfg);

/// Fixed-epoch grid over dropout × learning rate × weight decay; the
/// configuration with the best mean validation accuracy is returned first.
struct SweepEntry {
    TrainConfig train;
    Report report;
};
std::vector<SweepEntry> run_sweep(const DatasetBundle& bundle, const ExperimentConfig& cfg);

/// Six significant digits, deterministic field order.
std::string report_to_json(const Report& r);
std::string report_to_csv(const Report& r);
void emit_report(const Report& r, ReportFormat format, const std::filesystem::path& path);
Report load_report_json(const std::filesystem::path& path);
Report parse_report_json(std::string_view text);

/// Rounds to six significant digits.
double round6(double v);

}  // namespace dsgc
