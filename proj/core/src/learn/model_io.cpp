#include "dsgc/learn/model_io.hpp"

#include "dsgc/core/error.hpp"
#include "dsgc/core/smtx.hpp"
#include "dsgc/core/sparse_matrix.hpp"

#include <fstream>
#include <json.hpp>

namespace dsgc {

namespace {

using json = nlohmann::ordered_json;

std::filesystem::path part(const std::filesystem::path& prefix, const std::string& name) {
    return prefix.string() + "." + name + ".smtx";
}

std::filesystem::path meta_path(const std::filesystem::path& prefix) { return prefix.string() + ".json"; }

void write_dense(const std::filesystem::path& path, const DenseMatrix& m) { write_smtx(path, SparseMatrix::from_dense(m)); }

void write_vector(const std::filesystem::path& path, const std::vector<double>& v) {
    write_dense(path, DenseMatrix(1, v.size(), v));
}

DenseMatrix read_dense(const std::filesystem::path& path) { return read_smtx(path).to_dense(); }

std::vector<double> read_vector(const std::filesystem::path& path) {
    const DenseMatrix d = read_dense(path);
    if (d.rows() != 1) throw DataError(path.string() + ": expected a single-row vector");
    return {d.values().begin(), d.values().end()};
}

json config_json(const TrainConfig& c) {
    return json{{"learning_rate", c.learning_rate}, {"epochs", c.epochs},          {"dropout", c.dropout},
                {"weight_decay", c.weight_decay},   {"adam_beta1", c.adam_beta1},  {"adam_beta2", c.adam_beta2},
                {"adam_eps", c.adam_eps},           {"hidden", c.hidden},          {"activation", to_string(c.activation)},
                {"seed", c.seed}};
}

TrainConfig config_from(const json& j) {
    TrainConfig c;
    c.learning_rate = j.at("learning_rate").get<double>();
    c.epochs = j.at("epochs").get<std::size_t>();
    c.dropout = j.at("dropout").get<double>();
    c.weight_decay = j.at("weight_decay").get<double>();
    c.adam_beta1 = j.at("adam_beta1").get<double>();
    c.adam_beta2 = j.at("adam_beta2").get<double>();
    c.adam_eps = j.at("adam_eps").get<double>();
    c.hidden = j.at("hidden").get<std::size_t>();
    c.activation = activation_from_string(j.at("activation").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

void write_meta(const std::filesystem::path& prefix, const std::string& model, const TrainConfig& cfg,
                std::size_t epochs_run) {
    json j{{"model", model}, {"config", config_json(cfg)}, {"seed", cfg.seed}, {"epochs_run", epochs_run}};
    std::ofstream out(meta_path(prefix));
    if (!out) throw IoError("cannot write " + meta_path(prefix).string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + meta_path(prefix).string());
}

json read_meta(const std::filesystem::path& prefix, const std::string& model) {
    std::ifstream in(meta_path(prefix));
    if (!in) throw DataError("cannot open " + meta_path(prefix).string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(meta_path(prefix).string() + ": " + e.what());
    }
    if (j.value("model", "") != model)
        throw DataError(meta_path(prefix).string() + ": expected a " + model + " model");
    return j;
}

}  // namespace

void save_mlp(const std::filesystem::path& prefix, const MlpParams& p, const TrainConfig& cfg, std::size_t epochs_run) {
    write_dense(part(prefix, "w1"), p.w1);
    write_vector(part(prefix, "b1"), p.b1);
    write_dense(part(prefix, "w2"), p.w2);
    write_vector(part(prefix, "b2"), p.b2);
    write_meta(prefix, "mlp", cfg, epochs_run);
}

MlpParams load_mlp(const std::filesystem::path& prefix, TrainConfig* cfg) {
    const json j = read_meta(prefix, "mlp");
    if (cfg) *cfg = config_from(j.at("config"));
    return {read_dense(part(prefix, "w1")), read_vector(part(prefix, "b1")), read_dense(part(prefix, "w2")),
            read_vector(part(prefix, "b2"))};
}

void save_gcn(const std::filesystem::path& prefix, const GcnParams& p, const TrainConfig& cfg, std::size_t epochs_run) {
    write_dense(part(prefix, "w1"), p.w1);
    write_dense(part(prefix, "w2"), p.w2);
    write_meta(prefix, "gcn", cfg, epochs_run);
}

GcnParams load_gcn(const std::filesystem::path& prefix, TrainConfig* cfg) {
    const json j = read_meta(prefix, "gcn");
    if (cfg) *cfg = config_from(j.at("config"));
    return {read_dense(part(prefix, "w1")), read_dense(part(prefix, "w2"))};
}

}  // namespace dsgc
