#include "dsgc/harness/dataset.hpp"

#include "dsgc/core/error.hpp"
#include "dsgc/core/smtx.hpp"
#include "dsgc/variance/variance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace dsgc {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
T parse_field(std::string_view tok, const std::string& where) {
    T v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw DataError(where + ": cannot parse '" + std::string(tok) + "'");
    return v;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw DataError("missing or unreadable file " + p.string());
    return in;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

std::vector<int> read_labels(const fs::path& path, std::size_t n, int k, const std::string& size_source) {
    auto in = open_in(path);
    std::vector<int> labels(n, -1);
    std::string line;
    std::size_t line_no = 0, entries = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto f = fields(line);
        if (f.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (f.size() != 2) throw DataError(where + ": expected `node<TAB>label`");
        const auto node = parse_field<std::size_t>(f[0], where);
        const auto label = parse_field<int>(f[1], where);
        ++entries;
        if (node >= n)
            throw ShapeError(where + ": node " + std::to_string(node) + " out of range for " + std::to_string(n) +
                             " objects in " + size_source);
        if (labels[node] != -1) throw DataError(where + ": duplicate label for node " + std::to_string(node));
        if (label < 0 || label >= k)
            throw DataError(where + ": label " + std::to_string(label) + " outside [0, " + std::to_string(k) +
                            ") declared by meta.json");
        labels[node] = label;
    }
    if (entries != n)
        throw ShapeError(path.string() + " has " + std::to_string(entries) + " labels but " + size_source + " has " +
                         std::to_string(n) + " objects");
    return labels;
}

void write_edges(const fs::path& path, const SparseMatrix& a) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto c = a.row_cols(i);
        auto v = a.row_values(i);
        for (std::size_t p = 0; p < c.size(); ++p)
            if (c[p] >= i) out << i << '\t' << c[p] << '\t' << format_exact(v[p]) << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::size_t DatasetBundle::n_edges() const {
    const auto& a = object_graph.adjacency();
    std::size_t e = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (Index j : a.row_cols(i)) e += j > i;
    return e;
}

double DatasetBundle::intra_class_edge_ratio() const { return dsgc::intra_class_edge_ratio(object_graph, labels); }

void DatasetBundle::validate() const {
    const std::size_t n = features.n_objects();
    const std::size_t m = features.n_attributes();
    if (object_graph.size() != n)
        throw ShapeError("object graph has " + std::to_string(object_graph.size()) + " vertices but features have " +
                         std::to_string(n) + " rows");
    if (labels.size() != n)
        throw ShapeError("labels have " + std::to_string(labels.size()) + " entries but features have " +
                         std::to_string(n) + " rows");
    if (corpus && corpus->vocab_size != m) throw ShapeError("corpus vocabulary differs from the feature count");
    if (embeddings && embeddings->size() != m) throw ShapeError("embedding table size differs from the feature count");
    if (attribute_graph && attribute_graph->size() != m)
        throw ShapeError("attribute graph size differs from the feature count");
}

SparseMatrix read_edge_list(const fs::path& path, std::size_t n, const std::string& size_source) {
    auto in = open_in(path);
    std::vector<Triplet> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto f = fields(line);
        if (f.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (f.size() != 2 && f.size() != 3) throw DataError(where + ": expected `src<TAB>dst<TAB>weight`");
        const auto s = parse_field<std::size_t>(f[0], where);
        const auto d = parse_field<std::size_t>(f[1], where);
        const double w = f.size() == 3 ? parse_field<double>(f[2], where) : 1.0;
        if (s >= n || d >= n)
            throw ShapeError(where + ": vertex " + std::to_string(std::max(s, d)) + " out of range for " +
                             std::to_string(n) + " vertices" + (size_source.empty() ? "" : " in " + size_source));
        if (!std::isfinite(w) || w < 0.0) throw DataError(where + ": edge weight must be finite and >= 0");
        edges.push_back({static_cast<Index>(s), static_cast<Index>(d), w});
    }
    std::sort(edges.begin(), edges.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triplet> merged;
    for (const auto& e : edges) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
            merged.back().value = std::max(merged.back().value, e.value);
        else
            merged.push_back(e);
    }
    return SparseMatrix::from_triplets(n, n, std::move(merged));
}

DatasetBundle load_dataset(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DataError("dataset directory " + dir.string() + " does not exist");
    const fs::path meta_file = dir / "meta.json";
    nlohmann::json meta;
    {
        auto in = open_in(meta_file);
        try {
            meta = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(meta_file.string() + ": " + e.what());
        }
    }
    DatasetBundle b;
    int k = 0;
    try {
        b.name = meta.at("name").get<std::string>();
        k = meta.at("K").get<int>();
        b.source_directed = meta.value("directed", false);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(meta_file.string() + ": " + e.what());
    }
    if (k < 1) throw DataError(meta_file.string() + ": K must be positive");

    const fs::path feat_file = dir / "features.smtx";
    b.features = read_smtx(feat_file);
    const std::size_t n = b.features.n_objects();
    const std::size_t m = b.features.n_attributes();
    const std::string feat_name = feat_file.filename().string();

    b.labels = LabelVector(read_labels(dir / "labels.tsv", n, k, feat_name), k);
    const SparseMatrix a = read_edge_list(dir / "graph.tsv", n, feat_name);
    // Directed links (and undirected lists stored one way) become undirected edges.
    b.object_graph = Graph(symmetrize_max(a), false);

    if (fs::exists(dir / "corpus.txt")) b.corpus = read_corpus(dir / "corpus.txt", m);
    if (fs::exists(dir / "embeddings.tsv")) b.embeddings = read_embeddings(dir / "embeddings.tsv", m);
    if (fs::exists(dir / "attribute_graph.tsv"))
        b.attribute_graph = Graph(symmetrize_max(read_edge_list(dir / "attribute_graph.tsv", m, feat_name)), false);
    b.validate();
    return b;
}

void save_dataset(const fs::path& dir, const DatasetBundle& b) {
    b.validate();
    fs::create_directories(dir);
    write_smtx(dir / "features.smtx", b.features.to_sparse());
    write_edges(dir / "graph.tsv", b.object_graph.adjacency());
    {
        auto out = open_out(dir / "labels.tsv");
        for (std::size_t i = 0; i < b.labels.size(); ++i) out << i << '\t' << b.labels[i] << '\n';
    }
    {
        nlohmann::ordered_json meta{{"name", b.name}, {"K", b.labels.num_classes()}, {"directed", b.source_directed}};
        auto out = open_out(dir / "meta.json");
        out << meta.dump(2) << '\n';
    }
    if (b.attribute_graph) write_edges(dir / "attribute_graph.tsv", b.attribute_graph->adjacency());
    if (b.corpus) {
        auto out = open_out(dir / "corpus.txt");
        for (const auto& doc : b.corpus->documents) {
            for (std::size_t t = 0; t < doc.size(); ++t) out << (t ? " " : "") << doc[t];
            out << '\n';
        }
    }
    if (b.embeddings) {
        auto out = open_out(dir / "embeddings.tsv");
        const auto& v = b.embeddings->vectors;
        for (std::size_t i = 0; i < v.rows(); ++i) {
            out << i;
            for (double x : v.row(i)) out << ' ' << format_exact(x);
            out << '\n';
        }
    }
}

}  // namespace dsgc
