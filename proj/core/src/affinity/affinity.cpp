#include "dsgc/affinity/affinity.hpp"

#include "dsgc/core/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

namespace dsgc {

void Corpus::validate() const {
    for (std::size_t d = 0; d < documents.size(); ++d) {
        for (auto tok : documents[d]) {
            if (tok >= vocab_size)
                throw DataError("corpus: token id " + std::to_string(tok) + " in document " + std::to_string(d) +
                                " exceeds vocabulary size " + std::to_string(vocab_size));
        }
    }
}

namespace {

// Open-addressing accumulator. Each key's sum is built in insertion order.
class PairAccumulator {
public:
    void add(std::uint64_t key, double w) {
        if (2 * (size_ + 1) > keys_.size()) grow();
        std::size_t slot = probe(key);
        if (keys_[slot] == kEmpty) {
            keys_[slot] = key;
            ++size_;
        }
        vals_[slot] += w;
    }

    std::vector<std::pair<std::uint64_t, double>> sorted() const {
        std::vector<std::pair<std::uint64_t, double>> out;
        out.reserve(size_);
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (keys_[i] != kEmpty) out.emplace_back(keys_[i], vals_[i]);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

    std::size_t probe(std::uint64_t key) const {
        const std::size_t mask = keys_.size() - 1;
        std::size_t slot = static_cast<std::size_t>((key * 0x9e3779b97f4a7c15ULL) >> 20) & mask;
        while (keys_[slot] != kEmpty && keys_[slot] != key) slot = (slot + 1) & mask;
        return slot;
    }

    void grow() {
        std::vector<std::uint64_t> old_keys = std::move(keys_);
        std::vector<double> old_vals = std::move(vals_);
        const std::size_t cap = old_keys.empty() ? 1024 : 2 * old_keys.size();
        keys_.assign(cap, kEmpty);
        vals_.assign(cap, 0.0);
        for (std::size_t i = 0; i < old_keys.size(); ++i) {
            if (old_keys[i] == kEmpty) continue;
            const std::size_t slot = probe(old_keys[i]);
            keys_[slot] = old_keys[i];
            vals_[slot] = old_vals[i];
        }
    }

    std::vector<std::uint64_t> keys_;
    std::vector<double> vals_;
    std::size_t size_ = 0;
};

}  // namespace

CooccurrenceCounts cooccurrence_counts(const Corpus& corpus, std::size_t window, CooccurrenceWeighting weighting) {
    if (window < 1) throw ParameterError("cooccurrence_counts: window must be >= 1");
    corpus.validate();
    const std::uint64_t m = corpus.vocab_size;
    PairAccumulator acc;
    for (const auto& doc : corpus.documents) {
        for (std::size_t p = 0; p < doc.size(); ++p) {
            const std::size_t last = std::min(doc.size() - 1, p + window);
            for (std::size_t q = p + 1; q <= last; ++q) {
                const double w = weighting == CooccurrenceWeighting::inverse_distance
                                     ? 1.0 / static_cast<double>(q - p)
                                     : 1.0;
                acc.add(doc[p] * m + doc[q], w);
                acc.add(doc[q] * m + doc[p], w);
            }
        }
    }
    const auto entries = acc.sorted();
    std::vector<std::size_t> offsets(m + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    cols.reserve(entries.size());
    vals.reserve(entries.size());
    for (const auto& [key, w] : entries) {
        ++offsets[key / m + 1];
        cols.push_back(static_cast<Index>(key % m));
        vals.push_back(w);
    }
    for (std::size_t i = 0; i < m; ++i) offsets[i + 1] += offsets[i];

    CooccurrenceCounts out;
    out.pair_weights = SparseMatrix(m, m, std::move(offsets), std::move(cols), std::move(vals));
    out.unigram_weights = out.pair_weights.row_sums();
    for (double v : out.pair_weights.values()) out.total_weight += v;
    return out;
}

Graph ppmi_matrix(const CooccurrenceCounts& counts) {
    if (!(counts.total_weight > 0.0)) throw DataError("ppmi_matrix: empty corpus (total co-occurrence weight is 0)");
    const auto& pw = counts.pair_weights;
    const auto& uni = counts.unigram_weights;
    const double total = counts.total_weight;
    std::vector<std::size_t> offsets(pw.rows() + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    for (std::size_t i = 0; i < pw.rows(); ++i) {
        auto rc = pw.row_cols(i);
        auto rv = pw.row_values(i);
        for (std::size_t p = 0; p < rc.size(); ++p) {
            const std::size_t j = rc[p];
            if (j == i || rv[p] <= 0.0) continue;
            const double pmi = std::log((rv[p] / total) / ((uni[i] / total) * (uni[j] / total)));
            if (pmi > 0.0) {
                cols.push_back(rc[p]);
                vals.push_back(pmi);
            }
        }
        offsets[i + 1] = vals.size();
    }
    return Graph(SparseMatrix(pw.rows(), pw.cols(), std::move(offsets), std::move(cols), std::move(vals)), false);
}

Graph knn_graph(const EmbeddingTable& e, std::size_t k, KnnMetric metric) {
    (void)metric;  // euclidean is the only metric
    const std::size_t m = e.size();
    if (k >= m) throw ParameterError("knn_graph: k=" + std::to_string(k) + " must be smaller than m=" + std::to_string(m));
    const auto& v = e.vectors;
    std::vector<Triplet> edges;
    edges.reserve(m * k);
    std::vector<std::pair<double, Index>> cand;
    cand.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        cand.clear();
        auto vi = v.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            auto vj = v.row(j);
            double d2 = 0.0;
            for (std::size_t t = 0; t < vi.size(); ++t) {
                const double diff = vi[t] - vj[t];
                d2 += diff * diff;
            }
            cand.emplace_back(d2, static_cast<Index>(j));
        }
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
        for (std::size_t t = 0; t < k; ++t) edges.push_back({static_cast<Index>(i), cand[t].second, 1.0});
    }
    const SparseMatrix directed = SparseMatrix::from_triplets(m, m, std::move(edges));
    return Graph(symmetrize_max(directed), false);
}

namespace {

std::vector<std::string_view> tokens_of(std::string_view line) {
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
T parse_or_throw(std::string_view tok, const std::string& where) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw DataError(where + ": cannot parse '" + std::string(tok) + "'");
    return value;
}

}  // namespace

Corpus read_corpus(std::istream& in, std::size_t vocab_size, const std::string& source) {
    Corpus c;
    c.vocab_size = vocab_size;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::uint32_t> doc;
        for (auto tok : tokens_of(line))
            doc.push_back(parse_or_throw<std::uint32_t>(tok, source + ":" + std::to_string(line_no)));
        c.documents.push_back(std::move(doc));
    }
    c.validate();
    return c;
}

Corpus read_corpus(const std::filesystem::path& path, std::size_t vocab_size) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_corpus(in, vocab_size, path.string());
}

EmbeddingTable read_embeddings(std::istream& in, std::size_t vocab_size, const std::string& source) {
    std::vector<std::vector<double>> rows(vocab_size);
    std::vector<char> seen(vocab_size, 0);
    std::size_t dim = 0;
    bool have_dim = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        const std::string where = source + ":" + std::to_string(line_no);
        const auto id = parse_or_throw<std::size_t>(toks[0], where);
        if (id >= vocab_size) throw DataError(where + ": token id " + std::to_string(id) + " outside vocabulary");
        if (seen[id]) throw DataError(where + ": duplicate embedding for token " + std::to_string(id));
        if (!have_dim) {
            dim = toks.size() - 1;
            have_dim = true;
        } else if (toks.size() - 1 != dim) {
            throw DataError(where + ": embedding dimension " + std::to_string(toks.size() - 1) + " != " + std::to_string(dim));
        }
        seen[id] = 1;
        for (std::size_t t = 1; t < toks.size(); ++t) {
            const double v = parse_or_throw<double>(toks[t], where);
            if (!std::isfinite(v)) throw DataError(where + ": non-finite embedding value");
            rows[id].push_back(v);
        }
    }
    for (std::size_t id = 0; id < vocab_size; ++id)
        if (!seen[id]) throw DataError(source + ": no embedding for token " + std::to_string(id));
    EmbeddingTable e;
    e.vectors = DenseMatrix(vocab_size, dim);
    for (std::size_t id = 0; id < vocab_size; ++id) std::copy(rows[id].begin(), rows[id].end(), e.vectors.row(id).begin());
    return e;
}

EmbeddingTable read_embeddings(const std::filesystem::path& path, std::size_t vocab_size) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_embeddings(in, vocab_size, path.string());
}

}  // namespace dsgc
