#pragma once

#include "dsgc/affinity/affinity.hpp"
#include "dsgc/core/graph.hpp"
#include "dsgc/core/labels.hpp"
#include "dsgc/core/signal.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace dsgc {

/// Everything an experiment reads from a dataset directory:
///
///   features.smtx         n×m signal
///   graph.tsv             src<TAB>dst<TAB>weight, 0-indexed objects
///   labels.tsv            node<TAB>label, one line per object
///   meta.json             {"name": ..., "K": ..., "directed": ...}
///   corpus.txt            optional, one document of attribute ids per line
///   embeddings.tsv        optional, `id v1 ... vd` per attribute
///   attribute_graph.tsv   optional, src<TAB>dst<TAB>weight over attributes
struct DatasetBundle {
    std::string name;
    Signal2D features;
    Graph object_graph;  // symmetrized when the source was directed
    LabelVector labels;
    std::optional<Corpus> corpus;
    std::optional<EmbeddingTable> embeddings;
    std::optional<Graph> attribute_graph;
    bool source_directed = false;

    std::size_t n_objects() const noexcept { return features.n_objects(); }
    std::size_t n_attributes() const noexcept { return features.n_attributes(); }
    /// Unordered object pairs joined by an edge, self-loops excluded.
    std::size_t n_edges() const;
    double intra_class_edge_ratio() const;

    /// Throws ShapeError on any cross-component size mismatch.
    void validate() const;
};

DatasetBundle load_dataset(const std::filesystem::path& dir);

/// Writes the directory layout read by load_dataset. Undirected graphs are
/// written once per unordered pair.
void save_dataset(const std::filesystem::path& dir, const DatasetBundle& bundle);

/// Parses a `src dst weight` edge list over `n` vertices. Repeated pairs keep
/// the largest weight.
/// `size_source` names the file that fixed `n`, for error messages.
SparseMatrix read_edge_list(const std::filesystem::path& path, std::size_t n, const std::string& size_source = "");

}  // namespace dsgc
