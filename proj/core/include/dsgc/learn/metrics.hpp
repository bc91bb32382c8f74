#pragma once

#include "dsgc/core/labels.hpp"
#include "dsgc/learn/cluster.hpp"

#include <span>
#include <vector>

namespace dsgc {

/// Fraction of `indices` where predicted equals true label (all objects when empty).
double classification_accuracy(std::span<const int> predicted, const LabelVector& truth,
                               std::span<const std::size_t> indices = {});

/// Minimum-cost assignment on a rectangular cost matrix (rows ≤ or > cols both fine).
/// Returns, for each row, the assigned column or -1.
std::vector<int> hungarian_assignment(const std::vector<std::vector<double>>& cost);

/// Best accuracy over injective cluster→class maps.
double clustering_accuracy(const ClusterAssignment& pred, const LabelVector& truth);

/// I(pred; truth) / sqrt(H(pred) H(truth)); 1 when both partitions are trivial.
double nmi(const ClusterAssignment& pred, const LabelVector& truth);

}  // namespace dsgc
