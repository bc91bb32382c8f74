#pragma once

#include "dsgc/conv/filters.hpp"
#include "dsgc/core/labels.hpp"
#include "dsgc/core/signal.hpp"
#include "dsgc/learn/config.hpp"
#include "dsgc/learn/mlp.hpp"

#include <optional>
#include <vector>

namespace dsgc {

/// Two-layer GCN whose first propagation is G X F: H¹ = act(G X F W1),
/// output softmax(G H¹ W2). No biases.
struct GcnParams {
    DenseMatrix w1;  // m×h
    DenseMatrix w2;  // h×K
};

/// Class probabilities for every object. F = I when absent.
DenseMatrix gcn_forward(const Signal2D& x, const FilterMatrix& g, const std::optional<FilterMatrix>& f,
                        const GcnParams& p, const TrainConfig& cfg);

/// Trains with the shared Adam loop on the train mask of `y`.
GcnParams train_gcn(const Signal2D& x, const FilterMatrix& g, const std::optional<FilterMatrix>& f,
                    const LabelVector& y, const TrainConfig& cfg, std::vector<double>* loss_history = nullptr);

/// Loss and gradient for given first-layer input P = G X F (exposed for checks).
struct GcnGradient {
    double loss = 0.0;
    GcnParams grad;
};
GcnGradient gcn_loss_gradient(const GcnParams& p, const Signal2D& propagated, const FilterMatrix& g,
                              const LabelVector& y, const TrainConfig& cfg, Rng* dropout_rng = nullptr);

}  // namespace dsgc
