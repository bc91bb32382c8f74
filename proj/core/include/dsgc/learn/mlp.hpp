#pragma once

#include "dsgc/core/dense_matrix.hpp"
#include "dsgc/core/labels.hpp"
#include "dsgc/core/random.hpp"
#include "dsgc/core/signal.hpp"
#include "dsgc/learn/config.hpp"

#include <span>
#include <vector>

namespace dsgc {

/// One-hidden-layer perceptron: softmax(act(z W1 + b1) W2 + b2).
struct MlpParams {
    DenseMatrix w1;  // m×h
    std::vector<double> b1;
    DenseMatrix w2;  // h×K
    std::vector<double> b2;
};

struct Prediction {
    std::vector<int> labels;
    DenseMatrix probabilities;  // n×K, rows sum to 1
};

/// Glorot-uniform weights, zero biases.
MlpParams init_mlp(std::size_t inputs, std::size_t hidden, std::size_t classes, Rng& rng);

struct MlpGradient {
    double loss = 0.0;
    MlpParams grad;
};

/// Mean cross-entropy of rows of `x` against `targets` plus (wd/2)(‖W1‖² + ‖W2‖²),
/// and its gradient. Dropout is applied when cfg.dropout > 0 and `dropout_rng` is given.
MlpGradient mlp_loss_gradient(const MlpParams& p, const Signal2D& x, std::span<const int> targets,
                              const TrainConfig& cfg, Rng* dropout_rng = nullptr);

/// Trains on the train mask of `y` for cfg.epochs Adam steps and returns the
/// final parameters. Throws TrainingError when the train mask is empty.
MlpParams train_mlp(const Signal2D& z, const LabelVector& y, const TrainConfig& cfg,
                    std::vector<double>* loss_history = nullptr);

Prediction predict_mlp(const MlpParams& p, const Signal2D& z, Activation act = Activation::relu);

/// Row-wise softmax, shifted by the row maximum.
DenseMatrix softmax_rows(const DenseMatrix& logits);
Prediction argmax_rows(DenseMatrix probabilities);

}  // namespace dsgc
