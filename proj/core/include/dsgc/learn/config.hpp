#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dsgc {

enum class Activation { relu, tanh };

std::string_view to_string(Activation a) noexcept;
Activation activation_from_string(std::string_view name);

/// Full-batch training hyperparameters shared by the MLP and GCN trainers.
struct TrainConfig {
    double learning_rate = 0.1;
    std::size_t epochs = 200;
    double dropout = 0.2;
    double weight_decay = 5e-4;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::size_t hidden = 64;
    Activation activation = Activation::relu;
    std::uint64_t seed = 0;

    /// Throws ParameterError.
    void validate() const;
};

/// Adam over a fixed list of parameter blocks. Moment buffers are created on
/// the first step and must keep the same block sizes afterwards.
class Adam {
public:
    explicit Adam(const TrainConfig& cfg);

    void step(const std::vector<std::span<double>>& params, const std::vector<std::span<const double>>& grads);

    std::size_t steps() const noexcept { return t_; }

private:
    double lr_, b1_, b2_, eps_;
    std::size_t t_ = 0;
    std::vector<std::vector<double>> m_, v_;
};

}  // namespace dsgc
