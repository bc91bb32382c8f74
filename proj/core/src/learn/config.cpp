#include "dsgc/learn/config.hpp"

#include "dsgc/core/error.hpp"

#include <cmath>
#include <string>

namespace dsgc {

std::string_view to_string(Activation a) noexcept { return a == Activation::relu ? "relu" : "tanh"; }

Activation activation_from_string(std::string_view name) {
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    throw ParameterError("unknown activation '" + std::string(name) + "' (expected relu or tanh)");
}

void TrainConfig::validate() const {
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw ParameterError("learning_rate must be a finite value >= 0");
    if (!(dropout >= 0.0 && dropout < 1.0)) throw ParameterError("dropout must lie in [0, 1)");
    if (!(weight_decay >= 0.0)) throw ParameterError("weight_decay must be >= 0");
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
        throw ParameterError("Adam betas must lie in [0, 1)");
    if (!(adam_eps > 0.0)) throw ParameterError("adam_eps must be positive");
    if (hidden == 0) throw ParameterError("hidden width must be positive");
}

Adam::Adam(const TrainConfig& cfg)
    : lr_(cfg.learning_rate), b1_(cfg.adam_beta1), b2_(cfg.adam_beta2), eps_(cfg.adam_eps) {}

void Adam::step(const std::vector<std::span<double>>& params, const std::vector<std::span<const double>>& grads) {
    if (params.size() != grads.size()) throw ShapeError("Adam: parameter and gradient block counts differ");
    if (m_.empty()) {
        for (const auto& p : params) {
            m_.emplace_back(p.size(), 0.0);
            v_.emplace_back(p.size(), 0.0);
        }
    }
    if (m_.size() != params.size()) throw ShapeError("Adam: parameter blocks changed between steps");
    ++t_;
    const double c1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
    for (std::size_t b = 0; b < params.size(); ++b) {
        auto p = params[b];
        auto g = grads[b];
        auto& m = m_[b];
        auto& v = v_[b];
        if (p.size() != m.size() || g.size() != m.size()) throw ShapeError("Adam: block size changed between steps");
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = b1_ * m[i] + (1.0 - b1_) * g[i];
            v[i] = b2_ * v[i] + (1.0 - b2_) * g[i] * g[i];
            p[i] -= lr_ * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps_);
        }
    }
}

}  // namespace dsgc
