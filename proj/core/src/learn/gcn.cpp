#include "dsgc/learn/gcn.hpp"

#include "dense_ops.hpp"
#include "dsgc/conv/convolution.hpp"
#include "dsgc/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace dsgc {

namespace {

Signal2D propagate(const Signal2D& x, const FilterMatrix& g, const std::optional<FilterMatrix>& f) {
    return f ? dsgc(x, g, *f) : apply_object_filter(x, g);
}

void check(const GcnParams& p, const Signal2D& propagated, const FilterMatrix& g) {
    if (g.side() != FilterSide::object) throw ShapeError("gcn: G must be an object-side filter");
    if (g.size() != propagated.n_objects())
        detail::throw_shape("gcn", g.size(), g.size(), propagated.n_objects(), propagated.n_attributes());
    if (p.w1.rows() != propagated.n_attributes() || p.w2.rows() != p.w1.cols())
        throw ShapeError("gcn: parameter shapes do not match the input");
}

}  // namespace

GcnGradient gcn_loss_gradient(const GcnParams& p, const Signal2D& propagated, const FilterMatrix& g,
                              const LabelVector& y, const TrainConfig& cfg, Rng* dropout_rng) {
    check(p, propagated, g);
    if (y.size() != propagated.n_objects()) throw ShapeError("gcn: labels and signal differ in length");
    if (y.train().empty()) throw TrainingError("gcn: the train mask is empty");
    const auto& gm = g.matrix();

    const DenseMatrix pre = detail::times(propagated, p.w1);
    DenseMatrix h(pre.rows(), pre.cols());
    for (std::size_t i = 0; i < pre.size(); ++i) h.values()[i] = detail::activate(cfg.activation, pre.values()[i]);
    DenseMatrix mask;
    const bool drop = cfg.dropout > 0.0 && dropout_rng != nullptr;
    if (drop) {
        mask = DenseMatrix(h.rows(), h.cols());
        const double keep = 1.0 - cfg.dropout;
        for (double& v : mask.values()) v = uniform01(*dropout_rng) < keep ? 1.0 / keep : 0.0;
        h = hadamard(h, mask);
    }
    const DenseMatrix gh = spmm(gm, h);
    const DenseMatrix logits = matmul(gh, p.w2);

    const std::size_t k = p.w2.cols();
    const double inv_n = 1.0 / static_cast<double>(y.train().size());
    DenseMatrix dlogits(logits.rows(), k);
    double ce = 0.0;
    for (std::size_t i : y.train()) {
        auto lr = logits.row(i);
        const double mx = *std::max_element(lr.begin(), lr.end());
        double s = 0.0;
        for (double v : lr) s += std::exp(v - mx);
        const auto t = static_cast<std::size_t>(y[i]);
        ce -= lr[t] - mx - std::log(s);
        auto d = dlogits.row(i);
        for (std::size_t j = 0; j < k; ++j) d[j] = std::exp(lr[j] - mx) / s * inv_n;
        d[t] -= inv_n;
    }
    GcnGradient out;
    out.loss = ce * inv_n + 0.5 * cfg.weight_decay * (detail::squared_norm(p.w1) + detail::squared_norm(p.w2));
    out.grad.w2 = detail::transpose_times(gh, dlogits);
    DenseMatrix dh = spmm(gm.transposed(), detail::times_transpose(dlogits, p.w2));
    if (drop) dh = hadamard(dh, mask);
    for (std::size_t i = 0; i < dh.size(); ++i) {
        const double pre_v = pre.values()[i];
        dh.values()[i] *= detail::activate_grad(cfg.activation, pre_v, detail::activate(cfg.activation, pre_v));
    }
    out.grad.w1 = propagated.is_sparse() ? spmm(propagated.sparse().transposed(), dh)
                                         : detail::transpose_times(propagated.dense(), dh);
    if (cfg.weight_decay != 0.0) {
        for (std::size_t i = 0; i < p.w1.size(); ++i) out.grad.w1.values()[i] += cfg.weight_decay * p.w1.values()[i];
        for (std::size_t i = 0; i < p.w2.size(); ++i) out.grad.w2.values()[i] += cfg.weight_decay * p.w2.values()[i];
    }
    return out;
}

DenseMatrix gcn_forward(const Signal2D& x, const FilterMatrix& g, const std::optional<FilterMatrix>& f,
                        const GcnParams& p, const TrainConfig& cfg) {
    const Signal2D prop = propagate(x, g, f);
    check(p, prop, g);
    DenseMatrix h = detail::times(prop, p.w1);
    for (double& v : h.values()) v = detail::activate(cfg.activation, v);
    return softmax_rows(matmul(spmm(g.matrix(), h), p.w2));
}

GcnParams train_gcn(const Signal2D& x, const FilterMatrix& g, const std::optional<FilterMatrix>& f,
                    const LabelVector& y, const TrainConfig& cfg, std::vector<double>* loss_history) {
    cfg.validate();
    if (y.train().empty()) throw TrainingError("train_gcn: the train mask is empty");
    const Signal2D prop = propagate(x, g, f);
    Rng rng(cfg.seed);
    GcnParams p{DenseMatrix(prop.n_attributes(), cfg.hidden),
                DenseMatrix(cfg.hidden, static_cast<std::size_t>(y.num_classes()))};
    detail::glorot_uniform(p.w1, rng);
    detail::glorot_uniform(p.w2, rng);
    Adam opt(cfg);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        GcnGradient gr = gcn_loss_gradient(p, prop, g, y, cfg, &rng);
        if (loss_history) loss_history->push_back(gr.loss);
        opt.step({p.w1.values(), p.w2.values()}, {gr.grad.w1.values(), gr.grad.w2.values()});
    }
    return p;
}

}  // namespace dsgc
