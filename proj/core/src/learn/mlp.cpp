#include "dsgc/learn/mlp.hpp"

#include "dense_ops.hpp"
#include "dsgc/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace dsgc {

namespace detail {

void glorot_uniform(DenseMatrix& w, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    for (double& v : w.values()) v = (2.0 * uniform01(rng) - 1.0) * limit;
}

Signal2D gather_rows(const Signal2D& x, std::span<const std::size_t> rows) {
    if (!x.is_sparse()) {
        const auto& d = x.dense();
        DenseMatrix out(rows.size(), d.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) std::copy(d.row(rows[r]).begin(), d.row(rows[r]).end(), out.row(r).begin());
        return out;
    }
    const auto& s = x.sparse();
    std::vector<std::size_t> offsets{0};
    std::vector<Index> cols;
    std::vector<double> vals;
    for (std::size_t r : rows) {
        auto c = s.row_cols(r);
        auto v = s.row_values(r);
        cols.insert(cols.end(), c.begin(), c.end());
        vals.insert(vals.end(), v.begin(), v.end());
        offsets.push_back(vals.size());
    }
    return SparseMatrix(rows.size(), s.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

}  // namespace detail

DenseMatrix softmax_rows(const DenseMatrix& logits) {
    DenseMatrix p(logits.rows(), logits.cols());
    for (std::size_t i = 0; i < logits.rows(); ++i) {
        auto in = logits.row(i);
        auto out = p.row(i);
        const double mx = *std::max_element(in.begin(), in.end());
        double s = 0.0;
        for (std::size_t j = 0; j < in.size(); ++j) s += out[j] = std::exp(in[j] - mx);
        for (double& v : out) v /= s;
    }
    return p;
}

Prediction argmax_rows(DenseMatrix probabilities) {
    Prediction out;
    out.labels.resize(probabilities.rows());
    for (std::size_t i = 0; i < probabilities.rows(); ++i) {
        auto r = probabilities.row(i);
        out.labels[i] = static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin());
    }
    out.probabilities = std::move(probabilities);
    return out;
}

MlpParams init_mlp(std::size_t inputs, std::size_t hidden, std::size_t classes, Rng& rng) {
    MlpParams p{DenseMatrix(inputs, hidden), std::vector<double>(hidden, 0.0), DenseMatrix(hidden, classes),
                std::vector<double>(classes, 0.0)};
    detail::glorot_uniform(p.w1, rng);
    detail::glorot_uniform(p.w2, rng);
    return p;
}

namespace {

void add_bias(DenseMatrix& m, std::span<const double> b) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += b[j];
    }
}

void check_params(const MlpParams& p, std::size_t inputs) {
    if (p.w1.rows() != inputs) detail::throw_shape("mlp", inputs, inputs, p.w1.rows(), p.w1.cols());
    if (p.b1.size() != p.w1.cols() || p.w2.rows() != p.w1.cols() || p.b2.size() != p.w2.cols())
        throw ShapeError("mlp: inconsistent parameter shapes");
}

}  // namespace

MlpGradient mlp_loss_gradient(const MlpParams& p, const Signal2D& x, std::span<const int> targets,
                              const TrainConfig& cfg, Rng* dropout_rng) {
    check_params(p, x.n_attributes());
    if (targets.size() != x.n_objects()) throw ShapeError("mlp: one target per row is required");
    if (targets.empty()) throw TrainingError("mlp: no training rows");
    const std::size_t n = x.n_objects();
    const std::size_t k = p.w2.cols();

    DenseMatrix pre = detail::times(x, p.w1);
    add_bias(pre, p.b1);
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
    DenseMatrix logits = matmul(h, p.w2);
    add_bias(logits, p.b2);
    DenseMatrix prob = softmax_rows(logits);

    MlpGradient out;
    double ce = 0.0;
    DenseMatrix dlogits = prob;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto t = static_cast<std::size_t>(targets[i]);
        if (t >= k) throw ShapeError("mlp: target label outside the output layer");
        // log-softmax computed from logits keeps the loss finite for saturated rows.
        auto lr = logits.row(i);
        const double mx = *std::max_element(lr.begin(), lr.end());
        double s = 0.0;
        for (double v : lr) s += std::exp(v - mx);
        ce -= lr[t] - mx - std::log(s);
        dlogits(i, t) -= 1.0;
    }
    for (double& v : dlogits.values()) v *= inv_n;
    out.loss = ce * inv_n + 0.5 * cfg.weight_decay * (detail::squared_norm(p.w1) + detail::squared_norm(p.w2));

    out.grad.w2 = detail::transpose_times(h, dlogits);
    out.grad.b2.assign(k, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) out.grad.b2[j] += dlogits(i, j);
    DenseMatrix dh = detail::times_transpose(dlogits, p.w2);
    if (drop) dh = hadamard(dh, mask);
    // h was masked above; the derivative needs the unmasked activation.
    for (std::size_t i = 0; i < dh.size(); ++i) {
        const double pre_v = pre.values()[i];
        dh.values()[i] *= detail::activate_grad(cfg.activation, pre_v, detail::activate(cfg.activation, pre_v));
    }
    out.grad.w1 = x.is_sparse() ? spmm(x.sparse().transposed(), dh) : detail::transpose_times(x.dense(), dh);
    out.grad.b1.assign(dh.cols(), 0.0);
    for (std::size_t i = 0; i < dh.rows(); ++i)
        for (std::size_t j = 0; j < dh.cols(); ++j) out.grad.b1[j] += dh(i, j);
    if (cfg.weight_decay != 0.0) {
        for (std::size_t i = 0; i < p.w1.size(); ++i) out.grad.w1.values()[i] += cfg.weight_decay * p.w1.values()[i];
        for (std::size_t i = 0; i < p.w2.size(); ++i) out.grad.w2.values()[i] += cfg.weight_decay * p.w2.values()[i];
    }
    return out;
}

MlpParams train_mlp(const Signal2D& z, const LabelVector& y, const TrainConfig& cfg, std::vector<double>* loss_history) {
    cfg.validate();
    if (z.n_objects() != y.size()) detail::throw_shape("train_mlp", z.n_objects(), z.n_attributes(), y.size(), 1);
    if (y.train().empty()) throw TrainingError("train_mlp: the train mask is empty");
    const Signal2D xs = detail::gather_rows(z, y.train());
    std::vector<int> targets;
    targets.reserve(y.train().size());
    for (std::size_t i : y.train()) targets.push_back(y[i]);

    Rng rng(cfg.seed);
    MlpParams p = init_mlp(z.n_attributes(), cfg.hidden, static_cast<std::size_t>(y.num_classes()), rng);
    Adam opt(cfg);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        MlpGradient g = mlp_loss_gradient(p, xs, targets, cfg, &rng);
        if (loss_history) loss_history->push_back(g.loss);
        opt.step({p.w1.values(), p.b1, p.w2.values(), p.b2},
                 {g.grad.w1.values(), g.grad.b1, g.grad.w2.values(), g.grad.b2});
    }
    return p;
}

Prediction predict_mlp(const MlpParams& p, const Signal2D& z, Activation act) {
    check_params(p, z.n_attributes());
    DenseMatrix h = detail::times(z, p.w1);
    add_bias(h, p.b1);
    for (double& v : h.values()) v = detail::activate(act, v);
    DenseMatrix logits = matmul(h, p.w2);
    add_bias(logits, p.b2);
    return argmax_rows(softmax_rows(logits));
}

}  // namespace dsgc
