#include "dsgc/learn/metrics.hpp"

#include "dsgc/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dsgc {

double classification_accuracy(std::span<const int> predicted, const LabelVector& truth,
                               std::span<const std::size_t> indices) {
    if (predicted.size() != truth.size()) throw ShapeError("accuracy: prediction and label lengths differ");
    std::size_t hit = 0, total = 0;
    if (indices.empty()) {
        for (std::size_t i = 0; i < truth.size(); ++i) hit += predicted[i] == truth[i];
        total = truth.size();
    } else {
        for (std::size_t i : indices) hit += predicted[i] == truth[i];
        total = indices.size();
    }
    return total == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(total);
}

std::vector<int> hungarian_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t rows = cost.size();
    const std::size_t cols = rows == 0 ? 0 : cost[0].size();
    const std::size_t n = std::max(rows, cols);
    if (n == 0) return {};
    // Square padding with zero cost; potentials-based O(n³) method.
    auto c = [&](std::size_t i, std::size_t j) { return i < rows && j < cols ? cost[i][j] : 0.0; };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> assign(rows, -1);
    for (std::size_t j = 1; j <= n; ++j)
        if (p[j] != 0 && p[j] - 1 < rows && j - 1 < cols) assign[p[j] - 1] = static_cast<int>(j - 1);
    return assign;
}

namespace {

std::vector<std::vector<double>> confusion(const ClusterAssignment& pred, const LabelVector& truth, std::size_t& kp) {
    if (pred.assignments.size() != truth.size()) throw ShapeError("clustering metric: lengths differ");
    kp = static_cast<std::size_t>(pred.num_clusters);
    for (int a : pred.assignments) {
        if (a < 0) throw ShapeError("clustering metric: negative cluster id");
        kp = std::max(kp, static_cast<std::size_t>(a) + 1);
    }
    const auto kt = static_cast<std::size_t>(truth.num_classes());
    std::vector<std::vector<double>> m(kp, std::vector<double>(kt, 0.0));
    for (std::size_t i = 0; i < truth.size(); ++i) m[static_cast<std::size_t>(pred.assignments[i])][static_cast<std::size_t>(truth[i])] += 1.0;
    return m;
}

}  // namespace

double clustering_accuracy(const ClusterAssignment& pred, const LabelVector& truth) {
    std::size_t kp = 0;
    auto m = confusion(pred, truth, kp);
    if (truth.size() == 0) return 0.0;
    std::vector<std::vector<double>> cost = m;
    for (auto& row : cost)
        for (double& v : row) v = -v;
    const auto assign = hungarian_assignment(cost);
    double hit = 0.0;
    for (std::size_t r = 0; r < assign.size(); ++r)
        if (assign[r] >= 0) hit += m[r][static_cast<std::size_t>(assign[r])];
    return hit / static_cast<double>(truth.size());
}

double nmi(const ClusterAssignment& pred, const LabelVector& truth) {
    std::size_t kp = 0;
    auto m = confusion(pred, truth, kp);
    const double n = static_cast<double>(truth.size());
    if (n == 0.0) return 0.0;
    std::vector<double> pr(m.size(), 0.0), pt(m.empty() ? 0 : m[0].size(), 0.0);
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < pt.size(); ++b) {
            pr[a] += m[a][b];
            pt[b] += m[a][b];
        }
    auto entropy = [n](const std::vector<double>& c) {
        double h = 0.0;
        for (double v : c)
            if (v > 0.0) h -= (v / n) * std::log(v / n);
        return h;
    };
    const double hp = entropy(pr);
    const double ht = entropy(pt);
    if (hp == 0.0 && ht == 0.0) return 1.0;
    if (hp == 0.0 || ht == 0.0) return 0.0;
    double mi = 0.0;
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < pt.size(); ++b)
            if (m[a][b] > 0.0) mi += (m[a][b] / n) * std::log(n * m[a][b] / (pr[a] * pt[b]));
    return std::clamp(mi / std::sqrt(hp * ht), 0.0, 1.0);
}

}  // namespace dsgc
