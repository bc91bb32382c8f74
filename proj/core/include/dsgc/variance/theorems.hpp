#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dsgc {

/// Outcome of a batch of seeded theorem trials. Trial t uses seed + t.
struct TheoremCheck {
    int theorem = 0;
    std::size_t trials = 0;
    std::size_t holds = 0;
    /// Per-trial left and right sides of the checked inequality (lhs ≤ rhs).
    std::vector<double> lhs;
    std::vector<double> rhs;
    /// min over trials of rhs − lhs.
    double worst_slack = 0.0;
    bool passed = false;

    // check_theorem1 only.
    std::vector<double> raw_ratio;
    double inter_drift = 0.0;  // |inter(GX) − inter(X)| / inter(X) at q = 0, noise 0
};

struct Theorem1Options {
    std::size_t n = 400;
    int num_classes = 4;
    double r = 0.2;
    double q = 0.001;
    std::size_t attributes = 16;
    double target_ratio = 1.0;  // noise is calibrated so ratio(X) ≈ this
    /// Fraction of trials that must satisfy ratio(GX) < ratio(X).
    double required_fraction = 0.96;
    double max_inter_drift = 0.1;
};

/// Object filtering by G = D⁻¹A on SBM data lowers the intra/inter ratio.
TheoremCheck check_theorem1(std::size_t trials, std::uint64_t seed, const Theorem1Options& opt = {});

/// intra(XF) ≤ intra(X) + 1e-9 for Sinkhorn-balanced doubly stochastic F
/// (m ≤ 30) on mean-centered labeled data.
TheoremCheck check_theorem2(std::size_t trials, std::uint64_t seed);

/// ‖e_j − ê_j‖ ≤ ε + 1e-9 when F is column-stochastic and supported on
/// ε-close class-mean profiles.
TheoremCheck check_theorem3(std::size_t trials, std::uint64_t seed);

}  // namespace dsgc
