#pragma once

#include "dsgc/harness/dataset.hpp"

#include <cstdint>

namespace dsgc {

/// Two-view benchmark: an SBM object graph plus class-indicative attribute
/// blocks linked by a block-structured attribute graph.
///
/// Class k raises the mean of attribute block k by `signal`; `noise_attributes`
/// carry no class information. Every entry gets N(0, noise²). The attribute
/// graph links attributes of the same block with probability r_attr and other
/// pairs with probability q_attr.
struct SyntheticParams {
    std::size_t n = 400;
    int num_classes = 4;
    std::size_t block_size = 30;
    std::size_t noise_attributes = 40;
    double signal = 1.0;
    double noise = 3.0;
    double r = 0.02;
    double q = 0.002;
    double r_attr = 0.3;
    double q_attr = 0.01;
    std::uint64_t seed = 0;
};

DatasetBundle make_synthetic_benchmark(const SyntheticParams& p);

/// Well-separated Gaussian blobs (no graph edges) for clustering checks.
DatasetBundle make_blobs(std::size_t n, int num_classes, std::size_t dims, double separation, std::uint64_t seed);

}  // namespace dsgc
