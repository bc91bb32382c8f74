#pragma once

#include "dsgc/core/labels.hpp"

#include <cstdint>

namespace dsgc {

/// `labels_per_class` training objects drawn uniformly per class, then
/// `valid_size` validation objects from the remainder; the rest is test.
/// Throws ParameterError when a class or the remainder is too small.
LabelVector sample_label_split(const LabelVector& y, std::size_t labels_per_class, std::size_t valid_size,
                               std::uint64_t seed);

/// Per-class fractional split: floor(train_fraction·n_c) train objects but at
/// least one, floor(valid_fraction·n_c) validation objects, the rest test.
LabelVector sample_fraction_split(const LabelVector& y, double train_fraction, double valid_fraction,
                                  std::uint64_t seed);

}  // namespace dsgc
