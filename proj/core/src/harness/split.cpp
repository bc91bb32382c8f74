#include "dsgc/harness/split.hpp"

#include "dsgc/core/error.hpp"
#include "dsgc/core/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dsgc {

namespace {

// Fisher–Yates with our own index draw so the order does not depend on the
// standard library's distribution implementation.
void shuffle(std::vector<std::size_t>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
        std::swap(v[i - 1], v[std::min(j, i - 1)]);
    }
}

LabelVector finish(const LabelVector& y, std::vector<std::size_t> train, std::vector<std::size_t> valid,
                   std::vector<std::size_t> test) {
    std::sort(train.begin(), train.end());
    std::sort(valid.begin(), valid.end());
    std::sort(test.begin(), test.end());
    return y.with_masks(std::move(train), std::move(valid), std::move(test));
}

}  // namespace

LabelVector sample_label_split(const LabelVector& y, std::size_t labels_per_class, std::size_t valid_size,
                               std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> train, rest;
    const auto members = y.class_members();
    for (std::size_t c = 0; c < members.size(); ++c) {
        auto idx = members[c];
        if (idx.size() < labels_per_class)
            throw ParameterError("split: class " + std::to_string(c) + " has " + std::to_string(idx.size()) +
                                 " members, fewer than " + std::to_string(labels_per_class) + " labels per class");
        shuffle(idx, rng);
        train.insert(train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(labels_per_class));
        rest.insert(rest.end(), idx.begin() + static_cast<std::ptrdiff_t>(labels_per_class), idx.end());
    }
    if (rest.size() < valid_size)
        throw ParameterError("split: only " + std::to_string(rest.size()) + " objects remain for a validation set of " +
                             std::to_string(valid_size));
    std::sort(rest.begin(), rest.end());
    shuffle(rest, rng);
    std::vector<std::size_t> valid(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(valid_size));
    std::vector<std::size_t> test(rest.begin() + static_cast<std::ptrdiff_t>(valid_size), rest.end());
    return finish(y, std::move(train), std::move(valid), std::move(test));
}

LabelVector sample_fraction_split(const LabelVector& y, double train_fraction, double valid_fraction,
                                  std::uint64_t seed) {
    if (!(train_fraction >= 0.0 && valid_fraction >= 0.0 && train_fraction + valid_fraction <= 1.0))
        throw ParameterError("split: fractions must be nonnegative and sum to at most 1");
    Rng rng(seed);
    std::vector<std::size_t> train, valid, test;
    for (auto idx : y.class_members()) {
        if (idx.empty()) continue;
        shuffle(idx, rng);
        const auto nc = static_cast<double>(idx.size());
        const std::size_t nt = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(train_fraction * nc)));
        const std::size_t nv =
            std::min(idx.size() - nt, static_cast<std::size_t>(std::floor(valid_fraction * nc)));
        train.insert(train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(nt));
        valid.insert(valid.end(), idx.begin() + static_cast<std::ptrdiff_t>(nt),
                     idx.begin() + static_cast<std::ptrdiff_t>(nt + nv));
        test.insert(test.end(), idx.begin() + static_cast<std::ptrdiff_t>(nt + nv), idx.end());
    }
    return finish(y, std::move(train), std::move(valid), std::move(test));
}

}  // namespace dsgc
