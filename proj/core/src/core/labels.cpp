#include "dsgc/core/labels.hpp"

#include "dsgc/core/error.hpp"

#include <string>

namespace dsgc {

LabelVector::LabelVector(std::vector<int> labels, int num_classes, std::vector<std::size_t> train,
                         std::vector<std::size_t> valid, std::vector<std::size_t> test)
    : labels_(std::move(labels)),
      num_classes_(num_classes),
      train_(std::move(train)),
      valid_(std::move(valid)),
      test_(std::move(test)) {
    if (num_classes_ <= 0) throw ParameterError("LabelVector: class count must be positive");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] < 0 || labels_[i] >= num_classes_)
            throw DataError("LabelVector: label " + std::to_string(labels_[i]) + " at node " + std::to_string(i) +
                            " outside [0, " + std::to_string(num_classes_) + ")");
    }
    std::vector<char> seen(labels_.size(), 0);
    for (const auto* mask : {&train_, &valid_, &test_}) {
        for (std::size_t idx : *mask) {
            if (idx >= labels_.size()) throw DataError("LabelVector: mask index out of range");
            if (seen[idx]) throw DataError("LabelVector: masks overlap at node " + std::to_string(idx));
            seen[idx] = 1;
        }
    }
}

LabelVector LabelVector::with_masks(std::vector<std::size_t> train, std::vector<std::size_t> valid,
                                    std::vector<std::size_t> test) const {
    return LabelVector(labels_, num_classes_, std::move(train), std::move(valid), std::move(test));
}

std::vector<std::vector<std::size_t>> LabelVector::class_members() const {
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(num_classes_));
    for (std::size_t i = 0; i < labels_.size(); ++i) members[static_cast<std::size_t>(labels_[i])].push_back(i);
    return members;
}

}  // namespace dsgc
