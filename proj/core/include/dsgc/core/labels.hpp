#pragma once

#include <cstddef>
#include <vector>

namespace dsgc {

/// Class labels in [0, K) plus disjoint train/valid/test index masks.
class LabelVector {
public:
    LabelVector() = default;
    LabelVector(std::vector<int> labels, int num_classes, std::vector<std::size_t> train = {},
                std::vector<std::size_t> valid = {}, std::vector<std::size_t> test = {});

    const std::vector<int>& labels() const noexcept { return labels_; }
    int num_classes() const noexcept { return num_classes_; }
    std::size_t size() const noexcept { return labels_.size(); }
    int operator[](std::size_t i) const noexcept { return labels_[i]; }

    const std::vector<std::size_t>& train() const noexcept { return train_; }
    const std::vector<std::size_t>& valid() const noexcept { return valid_; }
    const std::vector<std::size_t>& test() const noexcept { return test_; }

    /// Same labels, new masks (validated).
    LabelVector with_masks(std::vector<std::size_t> train, std::vector<std::size_t> valid,
                           std::vector<std::size_t> test) const;

    /// Members of each class, in index order.
    std::vector<std::vector<std::size_t>> class_members() const;

private:
    std::vector<int> labels_;
    int num_classes_ = 0;
    std::vector<std::size_t> train_;
    std::vector<std::size_t> valid_;
    std::vector<std::size_t> test_;
};

}  // namespace dsgc
