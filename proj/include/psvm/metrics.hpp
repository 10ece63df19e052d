#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace psvm {

/// Binary confusion counts. The positive class is +1 throughout.
struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }
};

/// Tally predictions against ground truth. Both vectors must have equal
/// length and contain only bipolar labels (-1 / +1).
ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> actual);

/// (tp + tn) / total. Throws on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

struct Rates {
    std::optional<double> sensitivity; // tp / (tp + fn); nullopt when tp + fn == 0
    std::optional<double> specificity; // tn / (tn + fp); nullopt when tn + fp == 0
};

Rates rates(const ConfusionMatrix& cm);

} // namespace psvm
