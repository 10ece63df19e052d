#include "psvm/metrics.hpp"

#include <stdexcept>

#include <fmt/core.h>

namespace psvm {

ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> actual) {
    if (predicted.size() != actual.size()) {
        throw std::invalid_argument(
            fmt::format("confusion: length mismatch ({} predicted vs {} actual)",
                        predicted.size(), actual.size()));
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const int p = predicted[i];
        const int a = actual[i];
        if ((p != -1 && p != 1) || (a != -1 && a != 1)) {
            throw std::invalid_argument(
                fmt::format("confusion: non-bipolar label at index {}", i));
        }
        if (a == 1) {
            (p == 1 ? cm.tp : cm.fn) += 1;
        } else {
            (p == -1 ? cm.tn : cm.fp) += 1;
        }
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    const auto total = cm.total();
    if (total <= 0) {
        throw std::invalid_argument("accuracy: empty confusion matrix");
    }
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
}

Rates rates(const ConfusionMatrix& cm) {
    Rates r;
    if (cm.tp + cm.fn > 0) {
        r.sensitivity = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    }
    if (cm.tn + cm.fp > 0) {
        r.specificity = static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp);
    }
    return r;
}

} // namespace psvm
