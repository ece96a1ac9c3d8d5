// Copyright 2026 The tempannot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tempannot/evaluation.hpp"

#include <algorithm>

#include "tempannot/errors.hpp"

namespace tempannot {
namespace {

void check_aligned(const LabelSeries& a, const LabelSeries& b) {
    if (a.window_start != b.window_start || a.size() != b.size()) {
        throw InputError("label series are not on the same grid");
    }
}

Score ratio(double numerator, double denominator) {
    if (denominator <= 0.0) return {0.0, true};
    return {numerator / denominator, false};
}

}  // namespace

SoftConfusionMatrix& SoftConfusionMatrix::operator+=(const SoftConfusionMatrix& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    tn += other.tn;
    return *this;
}

Score precision(const SoftConfusionMatrix& m) { return ratio(m.tp, m.tp + m.fp); }
Score recall(const SoftConfusionMatrix& m) { return ratio(m.tp, m.tp + m.fn); }
Score f1(const SoftConfusionMatrix& m) { return ratio(2.0 * m.tp, 2.0 * m.tp + m.fp + m.fn); }

SoftConfusionMatrix soft_confusion(const LabelSeries& reference, const LabelSeries& prediction) {
    check_aligned(reference, prediction);
    SoftConfusionMatrix m;
    for (std::size_t k = 0; k < reference.size(); ++k) {
        const double r = reference.values[k];
        const double p = prediction.values[k];
        m.tp += r * p;
        m.fn += r * (1.0 - p);
        m.fp += (1.0 - r) * p;
        m.tn += (1.0 - r) * (1.0 - p);
    }
    return m;
}

void EvalWindowSpec::validate() const {
    if (boundary_halfwidth_minutes <= 0) throw ConfigError("boundary window half-width must be positive");
}

std::vector<std::size_t> boundary_slots(const SlotWindow& window, std::span<const Timestamp> boundaries,
                                        int halfwidth_minutes) {
    std::vector<bool> selected(static_cast<std::size_t>(window.length), false);
    for (Timestamp b : boundaries) {
        const std::int64_t lo = std::max<std::int64_t>(0, (b - window.start) - halfwidth_minutes);
        const std::int64_t hi = std::min<std::int64_t>(window.length - 1, (b - window.start) + halfwidth_minutes);
        for (std::int64_t k = lo; k <= hi; ++k) selected[static_cast<std::size_t>(k)] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < selected.size(); ++k) {
        if (selected[k]) out.push_back(k);
    }
    return out;
}

double mse_over(const LabelSeries& a, const LabelSeries& b, std::span<const std::size_t> slots) {
    check_aligned(a, b);
    if (slots.empty()) throw InputError("no slots selected for MSE");
    double total = 0.0;
    for (std::size_t k : slots) {
        if (k >= a.size()) throw InputError("slot index outside the series");
        const double d = a.values[k] - b.values[k];
        total += d * d;
    }
    return total / static_cast<double>(slots.size());
}

double mse(const LabelSeries& a, const LabelSeries& b, const EvalWindowSpec& spec,
           std::span<const Timestamp> boundaries) {
    spec.validate();
    check_aligned(a, b);
    if (spec.mode == WindowMode::kFull) {
        std::vector<std::size_t> all(a.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        return mse_over(a, b, all);
    }
    const auto slots = boundary_slots(a.window(), boundaries, spec.boundary_halfwidth_minutes);
    return mse_over(a, b, slots);
}

}  // namespace tempannot
