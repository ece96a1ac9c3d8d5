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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tempannot/soft_labels.hpp"
#include "tempannot/time.hpp"

namespace tempannot {

/// Confusion matrix with fractional counts.  Rows are the reference label,
/// columns the prediction.
struct SoftConfusionMatrix {
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    double tn = 0.0;

    double total() const { return tp + fp + fn + tn; }
    SoftConfusionMatrix& operator+=(const SoftConfusionMatrix& other);
};

/// A ratio that may be undefined; `degenerate` is set when the denominator
/// was zero and `value` was forced to 0.
struct Score {
    double value = 0.0;
    bool degenerate = false;
};

Score precision(const SoftConfusionMatrix& m);
Score recall(const SoftConfusionMatrix& m);
Score f1(const SoftConfusionMatrix& m);

/// tp = sum r*p, fn = sum r*(1-p), fp = sum (1-r)*p, tn = sum (1-r)*(1-p).
/// Throws InputError if the series are not on the same grid.
SoftConfusionMatrix soft_confusion(const LabelSeries& reference, const LabelSeries& prediction);

enum class WindowMode { kFull, kBoundary };

struct EvalWindowSpec {
    WindowMode mode = WindowMode::kBoundary;
    int boundary_halfwidth_minutes = 15;

    void validate() const;
};

/// Slots within +-halfwidth of any of the given boundary minutes, as
/// indices into `window`.  Overlapping windows are merged.
std::vector<std::size_t> boundary_slots(const SlotWindow& window, std::span<const Timestamp> boundaries,
                                        int halfwidth_minutes);

/// Mean squared difference over the selected slots.  In boundary mode the
/// slots are the union of +-halfwidth windows around `boundaries`.  Throws
/// InputError for misaligned grids or an empty selection.
double mse(const LabelSeries& a, const LabelSeries& b, const EvalWindowSpec& spec,
           std::span<const Timestamp> boundaries = {});

/// Mean squared difference over explicit slot indices.
double mse_over(const LabelSeries& a, const LabelSeries& b, std::span<const std::size_t> slots);

}  // namespace tempannot
