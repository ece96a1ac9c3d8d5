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
#include <cstdint>
#include <string>
#include <vector>

#include "tempannot/catalog.hpp"
#include "tempannot/time.hpp"

namespace tempannot {

/// A reported event: annotated start d_s and end d_e.
struct EventAnnotation {
    Timestamp start;
    Timestamp end;
    std::string annotator_id;
    std::string event_kind;
};

/// Half-open range of 1-minute slots [start, start + length).
struct SlotWindow {
    Timestamp start;
    std::int64_t length = 0;

    Timestamp end() const { return start + length; }
    bool contains(Timestamp t) const { return t >= start && t < end(); }
};

/// Uniform density for a true boundary time on
/// [center - half_width, center + half_width], with
/// center = annotated + offset.  The offset is kept separate from the
/// annotated minute so that shifted inputs give bit-identical ramps.
struct BoundaryDistribution {
    Timestamp annotated;
    double offset = 0.0;
    double half_width = 0.5;

    /// Distribution for an annotation rounded to `period_minutes`.  The
    /// centre is moved earlier by `bias_fraction * period_minutes`.
    static BoundaryDistribution for_period(Timestamp annotated, int period_minutes,
                                           double bias_fraction = 0.0);

    double lower() const;
    double upper() const;
};

/// P(true start <= t), t in absolute minutes.
double start_probability(const BoundaryDistribution& dist, double t);
/// P(true end > t).
double end_probability(const BoundaryDistribution& dist, double t);

/// Per-minute label values in [0, 1], sampled at slot midpoints.
struct LabelSeries {
    Timestamp window_start;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    SlotWindow window() const { return {window_start, static_cast<std::int64_t>(values.size())}; }
    Timestamp slot_time(std::size_t index) const {
        return window_start + static_cast<std::int64_t>(index);
    }
};

struct SoftLabelOptions {
    /// Assumed systematic reporting delay as a fraction of the inferred
    /// period.  0 centres each boundary distribution on the annotation.
    double bias_fraction = 0.0;
};

/// Soft label value at absolute time t: P(start <= t) * P(end > t).
double soft_label_value(const BoundaryDistribution& start, const BoundaryDistribution& end, double t);

/// Soft label over `window` using the inferred categories for the start and
/// end annotations.  Throws InputError if the window does not contain both
/// ramps or the event is empty.
LabelSeries soft_label(const EventAnnotation& event, const ResolutionCategory& start_category,
                       const ResolutionCategory& end_category, const SlotWindow& window,
                       const SoftLabelOptions& options = {});

/// 1 for slots whose midpoint lies in [start, end), else 0.  Throws
/// InputError if the window does not contain the event.
LabelSeries hard_label(const EventAnnotation& event, const SlotWindow& window);

/// The event padded by `pad_minutes` on both sides.
SlotWindow padded_window(const EventAnnotation& event, std::int64_t pad_minutes);

}  // namespace tempannot
