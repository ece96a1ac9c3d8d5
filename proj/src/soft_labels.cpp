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

#include "tempannot/soft_labels.hpp"

#include <algorithm>
#include <cmath>

#include "tempannot/errors.hpp"

namespace tempannot {
namespace {

// Ramp of the uniform CDF, with `rel` measured from the annotated minute.
double rising_ramp(double rel, const BoundaryDistribution& dist) {
    const double x = (rel - dist.offset + dist.half_width) / (2.0 * dist.half_width);
    return std::clamp(x, 0.0, 1.0);
}

double slot_offset(Timestamp window_start, std::size_t slot, Timestamp anchor) {
    return static_cast<double>(window_start - anchor + static_cast<std::int64_t>(slot)) + 0.5;
}

void check_event(const EventAnnotation& event) {
    // Zero-length events are allowed: a short event can round to a single
    // reported minute.
    if (event.end < event.start) throw InputError("event ends before it starts");
}

}  // namespace

BoundaryDistribution BoundaryDistribution::for_period(Timestamp annotated, int period_minutes,
                                                      double bias_fraction) {
    if (period_minutes < 1) throw ConfigError("period must be at least one minute");
    return {annotated, -bias_fraction * period_minutes, 0.5 * period_minutes};
}

double BoundaryDistribution::lower() const {
    return static_cast<double>(annotated.minutes) + offset - half_width;
}

double BoundaryDistribution::upper() const {
    return static_cast<double>(annotated.minutes) + offset + half_width;
}

double start_probability(const BoundaryDistribution& dist, double t) {
    return rising_ramp(t - static_cast<double>(dist.annotated.minutes), dist);
}

double end_probability(const BoundaryDistribution& dist, double t) {
    return 1.0 - rising_ramp(t - static_cast<double>(dist.annotated.minutes), dist);
}

double soft_label_value(const BoundaryDistribution& start, const BoundaryDistribution& end, double t) {
    return start_probability(start, t) * end_probability(end, t);
}

LabelSeries soft_label(const EventAnnotation& event, const ResolutionCategory& start_category,
                       const ResolutionCategory& end_category, const SlotWindow& window,
                       const SoftLabelOptions& options) {
    check_event(event);
    const auto start = BoundaryDistribution::for_period(event.start, start_category.period_minutes(),
                                                        options.bias_fraction);
    const auto end = BoundaryDistribution::for_period(event.end, end_category.period_minutes(),
                                                      options.bias_fraction);
    const double first = std::floor(std::min(start.lower(), end.lower()));
    const double last = std::ceil(std::max(start.upper(), end.upper()));
    if (first < static_cast<double>(window.start.minutes) || last > static_cast<double>(window.end().minutes)) {
        throw InputError("evaluation window does not cover the soft label ramps");
    }

    LabelSeries out{window.start, std::vector<double>(static_cast<std::size_t>(window.length))};
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        const double started = rising_ramp(slot_offset(window.start, k, event.start), start);
        const double not_ended = 1.0 - rising_ramp(slot_offset(window.start, k, event.end), end);
        out.values[k] = started * not_ended;
    }
    return out;
}

LabelSeries hard_label(const EventAnnotation& event, const SlotWindow& window) {
    check_event(event);
    if (event.start < window.start || event.end > window.end()) {
        throw InputError("evaluation window does not cover the event");
    }
    LabelSeries out{window.start, std::vector<double>(static_cast<std::size_t>(window.length), 0.0)};
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        const Timestamp slot = out.slot_time(k);
        // slot midpoint in [start, end) <=> slot in [start, end) on a whole-minute grid
        if (slot >= event.start && slot < event.end) out.values[k] = 1.0;
    }
    return out;
}

SlotWindow padded_window(const EventAnnotation& event, std::int64_t pad_minutes) {
    check_event(event);
    if (pad_minutes < 0) throw InputError("window padding must be non-negative");
    return {event.start - pad_minutes, (event.end - event.start) + 2 * pad_minutes};
}

}  // namespace tempannot
