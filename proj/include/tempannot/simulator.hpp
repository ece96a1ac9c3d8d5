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

#include <cstdint>
#include <vector>

#include "tempannot/catalog.hpp"
#include "tempannot/inference.hpp"
#include "tempannot/soft_labels.hpp"

namespace tempannot {

/// Synthetic event generation.  True times are whole minutes; starts are
/// uniform inside each day's active window and durations uniform in
/// [min_duration, max_duration].  Events are spread over consecutive days,
/// `events_per_day` per day, and kept `margin_minutes` apart from each other
/// and from the edges of the active window.
struct SimConfig {
    std::uint64_t seed = 42;
    int n_events = 500;
    int events_per_day = 4;
    int day_start_minute = 6 * 60;
    int day_end_minute = 22 * 60;
    int min_duration = 20;
    int max_duration = 90;
    int margin_minutes = 60;
    int resolution_minutes = 30;
    /// Reporting delay as a fraction of the resolution, in [0, 1).
    double bias_fraction = 0.0;
    Timestamp first_day = make_timestamp(2024, 1, 1, 0, 0);

    void validate() const;
};

struct SimRecord {
    EventAnnotation truth;
    EventAnnotation annotated;
    int resolution_minutes = 1;
    double bias_minutes = 0.0;
};

/// Nearest multiple of `resolution` to `minutes`; exact midpoints round up.
std::int64_t round_to_resolution(double minutes, int resolution);

/// Generates the true events for `config.seed` and annotates them with the
/// configured resolution and bias.  The true events depend only on the seed
/// and the day layout, so sweeps over resolution share the same truth.
/// Throws ConfigError when the events cannot fit.
std::vector<SimRecord> generate_events(const SimConfig& config);

/// 64-bit seed for an independent stream, derived from a base seed and a
/// stream index (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

struct ExperimentConfig {
    SimConfig sim{};
    std::vector<int> resolutions{1, 5, 10, 15, 30};
    std::vector<double> bias_fractions{0.0, 0.5};
    int boundary_halfwidth_minutes = 15;
    /// Slots evaluated around each true event for the F1 experiment.
    int evaluation_pad_minutes = 60;
    InferenceOptions inference{};
};

struct MseRow {
    int resolution_minutes = 0;
    double mse_hard = 0.0;
    double mse_soft = 0.0;
};

struct F1Row {
    int resolution_minutes = 0;
    double bias_fraction = 0.0;
    double f1_hard = 0.0;
    double f1_soft = 0.0;
};

/// Boundary-window MSE of hard and soft labels against the true label, per
/// resolution.  Computed per event over the union of the +-halfwidth
/// windows around the true start and end, then averaged over events.
std::vector<MseRow> run_mse_experiment(const ExperimentConfig& config, const CategoryCatalog& catalog);

/// F1 of hard and soft labels against the true label, per resolution and
/// bias.  Confusion counts are summed over all events before scoring.  Soft
/// labels assume the configured bias when placing the boundary distributions.
std::vector<F1Row> run_f1_experiment(const ExperimentConfig& config, const CategoryCatalog& catalog);

struct ErrorRateConfig {
    std::uint64_t seed = 42;
    int trials = 1000;
    std::vector<int> n_annotations{1, 2, 3, 5, 10, 20, 50, 100};
    InferenceOptions inference{};
};

struct ErrorRateRow {
    int true_period_minutes = 0;
    int n_annotations = 0;
    double error_rate = 0.0;
};

/// Draws N minutes uniformly from the true category's members, infers the
/// MAP category of every annotation and reports the misclassified fraction,
/// averaged over trials.  Each (category, N, trial) has its own seed.
std::vector<ErrorRateRow> run_error_rate_experiment(const ErrorRateConfig& config,
                                                    const CategoryCatalog& catalog,
                                                    std::size_t true_category);

std::vector<ErrorRateRow> run_error_rate_experiment(const ErrorRateConfig& config,
                                                    const CategoryCatalog& catalog);

}  // namespace tempannot
