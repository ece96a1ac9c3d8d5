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

#include "tempannot/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "tempannot/errors.hpp"
#include "tempannot/evaluation.hpp"

namespace tempannot {
namespace {

constexpr int kMaxAttemptsPerEvent = 100000;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct Interval {
    int start;
    int end;
};

std::vector<Interval> place_day(const SimConfig& config, int count, std::mt19937_64& rng) {
    std::vector<Interval> placed;
    std::uniform_int_distribution<int> duration_dist(config.min_duration, config.max_duration);
    const int lo = config.day_start_minute + config.margin_minutes;
    for (int j = 0; j < count; ++j) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxAttemptsPerEvent && !ok; ++attempt) {
            const int duration = duration_dist(rng);
            const int hi = config.day_end_minute - config.margin_minutes - duration;
            const int start = std::uniform_int_distribution<int>(lo, hi)(rng);
            const Interval cand{start, start + duration};
            ok = std::all_of(placed.begin(), placed.end(), [&](const Interval& other) {
                return cand.start >= other.end + config.margin_minutes ||
                       cand.end + config.margin_minutes <= other.start;
            });
            if (ok) placed.push_back(cand);
        }
        if (!ok) throw ConfigError("could not place non-overlapping events; enlarge the day window");
    }
    std::sort(placed.begin(), placed.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
    return placed;
}

struct LabelledEvent {
    LabelSeries truth;
    LabelSeries hard;
    LabelSeries soft;
    std::vector<Timestamp> true_boundaries;
};

// Runs inference over every annotated boundary of `records` (one annotator)
// and builds the truth, hard and soft labels on a window padded around the
// true event.
std::vector<LabelledEvent> label_records(const std::vector<SimRecord>& records, const CategoryCatalog& catalog,
                                         const ExperimentConfig& config, double assumed_bias) {
    AnnotationSet evidence;
    evidence.minutes.reserve(records.size() * 2);
    for (const auto& r : records) {
        evidence.minutes.push_back(r.annotated.start.minute_of_hour());
        evidence.minutes.push_back(r.annotated.end.minute_of_hour());
    }
    const auto inferred = infer_annotator(evidence, catalog, config.inference);

    std::vector<LabelledEvent> out;
    out.reserve(records.size());
    const SoftLabelOptions options{assumed_bias};
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const auto window = padded_window(r.truth, config.evaluation_pad_minutes);
        const auto& start_cat = catalog[inferred.map_indices[2 * i]];
        const auto& end_cat = catalog[inferred.map_indices[2 * i + 1]];
        out.push_back({hard_label(r.truth, window), hard_label(r.annotated, window),
                       soft_label(r.annotated, start_cat, end_cat, window, options),
                       {r.truth.start, r.truth.end}});
    }
    return out;
}

}  // namespace

void SimConfig::validate() const {
    if (n_events < 1) throw ConfigError("n_events must be positive");
    if (events_per_day < 1) throw ConfigError("events_per_day must be positive");
    if (min_duration < 1 || max_duration < min_duration) throw ConfigError("invalid duration range");
    if (margin_minutes < 0) throw ConfigError("margin must be non-negative");
    if (day_start_minute < 0 || day_end_minute > kMinutesPerDay || day_end_minute <= day_start_minute) {
        throw ConfigError("invalid day window");
    }
    if (resolution_minutes < 1 || 60 % resolution_minutes != 0) {
        throw ConfigError("resolution must divide 60, got " + std::to_string(resolution_minutes));
    }
    if (!(bias_fraction >= 0.0 && bias_fraction < 1.0)) throw ConfigError("bias fraction must lie in [0, 1)");
    const int needed = events_per_day * (max_duration + margin_minutes) + margin_minutes;
    if (needed > day_end_minute - day_start_minute) {
        throw ConfigError("day window too small for " + std::to_string(events_per_day) + " events per day");
    }
}

std::int64_t round_to_resolution(double minutes, int resolution) {
    return static_cast<std::int64_t>(std::floor(minutes / resolution + 0.5)) * resolution;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

std::vector<SimRecord> generate_events(const SimConfig& config) {
    config.validate();
    const double bias = config.bias_fraction * config.resolution_minutes;
    std::vector<SimRecord> out;
    out.reserve(static_cast<std::size_t>(config.n_events));
    for (int day = 0; static_cast<int>(out.size()) < config.n_events; ++day) {
        std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(day)));
        const int count = std::min(config.events_per_day, config.n_events - static_cast<int>(out.size()));
        const Timestamp midnight = config.first_day + static_cast<std::int64_t>(day) * kMinutesPerDay;
        for (const auto& iv : place_day(config, count, rng)) {
            SimRecord rec;
            rec.truth = {midnight + iv.start, midnight + iv.end, "sim", "event"};
            rec.annotated = rec.truth;
            rec.annotated.start.minutes =
                round_to_resolution(static_cast<double>(rec.truth.start.minutes) + bias, config.resolution_minutes);
            rec.annotated.end.minutes =
                round_to_resolution(static_cast<double>(rec.truth.end.minutes) + bias, config.resolution_minutes);
            rec.resolution_minutes = config.resolution_minutes;
            rec.bias_minutes = bias;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<MseRow> run_mse_experiment(const ExperimentConfig& config, const CategoryCatalog& catalog) {
    std::vector<MseRow> rows;
    for (int resolution : config.resolutions) {
        SimConfig sim = config.sim;
        sim.resolution_minutes = resolution;
        sim.bias_fraction = 0.0;
        const auto labelled = label_records(generate_events(sim), catalog, config, 0.0);
        double hard_total = 0.0;
        double soft_total = 0.0;
        for (const auto& ev : labelled) {
            const auto slots = boundary_slots(ev.truth.window(), ev.true_boundaries, config.boundary_halfwidth_minutes);
            hard_total += mse_over(ev.hard, ev.truth, slots);
            soft_total += mse_over(ev.soft, ev.truth, slots);
        }
        const auto n = static_cast<double>(labelled.size());
        rows.push_back({resolution, hard_total / n, soft_total / n});
    }
    return rows;
}

std::vector<F1Row> run_f1_experiment(const ExperimentConfig& config, const CategoryCatalog& catalog) {
    std::vector<F1Row> rows;
    for (double bias : config.bias_fractions) {
        for (int resolution : config.resolutions) {
            SimConfig sim = config.sim;
            sim.resolution_minutes = resolution;
            sim.bias_fraction = bias;
            SoftConfusionMatrix hard;
            SoftConfusionMatrix soft;
            for (const auto& ev : label_records(generate_events(sim), catalog, config, bias)) {
                hard += soft_confusion(ev.truth, ev.hard);
                soft += soft_confusion(ev.truth, ev.soft);
            }
            rows.push_back({resolution, bias, f1(hard).value, f1(soft).value});
        }
    }
    return rows;
}

std::vector<ErrorRateRow> run_error_rate_experiment(const ErrorRateConfig& config, const CategoryCatalog& catalog,
                                                    std::size_t true_category) {
    if (true_category >= catalog.size()) throw ConfigError("true category outside the catalogue");
    if (config.trials < 1) throw ConfigError("trials must be positive");
    const auto members = catalog[true_category].members();
    std::vector<ErrorRateRow> rows;
    for (int n : config.n_annotations) {
        if (n < 1) throw ConfigError("annotation counts must be positive");
        const std::uint64_t n_seed = derive_seed(derive_seed(config.seed, true_category), static_cast<std::uint64_t>(n));
        std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
        std::vector<int> minutes(static_cast<std::size_t>(n));
        std::size_t wrong = 0;
        for (int trial = 0; trial < config.trials; ++trial) {
            std::mt19937_64 rng(derive_seed(n_seed, static_cast<std::uint64_t>(trial)));
            for (int& m : minutes) m = members[pick(rng)];
            const auto inferred = infer_annotator({"", minutes}, catalog, config.inference);
            wrong += static_cast<std::size_t>(std::count_if(inferred.map_indices.begin(), inferred.map_indices.end(),
                                                            [&](std::size_t c) { return c != true_category; }));
        }
        const double total = static_cast<double>(n) * config.trials;
        rows.push_back({catalog[true_category].period_minutes(), n, static_cast<double>(wrong) / total});
    }
    return rows;
}

std::vector<ErrorRateRow> run_error_rate_experiment(const ErrorRateConfig& config, const CategoryCatalog& catalog) {
    std::vector<ErrorRateRow> rows;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        auto part = run_error_rate_experiment(config, catalog, c);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

}  // namespace tempannot
