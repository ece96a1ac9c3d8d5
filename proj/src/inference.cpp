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

#include "tempannot/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tempannot/errors.hpp"

namespace tempannot {
namespace {

std::vector<double> resolve_prior(const std::vector<double>& prior, std::size_t n) {
    if (prior.empty()) return std::vector<double>(n, 1.0 / static_cast<double>(n));
    if (prior.size() != n) {
        throw ConfigError("habit prior has " + std::to_string(prior.size()) + " entries, catalogue has " +
                          std::to_string(n));
    }
    double total = 0.0;
    for (double p : prior) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("habit prior entries must be finite and >= 0");
        total += p;
    }
    if (total <= 0.0) throw ConfigError("habit prior has no mass");
    std::vector<double> out(prior);
    for (double& p : out) p /= total;
    return out;
}

void check_minutes(std::span<const int> minutes) {
    if (minutes.empty()) throw InputError("annotation set is empty");
    for (int m : minutes) {
        if (m < 0 || m > 59) throw InputError("minute of hour out of range: " + std::to_string(m));
    }
}

// P(d | H = habit) = sum_c P(d | c) P(c | habit)
double marginal_given_habit(const CategoryCatalog& catalog, const SwitchModel& model, int minute,
                            std::size_t habit) {
    double total = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        total += likelihood(catalog[c], minute) * switch_prob(model, c, habit, catalog.size());
    }
    return total;
}

}  // namespace

void SwitchModel::validate(std::size_t n_categories) const {
    if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
    if (n_categories == 0) throw ConfigError("catalogue is empty");
    if (n_categories == 1 && delta > 0.0) {
        throw ConfigError("delta > 0 needs at least two categories to switch between");
    }
}

std::size_t HabitPosterior::argmax() const { return map_index(probs); }

double likelihood(const ResolutionCategory& cat, int minute) {
    return cat.contains(minute) ? 1.0 / static_cast<double>(cat.size()) : 0.0;
}

double switch_prob(const SwitchModel& model, std::size_t used, std::size_t habit, std::size_t n_categories) {
    model.validate(n_categories);
    if (used == habit) return 1.0 - model.delta;
    return model.delta / static_cast<double>(n_categories - 1);
}

HabitPosterior habit_posterior(std::span<const int> minutes, const CategoryCatalog& catalog,
                               const InferenceOptions& options) {
    check_minutes(minutes);
    const std::size_t n = catalog.size();
    options.model.validate(n);
    const auto prior = resolve_prior(options.prior, n);

    // Per-minute table of log P(d | h); the evidence only depends on the
    // minute, so repeated minutes share a row.
    std::vector<std::vector<double>> log_marginal(60);
    std::vector<double> log_score(n);
    for (std::size_t h = 0; h < n; ++h) {
        log_score[h] = prior[h] > 0.0 ? std::log(prior[h]) : -std::numeric_limits<double>::infinity();
    }
    for (int m : minutes) {
        auto& row = log_marginal[static_cast<std::size_t>(m)];
        if (row.empty()) {
            row.resize(n);
            for (std::size_t h = 0; h < n; ++h) row[h] = std::log(marginal_given_habit(catalog, options.model, m, h));
        }
        for (std::size_t h = 0; h < n; ++h) log_score[h] += row[h];
    }

    const double top = *std::max_element(log_score.begin(), log_score.end());
    if (!std::isfinite(top)) throw NumericError("every habit has zero posterior mass");

    HabitPosterior out;
    out.probs.resize(n);
    double total = 0.0;
    for (std::size_t h = 0; h < n; ++h) {
        out.probs[h] = std::exp(log_score[h] - top);
        total += out.probs[h];
    }
    for (double& p : out.probs) p /= total;
    return out;
}

CategoryPosterior category_posterior(std::span<const int> minutes, const CategoryCatalog& catalog,
                                     const HabitPosterior& habit, const SwitchModel& model) {
    check_minutes(minutes);
    const std::size_t n = catalog.size();
    model.validate(n);
    if (habit.probs.size() != n) throw InputError("habit posterior does not match the catalogue");

    CategoryPosterior out;
    out.rows.reserve(minutes.size());
    std::vector<std::vector<double>> cache(60);
    for (int m : minutes) {
        auto& row = cache[static_cast<std::size_t>(m)];
        if (row.empty()) {
            row.assign(n, 0.0);
            for (std::size_t h = 0; h < n; ++h) {
                if (habit.probs[h] == 0.0) continue;
                const double evidence = marginal_given_habit(catalog, model, m, h);
                if (evidence == 0.0) continue;
                for (std::size_t c = 0; c < n; ++c) {
                    row[c] += likelihood(catalog[c], m) * switch_prob(model, c, h, n) / evidence * habit.probs[h];
                }
            }
        }
        out.rows.push_back(row);
    }
    return out;
}

CategoryPosterior category_posterior(std::span<const int> minutes, const CategoryCatalog& catalog,
                                     const InferenceOptions& options) {
    return category_posterior(minutes, catalog, habit_posterior(minutes, catalog, options), options.model);
}

std::size_t map_index(std::span<const double> row) {
    if (row.empty()) throw InputError("empty posterior row");
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i) {
        if (row[i] > row[best]) best = i;
    }
    return best;
}

const ResolutionCategory& map_category(std::span<const double> row, const CategoryCatalog& catalog) {
    if (row.size() != catalog.size()) throw InputError("posterior row does not match the catalogue");
    return catalog[map_index(row)];
}

AnnotatorInference infer_annotator(const AnnotationSet& annotations, const CategoryCatalog& catalog,
                                   const InferenceOptions& options) {
    AnnotatorInference out;
    out.annotator_id = annotations.annotator_id;
    out.habit = habit_posterior(annotations.minutes, catalog, options);
    out.categories = category_posterior(annotations.minutes, catalog, out.habit, options.model);
    out.map_indices.reserve(out.categories.rows.size());
    for (const auto& row : out.categories.rows) out.map_indices.push_back(map_index(row));
    return out;
}

}  // namespace tempannot
