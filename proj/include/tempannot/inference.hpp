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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempannot/catalog.hpp"

namespace tempannot {

/// The evidence for one annotator: the minute-of-hour of every reported
/// timestamp.  Start and end of each event contribute one entry each.
struct AnnotationSet {
    std::string annotator_id;
    std::vector<int> minutes;
};

/// Probability that an annotation uses a category other than the
/// annotator's habit.  The remaining mass `delta` is spread evenly over the
/// other categories.
struct SwitchModel {
    double delta = 0.1;

    /// Throws ConfigError if delta is outside [0, 1] or if delta > 0 with a
    /// single-category catalogue.
    void validate(std::size_t n_categories) const;
};

/// P(H | D), one entry per catalogue category.
struct HabitPosterior {
    std::vector<double> probs;

    std::size_t argmax() const;
};

/// P(C_i | D): one row per annotation, one column per category.
struct CategoryPosterior {
    std::vector<std::vector<double>> rows;
};

/// Uniform probability of observing `minute` under `cat`: 1/|members| when
/// the minute is admissible, 0 otherwise.
double likelihood(const ResolutionCategory& cat, int minute);

/// P(C_i = used | H = habit) under the switch model.
double switch_prob(const SwitchModel& model, std::size_t used, std::size_t habit,
                   std::size_t n_categories);

/// Options shared by the posterior computations.  An empty prior means the
/// uniform prior over habits.
struct InferenceOptions {
    SwitchModel model{};
    std::vector<double> prior{};
};

/// Exact posterior over the annotator's habit.  The product over
/// annotations is accumulated in log space and normalised at the end.
/// Throws InputError on an empty annotation set.
HabitPosterior habit_posterior(std::span<const int> minutes, const CategoryCatalog& catalog,
                               const InferenceOptions& options = {});

/// Exact posterior over the category used for each annotation.
CategoryPosterior category_posterior(std::span<const int> minutes, const CategoryCatalog& catalog,
                                     const InferenceOptions& options = {});

/// Same as above, reusing an already-computed habit posterior.
CategoryPosterior category_posterior(std::span<const int> minutes, const CategoryCatalog& catalog,
                                     const HabitPosterior& habit, const SwitchModel& model);

/// Index of the largest entry.  Exact ties go to the lowest index, i.e. the
/// coarsest category.
std::size_t map_index(std::span<const double> row);

const ResolutionCategory& map_category(std::span<const double> row, const CategoryCatalog& catalog);

/// Everything inferred for one annotator.
struct AnnotatorInference {
    std::string annotator_id;
    HabitPosterior habit;
    CategoryPosterior categories;
    std::vector<std::size_t> map_indices;
};

AnnotatorInference infer_annotator(const AnnotationSet& annotations, const CategoryCatalog& catalog,
                                   const InferenceOptions& options = {});

}  // namespace tempannot
