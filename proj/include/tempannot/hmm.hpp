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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tempannot/soft_labels.hpp"
#include "tempannot/time.hpp"

namespace tempannot {

/// Humidity readings on a uniform 1-minute grid.
struct SensorSeries {
    Timestamp start;
    std::vector<double> humidity;
};

/// Two-state HMM with Gaussian emissions.  State 0 is "off", state 1 "on".
struct HmmParams {
    std::array<double, 2> initial{0.5, 0.5};
    std::array<std::array<double, 2>, 2> transition{{{0.9, 0.1}, {0.1, 0.9}}};
    std::array<double, 2> mean{0.0, 1.0};
    std::array<double, 2> variance{1.0, 1.0};

    /// Throws ConfigError unless the rows are stochastic within 1e-12 and
    /// the variances are positive.
    void validate() const;
    /// Swaps the roles of the two states.
    HmmParams swapped() const;
};

/// Most probable state sequence (log-space Viterbi).  Ties prefer state 0.
/// Throws NumericError if every state becomes impossible at some step.
std::vector<int> viterbi_path(const HmmParams& params, std::span<const double> observations);

/// Decoded on/off series on the sensor grid.
LabelSeries viterbi(const HmmParams& params, const SensorSeries& series);

/// log P(observations) by the scaled forward pass.
double log_likelihood(const HmmParams& params, std::span<const double> observations);

/// P(state = on | observations) per step (forward-backward).
std::vector<double> posterior_on(const HmmParams& params, std::span<const double> observations);

struct FitOptions {
    double tolerance = 1e-6;
    int max_iterations = 100;
    double variance_floor = 1e-6;
};

struct FitResult {
    HmmParams params;
    /// Log-likelihood of the data under the parameters at the start of each
    /// iteration, followed by the value for the final parameters.
    std::vector<double> log_likelihoods;
    int iterations = 0;
    bool converged = false;
    /// Set when the fit collapsed onto a single effective state.
    bool degenerate = false;
};

/// Baum-Welch EM from `initial_guess` until the log-likelihood gain drops
/// below the tolerance or the iteration limit is hit.  Throws InputError for
/// fewer than 10 observations.
FitResult fit_emissions(std::span<const double> observations, const HmmParams& initial_guess,
                        const FitOptions& options = {});

/// Starting point from the lower and upper quartiles of the data.
HmmParams initial_guess_from(std::span<const double> observations);

}  // namespace tempannot
