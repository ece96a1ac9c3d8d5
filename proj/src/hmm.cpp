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

#include "tempannot/hmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tempannot/errors.hpp"

namespace tempannot {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

double log_gaussian(double x, double mean, double variance) {
    const double d = x - mean;
    return -0.5 * (std::log(2.0 * std::numbers::pi * variance) + d * d / variance);
}


// Scaled forward/backward quantities for one parameter set.
struct ForwardBackward {
    std::vector<std::array<double, 2>> alpha;  // normalised per step
    std::vector<std::array<double, 2>> beta;   // scaled by the same constants
    std::vector<std::array<double, 2>> emission;
    std::vector<double> scale;
    double log_likelihood = 0.0;
};

ForwardBackward forward_backward(const HmmParams& p, std::span<const double> x) {
    const std::size_t n = x.size();
    ForwardBackward fb;
    fb.alpha.resize(n);
    fb.beta.resize(n);
    fb.emission.resize(n);
    fb.scale.resize(n);

    // Emissions are rescaled by their per-step maximum in log space so that
    // far-out observations do not underflow both states at once.
    std::vector<double> emission_shift(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double l0 = log_gaussian(x[t], p.mean[0], p.variance[0]);
        const double l1 = log_gaussian(x[t], p.mean[1], p.variance[1]);
        emission_shift[t] = std::max(l0, l1);
        fb.emission[t] = {std::exp(l0 - emission_shift[t]), std::exp(l1 - emission_shift[t])};
    }

    for (std::size_t t = 0; t < n; ++t) {
        std::array<double, 2> a{};
        for (int s = 0; s < 2; ++s) {
            const double prior = t == 0 ? p.initial[s]
                                        : fb.alpha[t - 1][0] * p.transition[0][s] + fb.alpha[t - 1][1] * p.transition[1][s];
            a[s] = prior * fb.emission[t][s];
        }
        const double c = a[0] + a[1];
        if (!(c > 0.0)) throw NumericError("observation sequence has zero probability under the HMM");
        fb.alpha[t] = {a[0] / c, a[1] / c};
        fb.scale[t] = c;
        fb.log_likelihood += std::log(c) + emission_shift[t];
    }

    fb.beta[n - 1] = {1.0, 1.0};
    for (std::size_t t = n - 1; t-- > 0;) {
        for (int r = 0; r < 2; ++r) {
            double b = 0.0;
            for (int s = 0; s < 2; ++s) b += p.transition[r][s] * fb.emission[t + 1][s] * fb.beta[t + 1][s];
            fb.beta[t][r] = b / fb.scale[t + 1];
        }
    }
    return fb;
}

void check_observations(std::span<const double> x) {
    if (x.empty()) throw InputError("empty observation sequence");
    for (double v : x) {
        if (!std::isfinite(v)) throw InputError("observations must be finite");
    }
}

}  // namespace

void HmmParams::validate() const {
    auto stochastic = [](const std::array<double, 2>& row) {
        return row[0] >= 0.0 && row[1] >= 0.0 && std::abs(row[0] + row[1] - 1.0) <= 1e-12;
    };
    if (!stochastic(initial)) throw ConfigError("initial distribution must sum to 1");
    if (!stochastic(transition[0]) || !stochastic(transition[1])) {
        throw ConfigError("transition rows must sum to 1");
    }
    for (int s = 0; s < 2; ++s) {
        if (!(variance[s] > 0.0) || !std::isfinite(variance[s]) || !std::isfinite(mean[s])) {
            throw ConfigError("emission variances must be positive and finite");
        }
    }
}

HmmParams HmmParams::swapped() const {
    HmmParams out;
    out.initial = {initial[1], initial[0]};
    out.transition = {{{transition[1][1], transition[1][0]}, {transition[0][1], transition[0][0]}}};
    out.mean = {mean[1], mean[0]};
    out.variance = {variance[1], variance[0]};
    return out;
}

std::vector<int> viterbi_path(const HmmParams& params, std::span<const double> observations) {
    params.validate();
    check_observations(observations);
    const std::size_t n = observations.size();
    std::array<std::array<double, 2>, 2> log_a{};
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) log_a[r][s] = safe_log(params.transition[r][s]);
    }

    std::vector<std::array<int, 2>> back(n);
    std::array<double, 2> score{};
    for (int s = 0; s < 2; ++s) {
        score[s] = safe_log(params.initial[s]) + log_gaussian(observations[0], params.mean[s], params.variance[s]);
    }
    if (score[0] == kNegInf && score[1] == kNegInf) throw NumericError("no state can emit the first observation");

    for (std::size_t t = 1; t < n; ++t) {
        std::array<double, 2> next{};
        for (int s = 0; s < 2; ++s) {
            const double via0 = score[0] + log_a[0][s];
            const double via1 = score[1] + log_a[1][s];
            const int from = via1 > via0 ? 1 : 0;
            back[t][s] = from;
            next[s] = std::max(via0, via1) + log_gaussian(observations[t], params.mean[s], params.variance[s]);
        }
        if (next[0] == kNegInf && next[1] == kNegInf) {
            throw NumericError("every state path has zero probability at step " + std::to_string(t));
        }
        score = next;
    }

    std::vector<int> path(n);
    path[n - 1] = score[1] > score[0] ? 1 : 0;
    for (std::size_t t = n - 1; t > 0; --t) path[t - 1] = back[t][path[t]];
    return path;
}

LabelSeries viterbi(const HmmParams& params, const SensorSeries& series) {
    const auto path = viterbi_path(params, series.humidity);
    LabelSeries out{series.start, std::vector<double>(path.size())};
    for (std::size_t t = 0; t < path.size(); ++t) out.values[t] = static_cast<double>(path[t]);
    return out;
}

double log_likelihood(const HmmParams& params, std::span<const double> observations) {
    params.validate();
    check_observations(observations);
    return forward_backward(params, observations).log_likelihood;
}

std::vector<double> posterior_on(const HmmParams& params, std::span<const double> observations) {
    params.validate();
    check_observations(observations);
    const auto fb = forward_backward(params, observations);
    std::vector<double> out(observations.size());
    for (std::size_t t = 0; t < out.size(); ++t) {
        const double g0 = fb.alpha[t][0] * fb.beta[t][0];
        const double g1 = fb.alpha[t][1] * fb.beta[t][1];
        out[t] = g1 / (g0 + g1);
    }
    return out;
}

FitResult fit_emissions(std::span<const double> x, const HmmParams& initial_guess, const FitOptions& options) {
    if (x.size() < 10) throw InputError("need at least 10 observations to fit the HMM");
    check_observations(x);
    initial_guess.validate();
    const std::size_t n = x.size();

    FitResult result;
    result.params = initial_guess;
    auto fb = forward_backward(result.params, x);
    result.log_likelihoods.push_back(fb.log_likelihood);
    std::array<double, 2> occupancy{};

    while (result.iterations < options.max_iterations) {
        // Expected state occupancies and transitions.
        std::array<double, 2> gamma_sum{};
        std::array<double, 2> gamma_head{};  // over t < n-1
        std::array<double, 2> weighted_x{};
        std::array<std::array<double, 2>, 2> xi_sum{};
        std::vector<std::array<double, 2>> gamma(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double g0 = fb.alpha[t][0] * fb.beta[t][0];
            const double g1 = fb.alpha[t][1] * fb.beta[t][1];
            const double norm = g0 + g1;
            gamma[t] = {g0 / norm, g1 / norm};
            for (int s = 0; s < 2; ++s) {
                gamma_sum[s] += gamma[t][s];
                weighted_x[s] += gamma[t][s] * x[t];
                if (t + 1 < n) gamma_head[s] += gamma[t][s];
            }
            if (t + 1 < n) {
                for (int r = 0; r < 2; ++r) {
                    for (int s = 0; s < 2; ++s) {
                        xi_sum[r][s] += fb.alpha[t][r] * result.params.transition[r][s] * fb.emission[t + 1][s] *
                                        fb.beta[t + 1][s] / fb.scale[t + 1];
                    }
                }
            }
        }

        HmmParams next = result.params;
        next.initial = gamma[0];
        for (int r = 0; r < 2; ++r) {
            const double row = xi_sum[r][0] + xi_sum[r][1];
            if (row > 0.0) next.transition[r] = {xi_sum[r][0] / row, xi_sum[r][1] / row};
        }
        for (int s = 0; s < 2; ++s) {
            if (gamma_sum[s] <= 0.0) continue;
            next.mean[s] = weighted_x[s] / gamma_sum[s];
            double spread = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                const double d = x[t] - next.mean[s];
                spread += gamma[t][s] * d * d;
            }
            next.variance[s] = std::max(spread / gamma_sum[s], options.variance_floor);
        }
        // Re-normalise away rounding drift so the parameters stay valid.
        auto renorm = [](std::array<double, 2>& row) {
            const double total = row[0] + row[1];
            row = {row[0] / total, row[1] / total};
        };
        renorm(next.initial);
        renorm(next.transition[0]);
        renorm(next.transition[1]);
        occupancy = gamma_sum;

        const double previous = result.log_likelihoods.back();
        result.params = next;
        fb = forward_backward(result.params, x);
        result.log_likelihoods.push_back(fb.log_likelihood);
        ++result.iterations;
        if (fb.log_likelihood - previous < options.tolerance) {
            result.converged = true;
            break;
        }
    }

    double mean_x = 0.0;
    for (double v : x) mean_x += v;
    mean_x /= static_cast<double>(n);
    double var_x = 0.0;
    for (double v : x) var_x += (v - mean_x) * (v - mean_x);
    var_x /= static_cast<double>(n);

    const double min_occupancy = std::min(occupancy[0], occupancy[1]);
    const double separation = std::abs(result.params.mean[0] - result.params.mean[1]);
    result.degenerate = var_x <= 0.0 || min_occupancy < 1e-3 * static_cast<double>(n) ||
                        separation <= 1e-9 * (1.0 + std::abs(mean_x));
    return result;
}

HmmParams initial_guess_from(std::span<const double> observations) {
    check_observations(observations);
    std::vector<double> sorted(observations.begin(), observations.end());
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double q) { return sorted[static_cast<std::size_t>(q * (sorted.size() - 1))]; };

    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(sorted.size());
    double var = 0.0;
    for (double v : sorted) var += (v - mean) * (v - mean);
    var /= static_cast<double>(sorted.size());

    HmmParams p;
    p.initial = {0.9, 0.1};
    p.transition = {{{0.95, 0.05}, {0.1, 0.9}}};
    p.mean = {quantile(0.25), quantile(0.75)};
    const double v = var > 0.0 ? var / 4.0 : 1.0;
    p.variance = {v, v};
    return p;
}

}  // namespace tempannot
