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

// Independent reference computations used only by the tests.  Nothing here
// calls into the library's numerical code.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

struct JointPosterior {
    std::vector<double> habit;
    std::vector<std::vector<double>> categories;
};

/// Enumerates every assignment of (H, C_1..C_N) and normalises the joint
/// P(H) prod_i P(C_i | H) P(d_i | C_i).
inline JointPosterior brute_force_joint(const std::vector<int>& periods, const std::vector<int>& minutes,
                                        double delta) {
    const std::size_t n = periods.size();
    const std::size_t len = minutes.size();
    auto obs = [&](std::size_t c, int m) { return m % periods[c] == 0 ? periods[c] / 60.0 : 0.0; };
    auto sw = [&](std::size_t c, std::size_t h) {
        return c == h ? 1.0 - delta : delta / static_cast<double>(n - 1);
    };

    JointPosterior out{std::vector<double>(n, 0.0),
                       std::vector<std::vector<double>>(len, std::vector<double>(n, 0.0))};
    double total = 0.0;
    std::vector<std::size_t> assign(len, 0);
    for (std::size_t h = 0; h < n; ++h) {
        std::fill(assign.begin(), assign.end(), 0);
        while (true) {
            double p = 1.0 / static_cast<double>(n);
            for (std::size_t i = 0; i < len; ++i) p *= sw(assign[i], h) * obs(assign[i], minutes[i]);
            total += p;
            out.habit[h] += p;
            for (std::size_t i = 0; i < len; ++i) out.categories[i][assign[i]] += p;
            std::size_t pos = 0;
            while (pos < len && ++assign[pos] == n) assign[pos++] = 0;
            if (pos == len) break;
        }
    }
    for (double& v : out.habit) v /= total;
    for (auto& row : out.categories) {
        for (double& v : row) v /= total;
    }
    return out;
}

/// P(X <= t) for X uniform on [lo, hi], by midpoint-rule quadrature of the
/// density over [lo - 1, t].
inline double uniform_cdf_quadrature(double lo, double hi, double t, int steps = 200000) {
    const double a = lo - 1.0;
    if (t <= a) return 0.0;
    const double h = (t - a) / steps;
    double total = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double x = a + (k + 0.5) * h;
        if (x >= lo && x <= hi) total += h / (hi - lo);
    }
    return total;
}

struct TwoStateHmm {
    std::array<double, 2> initial;
    std::array<std::array<double, 2>, 2> transition;
    std::array<double, 2> mean;
    std::array<double, 2> variance;
};

inline double log_normal_pdf(double x, double mean, double variance) {
    return -0.5 * std::log(2.0 * std::numbers::pi * variance) - (x - mean) * (x - mean) / (2.0 * variance);
}

inline double path_log_score(const TwoStateHmm& p, const std::vector<double>& x, const std::vector<int>& path) {
    double s = std::log(p.initial[path[0]]) + log_normal_pdf(x[0], p.mean[path[0]], p.variance[path[0]]);
    for (std::size_t t = 1; t < x.size(); ++t) {
        s += std::log(p.transition[path[t - 1]][path[t]]) + log_normal_pdf(x[t], p.mean[path[t]], p.variance[path[t]]);
    }
    return s;
}

/// Best of all 2^n state paths; ties keep the first path found in
/// lexicographic order.
inline std::vector<int> exhaustive_best_path(const TwoStateHmm& p, const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<int> best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<int> path(n);
        for (std::size_t t = 0; t < n; ++t) path[t] = static_cast<int>((mask >> (n - 1 - t)) & 1U);
        const double s = path_log_score(p, x, path);
        if (s > best_score) {
            best_score = s;
            best = path;
        }
    }
    return best;
}

}  // namespace oracle
