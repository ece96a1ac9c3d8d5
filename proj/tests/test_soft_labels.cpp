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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "tempannot/catalog.hpp"
#include "tempannot/errors.hpp"
#include "tempannot/soft_labels.hpp"

using namespace tempannot;

namespace {

const Timestamp kDay = make_timestamp(2024, 3, 5, 0, 0);

double at(int hour, int minute) { return static_cast<double>((kDay + hour * 60 + minute).minutes); }

EventAnnotation shower(int sh, int sm, int eh, int em) {
    return {kDay + sh * 60 + sm, kDay + eh * 60 + em, "A", "shower"};
}

}  // namespace

TEST_CASE("start ramp of a 30-minute boundary") {
    const auto dist = BoundaryDistribution::for_period(kDay + 8 * 60, 30);
    CHECK(dist.half_width == 15.0);
    CHECK(start_probability(dist, at(8, 0)) == 0.5);
    CHECK(start_probability(dist, at(7, 45)) == 0.0);
    CHECK(start_probability(dist, at(8, 15)) == 1.0);
    CHECK(start_probability(dist, at(8, 6)) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(start_probability(dist, at(7, 0)) == 0.0);
    CHECK(start_probability(dist, at(9, 0)) == 1.0);
}

TEST_CASE("end ramp of a 30-minute boundary") {
    const auto dist = BoundaryDistribution::for_period(kDay + 8 * 60 + 30, 30);
    CHECK(end_probability(dist, at(8, 30)) == 0.5);
    CHECK(end_probability(dist, at(8, 45)) == 0.0);
    CHECK(end_probability(dist, at(8, 15)) == 1.0);
    CHECK(end_probability(dist, at(8, 24)) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("ramps equal the integral of the uniform density") {
    for (int period : {1, 5, 10, 15, 30}) {
        const auto dist = BoundaryDistribution::for_period(kDay + 600, period);
        for (double dt = -20.0; dt <= 20.0; dt += 0.75) {
            const double t = static_cast<double>(kDay.minutes + 600) + dt;
            const double q = oracle::uniform_cdf_quadrature(dist.lower(), dist.upper(), t);
            CHECK(start_probability(dist, t) == doctest::Approx(q).epsilon(1e-4));
            CHECK(end_probability(dist, t) == doctest::Approx(1.0 - q).epsilon(1e-4));
        }
    }
}

TEST_CASE("bias fraction moves the distribution earlier") {
    const auto dist = BoundaryDistribution::for_period(kDay + 8 * 60, 30, 0.5);
    CHECK(dist.lower() == at(7, 30));
    CHECK(dist.upper() == at(8, 0));
    CHECK(start_probability(dist, at(7, 45)) == 0.5);
}

TEST_CASE("soft label of a shower with 30-minute boundaries") {
    const auto cat = CategoryCatalog::standard();
    const auto ev = shower(8, 0, 8, 30);
    const auto start = BoundaryDistribution::for_period(ev.start, 30);
    const auto end = BoundaryDistribution::for_period(ev.end, 30);
    CHECK(soft_label_value(start, end, at(8, 15)) == 1.0);
    CHECK(soft_label_value(start, end, at(7, 44)) == 0.0);
    CHECK(soft_label_value(start, end, at(8, 0)) == 0.5);

    const SlotWindow window{kDay + 7 * 60 + 30, 90};
    const auto series = soft_label(ev, cat[0], cat[0], window);
    REQUIRE(series.size() == 90);
    // Slots are sampled at their midpoints.  The two ramps meet at 08:15, so
    // the slots either side sit half a minute into one ramp.
    CHECK(series.values[45] == doctest::Approx(1.0 - 0.5 / 30.0).epsilon(1e-12));
    CHECK(series.values[44] == doctest::Approx(29.5 / 30.0).epsilon(1e-12));
    CHECK(series.values[14] == 0.0);                                            // 07:44
    CHECK(series.values[30] == doctest::Approx(15.5 / 30.0).epsilon(1e-12));   // 08:00 slot midpoint
}

TEST_CASE("window must cover both ramps") {
    const auto cat = CategoryCatalog::standard();
    const auto ev = shower(8, 0, 8, 30);
    CHECK_THROWS_AS((void)soft_label(ev, cat[0], cat[0], SlotWindow{kDay + 7 * 60 + 50, 60}), InputError);
    CHECK_NOTHROW((void)soft_label(ev, cat[0], cat[0], SlotWindow{kDay + 7 * 60 + 45, 60}));
    CHECK_THROWS_AS((void)hard_label(ev, SlotWindow{kDay + 8 * 60 + 1, 60}), InputError);
    CHECK_THROWS_AS((void)soft_label(shower(9, 0, 8, 0), cat[0], cat[0], SlotWindow{kDay, 1440}), InputError);
}

TEST_CASE("hard label") {
    const auto ev = shower(8, 0, 8, 30);
    const SlotWindow window{kDay + 7 * 60 + 30, 90};
    const auto series = hard_label(ev, window);
    CHECK(series.values[45] == 1.0);  // 08:15
    CHECK(series.values[29] == 0.0);  // 07:59
    CHECK(series.values[30] == 1.0);  // 08:00
    CHECK(series.values[60] == 0.0);  // 08:30
    CHECK(std::count(series.values.begin(), series.values.end(), 1.0) == 30);
}

TEST_CASE("finest-category soft label equals the hard label") {
    const CategoryCatalog cat = CategoryCatalog::standard();
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> start(300, 1000);
    std::uniform_int_distribution<int> dur(1, 120);
    for (int trial = 0; trial < 50; ++trial) {
        const int s = start(rng);
        const EventAnnotation ev{kDay + s, kDay + s + dur(rng), "A", "x"};
        const auto window = padded_window(ev, 10);
        CHECK(soft_label(ev, cat[4], cat[4], window).values == hard_label(ev, window).values);
    }
}

TEST_CASE("soft label shape and bounds") {
    const auto cat = CategoryCatalog::standard();
    std::mt19937 rng(9);
    std::uniform_int_distribution<std::size_t> pick(0, 4);
    std::uniform_int_distribution<int> dur(1, 90);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& cs = cat[pick(rng)];
        const auto& ce = cat[pick(rng)];
        const int d = dur(rng);
        const EventAnnotation ev{kDay + 600, kDay + 600 + d, "A", "x"};
        const auto window = padded_window(ev, 20);
        const auto series = soft_label(ev, cs, ce, window);
        const auto start = BoundaryDistribution::for_period(ev.start, cs.period_minutes());
        const auto end = BoundaryDistribution::for_period(ev.end, ce.period_minutes());
        // A whole slot between the ramps guarantees a midpoint on the plateau.
        const bool separate = start.upper() + 1.0 <= end.lower();
        int phase = 0;  // 0 rising, 1 plateau, 2 falling
        for (std::size_t k = 0; k < series.size(); ++k) {
            const double v = series.values[k];
            const double mid = static_cast<double>(series.slot_time(k).minutes) + 0.5;
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(v <= std::min(start_probability(start, mid), end_probability(end, mid)));
            if (separate && k > 0) {
                const double prev = series.values[k - 1];
                if (phase == 0 && v < prev) phase = 2;
                if (phase == 2) CHECK(v <= prev);
            }
        }
        if (separate) CHECK(*std::max_element(series.values.begin(), series.values.end()) == 1.0);
    }
}

TEST_CASE("overlapping ramps give a peak below one") {
    const auto cat = CategoryCatalog::standard();
    const EventAnnotation ev{kDay + 600, kDay + 610, "A", "x"};
    const auto series = soft_label(ev, cat[0], cat[0], padded_window(ev, 20));
    CHECK(*std::max_element(series.values.begin(), series.values.end()) < 1.0);
}

TEST_CASE("zero-length events give an empty hard label") {
    const auto cat = CategoryCatalog::standard();
    const EventAnnotation ev{kDay + 600, kDay + 600, "A", "x"};
    const auto window = padded_window(ev, 20);
    const auto hard = hard_label(ev, window);
    CHECK(std::count(hard.values.begin(), hard.values.end(), 1.0) == 0);
    const auto soft = soft_label(ev, cat[0], cat[0], window);
    CHECK(*std::max_element(soft.values.begin(), soft.values.end()) <= 0.25);
}

TEST_CASE("translation equivariance is bit-exact") {
    const auto cat = CategoryCatalog::standard();
    const EventAnnotation ev{kDay + 485, kDay + 517, "A", "x"};
    const SlotWindow window{kDay + 440, 140};
    for (std::size_t a = 0; a < 5; ++a) {
        for (std::size_t b = 0; b < 5; ++b) {
            const auto base = soft_label(ev, cat[a], cat[b], window, {0.5});
            for (std::int64_t shift : {1, 7, 60, 1440, 525600, -13}) {
                const EventAnnotation moved{ev.start + shift, ev.end + shift, "A", "x"};
                const auto series = soft_label(moved, cat[a], cat[b], SlotWindow{window.start + shift, window.length}, {0.5});
                CHECK(series.window_start == base.window_start + shift);
                CHECK(series.values == base.values);
            }
        }
    }
}
