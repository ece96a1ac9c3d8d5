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

#include <random>

#include "tempannot/catalog.hpp"
#include "tempannot/errors.hpp"
#include "tempannot/evaluation.hpp"

using namespace tempannot;

namespace {

const Timestamp kDay = make_timestamp(2024, 3, 5, 0, 0);

LabelSeries series(std::vector<double> values) { return {kDay, std::move(values)}; }

}  // namespace

TEST_CASE("identical hard series") {
    const auto a = series({0, 0, 1, 1, 1, 0, 1, 0});
    const auto m = soft_confusion(a, a);
    CHECK(m.tp == 4.0);
    CHECK(m.tn == 4.0);
    CHECK(m.fp == 0.0);
    CHECK(m.fn == 0.0);
    CHECK(f1(m).value == 1.0);
    CHECK(mse(a, a, {WindowMode::kFull, 15}) == 0.0);
}

TEST_CASE("soft reference against a constant prediction") {
    const std::size_t n = 40;
    const auto m = soft_confusion(series(std::vector<double>(n, 0.5)), series(std::vector<double>(n, 1.0)));
    CHECK(m.tp == 20.0);
    CHECK(m.fp == 20.0);
    CHECK(m.fn == 0.0);
    CHECK(m.tn == 0.0);
}

TEST_CASE("soft label of a 30-minute event against its own hard label") {
    const auto cat = CategoryCatalog::standard();
    const EventAnnotation ev{kDay + 480, kDay + 510, "A", "shower"};
    const auto window = padded_window(ev, 30);
    const auto soft = soft_label(ev, cat[0], cat[0], window);
    const auto hard = hard_label(ev, window);
    const auto m = soft_confusion(soft, hard);
    // Frozen from a slot-by-slot exact-fraction enumeration.
    CHECK(m.tp == doctest::Approx(22.5).epsilon(1e-12));
    CHECK(m.fp == doctest::Approx(7.5).epsilon(1e-12));
    CHECK(m.fn == doctest::Approx(7.5).epsilon(1e-12));
    CHECK(m.tn == doctest::Approx(52.5).epsilon(1e-12));
}

TEST_CASE("classical counts on binary series") {
    std::mt19937 rng(1);
    std::bernoulli_distribution coin(0.3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> r(100), p(100);
        int tp = 0, fp = 0, fn = 0, tn = 0;
        for (std::size_t k = 0; k < 100; ++k) {
            r[k] = coin(rng) ? 1.0 : 0.0;
            p[k] = coin(rng) ? 1.0 : 0.0;
            if (r[k] == 1 && p[k] == 1) ++tp;
            if (r[k] == 0 && p[k] == 1) ++fp;
            if (r[k] == 1 && p[k] == 0) ++fn;
            if (r[k] == 0 && p[k] == 0) ++tn;
        }
        const auto m = soft_confusion(series(r), series(p));
        CHECK(m.tp == tp);
        CHECK(m.fp == fp);
        CHECK(m.fn == fn);
        CHECK(m.tn == tn);
    }
}

TEST_CASE("mass conservation and transpose symmetry") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> r(257), p(257);
        for (auto& v : r) v = u(rng);
        for (auto& v : p) v = u(rng);
        const auto m = soft_confusion(series(r), series(p));
        CHECK(std::abs(m.total() - 257.0) <= 1e-9);
        const auto t = soft_confusion(series(p), series(r));
        CHECK(t.tp == doctest::Approx(m.tp).epsilon(1e-12));
        CHECK(t.tn == doctest::Approx(m.tn).epsilon(1e-12));
        CHECK(t.fp == doctest::Approx(m.fn).epsilon(1e-12));
        CHECK(t.fn == doctest::Approx(m.fp).epsilon(1e-12));
    }
}

TEST_CASE("softening the reference lowers F1 of a matching hard prediction") {
    const auto cat = CategoryCatalog::standard();
    const EventAnnotation ev{kDay + 480, kDay + 540, "A", "x"};
    const auto window = padded_window(ev, 30);
    const auto hard = hard_label(ev, window);
    const double perfect = f1(soft_confusion(hard, hard)).value;
    CHECK(perfect == 1.0);
    for (std::size_t c = 0; c < 4; ++c) {
        const auto soft = soft_label(ev, cat[c], cat[c], window);
        CHECK(f1(soft_confusion(soft, hard)).value < perfect);
    }
}

TEST_CASE("scores") {
    SoftConfusionMatrix m{0.0, 3.0, 0.0, 10.0};
    CHECK(precision(m).value == 0.0);
    CHECK_FALSE(precision(m).degenerate);
    CHECK(recall(m).degenerate);

    const SoftConfusionMatrix none{0.0, 0.0, 0.0, 12.0};
    CHECK(f1(none).value == 0.0);
    CHECK(f1(none).degenerate);

    // Fractional counts for a shower detector scored against soft labels.
    const SoftConfusionMatrix table{63.5, 69.50, 41.86, 3185.14};
    CHECK(f1(table).value == doctest::Approx(127.0 / (127.0 + 41.86 + 69.50)).epsilon(1e-12));
    CHECK(f1(table).value == doctest::Approx(0.5328).epsilon(1e-4));
    CHECK(precision(table).value == doctest::Approx(63.5 / 133.0).epsilon(1e-12));
    CHECK(recall(table).value == doctest::Approx(63.5 / 105.36).epsilon(1e-12));
}

TEST_CASE("boundary window MSE") {
    // True start 08:07, annotation 08:00 at 30-minute resolution.
    const EventAnnotation truth{kDay + 487, kDay + 600, "A", "x"};
    const EventAnnotation annotated{kDay + 480, kDay + 600, "A", "x"};
    const SlotWindow window{kDay + 420, 240};
    const auto t = hard_label(truth, window);
    const auto h = hard_label(annotated, window);
    const std::vector<Timestamp> start_only{truth.start};
    CHECK(mse(h, t, {WindowMode::kBoundary, 15}, start_only) == doctest::Approx(7.0 / 31.0).epsilon(1e-12));
    CHECK(boundary_slots(window, start_only, 15).size() == 31);

    // Overlapping windows are merged, not double counted.
    const std::vector<Timestamp> close{kDay + 487, kDay + 497};
    CHECK(boundary_slots(window, close, 15).size() == 41);
    CHECK(mse(h, t, {WindowMode::kBoundary, 15}, close) == doctest::Approx(7.0 / 41.0).epsilon(1e-12));
}

TEST_CASE("rounding at the 1-minute resolution gives zero error") {
    const EventAnnotation truth{kDay + 487, kDay + 533, "A", "x"};
    const SlotWindow window{kDay + 420, 200};
    const auto t = hard_label(truth, window);
    const std::vector<Timestamp> b{truth.start, truth.end};
    CHECK(mse(t, hard_label(truth, window), {WindowMode::kBoundary, 15}, b) == 0.0);
}

TEST_CASE("evaluation errors") {
    const auto a = series({0, 1, 1});
    const LabelSeries shifted{kDay + 1, {0, 1, 1}};
    CHECK_THROWS_AS((void)soft_confusion(a, shifted), InputError);
    CHECK_THROWS_AS((void)soft_confusion(a, series({0, 1})), InputError);
    CHECK_THROWS_AS((void)mse(a, shifted, {WindowMode::kFull, 15}), InputError);
    CHECK_THROWS_AS((void)mse(a, a, {WindowMode::kBoundary, 0}, {}), ConfigError);
    CHECK_THROWS_AS((void)mse(a, a, {WindowMode::kBoundary, 15}, {}), InputError);
}
