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

#include "tempannot/catalog.hpp"

#include <array>
#include <string>

#include "tempannot/errors.hpp"

namespace tempannot {

ResolutionCategory::ResolutionCategory(int id, int period_minutes) : id_(id), period_(period_minutes) {
    if (period_minutes <= 0 || 60 % period_minutes != 0) {
        throw ConfigError("category period must divide 60, got " + std::to_string(period_minutes));
    }
}

std::vector<int> ResolutionCategory::members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int m = 0; m < 60; m += period_) out.push_back(m);
    return out;
}

bool ResolutionCategory::contains(int minute) const {
    if (minute < 0 || minute > 59) {
        throw InputError("minute of hour out of range: " + std::to_string(minute));
    }
    return minute % period_ == 0;
}

CategoryCatalog::CategoryCatalog(std::span<const int> periods) {
    if (periods.empty()) throw ConfigError("category catalogue is empty");
    categories_.reserve(periods.size());
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (i > 0 && periods[i] >= periods[i - 1]) {
            throw ConfigError("catalogue periods must be strictly decreasing");
        }
        categories_.emplace_back(static_cast<int>(i + 1), periods[i]);
    }
    if (periods.back() != 1) {
        throw ConfigError("finest catalogue category must have a 1-minute period");
    }
}

CategoryCatalog CategoryCatalog::standard() {
    static constexpr std::array<int, 5> kPeriods{30, 15, 10, 5, 1};
    return CategoryCatalog(kPeriods);
}

std::vector<int> CategoryCatalog::periods() const {
    std::vector<int> out;
    out.reserve(categories_.size());
    for (const auto& c : categories_) out.push_back(c.period_minutes());
    return out;
}

std::size_t CategoryCatalog::coarsest_index(int minute) const {
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        if (categories_[i].contains(minute)) return i;
    }
    // Unreachable: the finest category has period 1.
    return categories_.size() - 1;
}

const ResolutionCategory& CategoryCatalog::coarsest_containing(int minute) const {
    return categories_[coarsest_index(minute)];
}

std::size_t CategoryCatalog::index_of_period(int period_minutes) const {
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        if (categories_[i].period_minutes() == period_minutes) return i;
    }
    return categories_.size();
}

}  // namespace tempannot
