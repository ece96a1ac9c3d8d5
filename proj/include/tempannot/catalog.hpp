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
#include <span>
#include <vector>

namespace tempannot {

/// One annotation time resolution: an annotator using it reports only
/// minutes-of-hour that are multiples of `period_minutes`.
class ResolutionCategory {
public:
    ResolutionCategory(int id, int period_minutes);

    int id() const { return id_; }
    int period_minutes() const { return period_; }
    /// Number of admissible minutes-of-hour, 60 / period.
    int size() const { return 60 / period_; }
    std::vector<int> members() const;

    /// Throws InputError when `minute` is outside 0..59.
    bool contains(int minute) const;

    bool operator==(const ResolutionCategory&) const = default;

private:
    int id_;
    int period_;
};

/// Ordered set of categories, coarsest first.  The finest category must
/// have a period of 1 minute so that every minute has a non-zero
/// likelihood under at least one category.
class CategoryCatalog {
public:
    /// Builds categories with 1-based ids from the given periods.  Throws
    /// ConfigError unless every period divides 60, the periods strictly
    /// decrease, and the last is 1.
    explicit CategoryCatalog(std::span<const int> periods);

    /// The five categories 30, 15, 10, 5 and 1 minutes.
    static CategoryCatalog standard();

    std::size_t size() const { return categories_.size(); }
    const ResolutionCategory& operator[](std::size_t index) const { return categories_[index]; }
    const std::vector<ResolutionCategory>& categories() const { return categories_; }
    std::vector<int> periods() const;

    /// Index of the coarsest category containing `minute`.
    std::size_t coarsest_index(int minute) const;
    const ResolutionCategory& coarsest_containing(int minute) const;

    /// Index of the category with the given period, or size() if absent.
    std::size_t index_of_period(int period_minutes) const;

    auto begin() const { return categories_.begin(); }
    auto end() const { return categories_.end(); }

private:
    std::vector<ResolutionCategory> categories_;
};

}  // namespace tempannot
