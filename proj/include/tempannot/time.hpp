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

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>

namespace tempannot {

/// Minute-precision absolute timestamp, counted in minutes since
/// 1970-01-01 00:00 (no time zone).
struct Timestamp {
    std::int64_t minutes = 0;

    constexpr auto operator<=>(const Timestamp&) const = default;

    constexpr Timestamp operator+(std::int64_t delta) const { return {minutes + delta}; }
    constexpr Timestamp operator-(std::int64_t delta) const { return {minutes - delta}; }
    constexpr std::int64_t operator-(Timestamp other) const { return minutes - other.minutes; }

    /// Minute within the hour, 0..59.
    int minute_of_hour() const;
    /// Minute within the day, 0..1439.
    int minute_of_day() const;
    /// Days since the epoch (floor).
    std::int64_t day() const;
};

inline constexpr std::int64_t kMinutesPerDay = 24 * 60;

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour, int minute);

/// Parses "YYYY-MM-DD".  Returns the timestamp of midnight.
Timestamp parse_date(std::string_view text);
/// Parses "HH:MM" into minutes since midnight (0..1440; "24:00" allowed).
int parse_clock(std::string_view text);
/// Parses "YYYY-MM-DD HH:MM" (a 'T' separator is also accepted).
Timestamp parse_timestamp(std::string_view text);

std::string format_date(Timestamp t);
std::string format_clock(Timestamp t);
/// "YYYY-MM-DD HH:MM"
std::string format_timestamp(Timestamp t);

}  // namespace tempannot
