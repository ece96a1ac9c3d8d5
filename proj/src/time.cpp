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

#include "tempannot/time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "tempannot/errors.hpp"

namespace tempannot {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int parse_digits(std::string_view text, std::string_view what) {
    int value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw InputError("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::string two_digits(int value) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d", value);
    return buf;
}

}  // namespace

int Timestamp::minute_of_hour() const { return static_cast<int>(minutes - floor_div(minutes, 60) * 60); }

int Timestamp::minute_of_day() const {
    return static_cast<int>(minutes - floor_div(minutes, kMinutesPerDay) * kMinutesPerDay);
}

std::int64_t Timestamp::day() const { return floor_div(minutes, kMinutesPerDay); }

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour, int minute) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) throw InputError("invalid calendar date");
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return Timestamp{static_cast<std::int64_t>(days) * kMinutesPerDay + hour * 60 + minute};
}

Timestamp parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw InputError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
    }
    const int y = parse_digits(text.substr(0, 4), "year");
    const int m = parse_digits(text.substr(5, 2), "month");
    const int d = parse_digits(text.substr(8, 2), "day");
    if (m < 1 || m > 12 || d < 1 || d > 31) throw InputError("invalid date '" + std::string(text) + "'");
    return make_timestamp(y, static_cast<unsigned>(m), static_cast<unsigned>(d), 0, 0);
}

int parse_clock(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0 || text.size() - colon != 3) {
        throw InputError("invalid time '" + std::string(text) + "', expected HH:MM");
    }
    const int h = parse_digits(text.substr(0, colon), "hour");
    const int m = parse_digits(text.substr(colon + 1), "minute");
    if (h < 0 || m < 0 || m > 59 || h > 24 || (h == 24 && m != 0)) {
        throw InputError("invalid time '" + std::string(text) + "'");
    }
    return h * 60 + m;
}

Timestamp parse_timestamp(std::string_view text) {
    if (text.size() < 16 || (text[10] != ' ' && text[10] != 'T')) {
        throw InputError("invalid timestamp '" + std::string(text) + "', expected YYYY-MM-DD HH:MM");
    }
    const int clock = parse_clock(text.substr(11));
    if (clock >= kMinutesPerDay) throw InputError("invalid timestamp '" + std::string(text) + "'");
    return parse_date(text.substr(0, 10)) + clock;
}

std::string format_date(Timestamp t) {
    using namespace std::chrono;
    const year_month_day ymd{sys_days{days{t.day()}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_clock(Timestamp t) {
    const int m = t.minute_of_day();
    return two_digits(m / 60) + ":" + two_digits(m % 60);
}

std::string format_timestamp(Timestamp t) { return format_date(t) + " " + format_clock(t); }

}  // namespace tempannot
