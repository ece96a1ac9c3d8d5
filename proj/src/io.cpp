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

#include "tempannot/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace tempannot {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

double parse_real(std::string_view text, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError(line, "invalid number '" + std::string(text) + "'");
    }
    return value;
}

// Reads `timestamp,<value>` rows into a start time plus values, checking the
// 1-minute spacing.
std::pair<Timestamp, std::vector<double>> read_timestamped(std::istream& in, std::string_view value_column) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    Timestamp start{};
    Timestamp previous{};
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const auto fields = split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (fields.size() != 2 || fields[0] != "timestamp" || fields[1] != value_column) {
                throw ParseError(line_no, "expected header 'timestamp," + std::string(value_column) + "'");
            }
            continue;
        }
        if (fields.size() != 2) throw ParseError(line_no, "expected 2 columns");
        Timestamp t;
        try {
            t = parse_timestamp(fields[0]);
        } catch (const InputError& e) {
            throw ParseError(line_no, e.what());
        }
        if (values.empty()) {
            start = t;
        } else if (t - previous != 1) {
            throw ParseError(line_no, "timestamps must be consecutive minutes");
        }
        previous = t;
        values.push_back(parse_real(fields[1], line_no));
    }
    if (values.empty()) throw InputError("series file has no data rows");
    return {start, std::move(values)};
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : InputError("line " + std::to_string(line) + ": " + message), line_(line) {}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.emplace_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<EventAnnotation> read_annotations_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<EventAnnotation> events;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const auto f = split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (f != std::vector<std::string>{"annotator_id", "date", "event_kind", "start", "end"}) {
                throw ParseError(line_no, "expected header 'annotator_id,date,event_kind,start,end'");
            }
            continue;
        }
        if (f.size() != 5) throw ParseError(line_no, "expected 5 columns, found " + std::to_string(f.size()));
        if (f[0].empty()) throw ParseError(line_no, "empty annotator_id");
        EventAnnotation ev;
        try {
            const Timestamp day = parse_date(f[1]);
            const int start = parse_clock(f[3]);
            const int end = parse_clock(f[4]);
            if (start >= kMinutesPerDay) throw InputError("start must be before 24:00");
            if (end <= start) throw InputError("event must end after it starts, within the same day");
            ev = {day + start, day + end, f[0], f[2]};
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(line_no, e.what());
        }
        events.push_back(std::move(ev));
    }
    if (events.empty()) throw InputError("annotation file has no data rows");
    return events;
}

std::map<std::string, std::vector<EventAnnotation>> group_by_annotator(std::span<const EventAnnotation> events) {
    std::map<std::string, std::vector<EventAnnotation>> out;
    for (const auto& e : events) out[e.annotator_id].push_back(e);
    return out;
}

AnnotationSet annotation_set(std::string annotator_id, std::span<const EventAnnotation> events) {
    AnnotationSet set{std::move(annotator_id), {}};
    set.minutes.reserve(events.size() * 2);
    for (const auto& e : events) {
        set.minutes.push_back(e.start.minute_of_hour());
        set.minutes.push_back(e.end.minute_of_hour());
    }
    return set;
}

SensorSeries read_sensor_csv(std::istream& in) {
    auto [start, values] = read_timestamped(in, "humidity");
    return {start, std::move(values)};
}

LabelSeries read_series_csv(std::istream& in) {
    auto [start, values] = read_timestamped(in, "value");
    for (double v : values) {
        if (v < 0.0 || v > 1.0) throw InputError("label values must lie in [0, 1]");
    }
    return {start, std::move(values)};
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_series_csv(std::ostream& out, const LabelSeries& series, std::string_view comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    out << "timestamp,value\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        out << format_timestamp(series.slot_time(k)) << ',' << format_double(series.values[k]) << '\n';
    }
}

std::vector<int> parse_period_list(std::string_view text) {
    std::vector<int> out;
    for (const auto& field : split_csv_line(text)) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
            throw ConfigError("invalid catalogue period '" + field + "'");
        }
        out.push_back(value);
    }
    return out;
}

nlohmann::json to_json(const HmmParams& params) {
    return {
        {"initial", params.initial},
        {"transition", params.transition},
        {"mean", params.mean},
        {"variance", params.variance},
    };
}

HmmParams hmm_params_from_json(const nlohmann::json& j) {
    HmmParams p;
    try {
        p.initial = j.at("initial").get<std::array<double, 2>>();
        p.transition = j.at("transition").get<std::array<std::array<double, 2>, 2>>();
        p.mean = j.at("mean").get<std::array<double, 2>>();
        p.variance = j.at("variance").get<std::array<double, 2>>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid HMM parameters: ") + e.what());
    }
    p.validate();
    return p;
}

nlohmann::json to_json(const AnnotatorInference& inference, const CategoryCatalog& catalog,
                       std::span<const EventAnnotation> events) {
    nlohmann::json annotations = nlohmann::json::array();
    for (std::size_t i = 0; i < inference.categories.rows.size(); ++i) {
        const auto& ev = events[i / 2];
        const Timestamp t = i % 2 == 0 ? ev.start : ev.end;
        annotations.push_back({
            {"event_index", i / 2},
            {"boundary", i % 2 == 0 ? "start" : "end"},
            {"timestamp", format_timestamp(t)},
            {"minute", t.minute_of_hour()},
            {"map_period_minutes", catalog[inference.map_indices[i]].period_minutes()},
            {"posterior", inference.categories.rows[i]},
        });
    }
    return {
        {"annotator_id", inference.annotator_id},
        {"n_annotations", inference.categories.rows.size()},
        {"habit", inference.habit.probs},
        {"map_habit_period_minutes", catalog[inference.habit.argmax()].period_minutes()},
        {"annotations", std::move(annotations)},
    };
}

}  // namespace tempannot
