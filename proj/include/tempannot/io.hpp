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
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tempannot/catalog.hpp"
#include "tempannot/errors.hpp"
#include "tempannot/hmm.hpp"
#include "tempannot/inference.hpp"
#include "tempannot/soft_labels.hpp"

namespace tempannot {

/// Input error tied to a 1-based line of a text file.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Reads `annotator_id,date,event_kind,start,end` rows (date YYYY-MM-DD,
/// times HH:MM).  A header row is required; blank lines and lines starting
/// with '#' are skipped.  Throws ParseError for malformed rows, events that
/// do not end after they start, and events crossing midnight.
std::vector<EventAnnotation> read_annotations_csv(std::istream& in);

/// Events grouped per annotator, in input order within each group.
std::map<std::string, std::vector<EventAnnotation>> group_by_annotator(
    std::span<const EventAnnotation> events);

/// Minute-of-hour evidence for inference: start then end of every event.
AnnotationSet annotation_set(std::string annotator_id, std::span<const EventAnnotation> events);

/// Reads `timestamp,humidity` rows on a uniform 1-minute grid.
SensorSeries read_sensor_csv(std::istream& in);

/// Reads `timestamp,value` rows on a uniform 1-minute grid.
LabelSeries read_series_csv(std::istream& in);

/// Writes `timestamp,value` rows, preceded by `# <comment>` when given.
void write_series_csv(std::ostream& out, const LabelSeries& series, std::string_view comment = {});

std::vector<int> parse_period_list(std::string_view text);

nlohmann::json to_json(const HmmParams& params);
HmmParams hmm_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AnnotatorInference& inference, const CategoryCatalog& catalog,
                       std::span<const EventAnnotation> events);

/// Splits one CSV line on commas and trims surrounding whitespace.
std::vector<std::string> split_csv_line(std::string_view line);

/// Formats a double with enough digits to round-trip.
std::string format_double(double value);

}  // namespace tempannot
