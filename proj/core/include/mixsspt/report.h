// Copyright 2026 The mixsspt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIXSSPT_REPORT_H
#define MIXSSPT_REPORT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mixsspt {

/// Library version stamped into every record.
std::string version_string();

/// One cell of a result record. monostate is an empty cell.
using Field = std::variant<std::monostate, bool, long long, double, std::string>;

struct Column {
    std::string name;
    Field value;
};

/// A single result row. Columns are ordered: parameters, values, then the
/// provenance columns `seed` and `version`, which every record carries.
struct ResultRecord {
    std::string experiment;
    std::vector<Column> columns;

    ResultRecord(std::string experiment, std::vector<Column> columns, uint64_t seed);

    const Field *find(std::string_view name) const;
    /// Numeric value of a column; throws std::out_of_range if absent or not
    /// numeric.
    double number(std::string_view name) const;
};

/// Shortest round-trip decimal form of x ("nan", "inf", "-inf" for
/// non-finite values).
std::string format_double(double x);
std::string format_field(const Field &f);

/// Rectangular table of formatted cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws std::out_of_range if missing.
    size_t column(std::string_view name) const;
};

/// Builds a table from records sharing one column layout.
Table to_table(const std::vector<ResultRecord> &records);
std::string write_csv(const Table &table);
/// Parses CSV text as written by write_csv (quoted fields allowed).
Table parse_csv(std::string_view text);

/// JSON array of records with typed values.
std::string write_json(const std::vector<ResultRecord> &records);

struct PlotSpec {
    std::string title;
    std::string x;
    std::string y;
    /// Columns whose values label one line each.
    std::vector<std::string> series;
    std::string x_label;
    std::string y_label;
};

/// Line plot of a table. Depends only on the table cells, so a CSV parsed
/// back renders the same bytes.
std::string render_svg(const Table &table, const PlotSpec &spec);

}  // namespace mixsspt

#endif
