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

#include "mixsspt/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace mixsspt {

std::string version_string() {
    return MIXSSPT_VERSION_STRING;
}

ResultRecord::ResultRecord(std::string experiment_name, std::vector<Column> cols, uint64_t seed)
    : experiment(std::move(experiment_name)), columns(std::move(cols)) {
    columns.push_back({"seed", static_cast<long long>(seed)});
    columns.push_back({"version", version_string()});
}

const Field *ResultRecord::find(std::string_view name) const {
    for (const auto &c : columns) {
        if (c.name == name) {
            return &c.value;
        }
    }
    return nullptr;
}

double ResultRecord::number(std::string_view name) const {
    const Field *f = find(name);
    if (f) {
        if (const auto *d = std::get_if<double>(f)) {
            return *d;
        }
        if (const auto *k = std::get_if<long long>(f)) {
            return static_cast<double>(*k);
        }
    }
    throw std::out_of_range("no numeric column '" + std::string(name) + "'");
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_field(const Field &f) {
    struct Visitor {
        std::string operator()(std::monostate) const {
            return "";
        }
        std::string operator()(bool b) const {
            return b ? "true" : "false";
        }
        std::string operator()(long long k) const {
            return std::to_string(k);
        }
        std::string operator()(double d) const {
            return format_double(d);
        }
        std::string operator()(const std::string &s) const {
            return s;
        }
    };
    return std::visit(Visitor{}, f);
}

size_t Table::column(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw std::out_of_range("no column '" + std::string(name) + "'");
    }
    return static_cast<size_t>(it - header.begin());
}

Table to_table(const std::vector<ResultRecord> &records) {
    Table t;
    if (records.empty()) {
        return t;
    }
    for (const auto &c : records.front().columns) {
        t.header.push_back(c.name);
    }
    for (const auto &r : records) {
        if (r.columns.size() != t.header.size()) {
            throw std::invalid_argument("records do not share a column layout");
        }
        std::vector<std::string> row;
        for (size_t k = 0; k < r.columns.size(); k++) {
            if (r.columns[k].name != t.header[k]) {
                throw std::invalid_argument("records do not share a column layout");
            }
            row.push_back(format_field(r.columns[k].value));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

std::string csv_cell(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

// Tick labels with at most four significant digits.
std::string tick_label(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(x) < 1e-12 ? 0.0 : x);
    return buf;
}

const char *const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string write_csv(const Table &table) {
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (size_t k = 0; k < cells.size(); k++) {
            if (k) {
                out += ',';
            }
            out += csv_cell(cells[k]);
        }
        out += '\n';
    };
    line(table.header);
    for (const auto &r : table.rows) {
        line(r);
    }
    return out;
}

Table parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    bool any = false;
    for (size_t k = 0; k < text.size(); k++) {
        char c = text[k];
        if (quoted) {
            if (c == '"') {
                if (k + 1 < text.size() && text[k + 1] == '"') {
                    cell += '"';
                    k++;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && k + 1 < text.size() && text[k + 1] == '\n') {
                k++;
            }
            if (any || !cell.empty()) {
                row.push_back(std::move(cell));
                lines.push_back(std::move(row));
            }
            row.clear();
            cell.clear();
            any = false;
        } else {
            cell += c;
            any = true;
        }
    }
    if (quoted) {
        throw std::invalid_argument("unterminated quoted CSV field");
    }
    if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        lines.push_back(std::move(row));
    }
    Table t;
    if (lines.empty()) {
        return t;
    }
    t.header = std::move(lines.front());
    for (size_t k = 1; k < lines.size(); k++) {
        if (lines[k].size() != t.header.size()) {
            throw std::invalid_argument("CSV row " + std::to_string(k) + " has " + std::to_string(lines[k].size()) +
                                        " cells, expected " + std::to_string(t.header.size()));
        }
        t.rows.push_back(std::move(lines[k]));
    }
    return t;
}

std::string write_json(const std::vector<ResultRecord> &records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : records) {
        nlohmann::ordered_json obj;
        obj["experiment"] = r.experiment;
        for (const auto &c : r.columns) {
            struct Visitor {
                nlohmann::ordered_json operator()(std::monostate) const {
                    return nullptr;
                }
                nlohmann::ordered_json operator()(bool b) const {
                    return b;
                }
                nlohmann::ordered_json operator()(long long k) const {
                    return k;
                }
                nlohmann::ordered_json operator()(double d) const {
                    // JSON has no non-finite numbers.
                    if (!std::isfinite(d)) {
                        return format_double(d);
                    }
                    return d;
                }
                nlohmann::ordered_json operator()(const std::string &s) const {
                    return s;
                }
            };
            obj[c.name] = std::visit(Visitor{}, c.value);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string render_svg(const Table &table, const PlotSpec &spec) {
    const double width = 720, height = 440;
    const double left = 70, right = 170, top = 40, bottom = 50;
    const double pw = width - left - right, ph = height - top - bottom;

    size_t xc = table.column(spec.x);
    size_t yc = table.column(spec.y);
    std::vector<size_t> sc;
    for (const auto &s : spec.series) {
        sc.push_back(table.column(s));
    }

    // Series in order of first appearance; points within a series sorted by x.
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto &row : table.rows) {
        std::string label;
        for (size_t k = 0; k < sc.size(); k++) {
            if (k) {
                label += ", ";
            }
            label += spec.series[k] + "=" + row[sc[k]];
        }
        if (row[xc].empty() || row[yc].empty()) {
            continue;
        }
        double x = std::stod(row[xc]);
        double y = std::stod(row[yc]);
        if (!std::isfinite(x) || !std::isfinite(y)) {
            continue;
        }
        if (!series.count(label)) {
            order.push_back(label);
        }
        series[label].push_back({x, y});
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (order.empty()) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << fixed(left + pw / 2, 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << xml_escape(spec.title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; k++) {
        double xv = xmin + (xmax - xmin) * k / 5.0;
        double yv = ymin + (ymax - ymin) * k / 5.0;
        os << "<line x1=\"" << fixed(sx(xv), 2) << "\" y1=\"" << fixed(top + ph, 2) << "\" x2=\"" << fixed(sx(xv), 2)
           << "\" y2=\"" << fixed(top + ph + 5, 2) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fixed(sx(xv), 2) << "\" y=\"" << fixed(top + ph + 18, 2)
           << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
        os << "<line x1=\"" << fixed(left - 5, 2) << "\" y1=\"" << fixed(sy(yv), 2) << "\" x2=\"" << fixed(left, 2)
           << "\" y2=\"" << fixed(sy(yv), 2) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fixed(left - 8, 2) << "\" y=\"" << fixed(sy(yv) + 4, 2)
           << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
    }
    os << "<text x=\"" << fixed(left + pw / 2, 2) << "\" y=\"" << fixed(height - 10, 2)
       << "\" text-anchor=\"middle\">" << xml_escape(spec.x_label.empty() ? spec.x : spec.x_label) << "</text>\n";
    os << "<text transform=\"translate(16 " << fixed(top + ph / 2, 2) << ") rotate(-90)\" text-anchor=\"middle\">"
       << xml_escape(spec.y_label.empty() ? spec.y : spec.y_label) << "</text>\n";

    size_t idx = 0;
    for (const auto &label : order) {
        auto pts = series[label];
        std::stable_sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        const char *color = kPalette[idx % (sizeof kPalette / sizeof kPalette[0])];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t k = 0; k < pts.size(); k++) {
            os << (k ? " " : "") << fixed(sx(pts[k].first), 2) << "," << fixed(sy(pts[k].second), 2);
        }
        os << "\"/>\n";
        for (const auto &pt : pts) {
            os << "<circle cx=\"" << fixed(sx(pt.first), 2) << "\" cy=\"" << fixed(sy(pt.second), 2)
               << "\" r=\"2\" fill=\"" << color << "\"/>\n";
        }
        double ly = top + 10 + 16.0 * static_cast<double>(idx);
        os << "<line x1=\"" << fixed(left + pw + 12, 2) << "\" y1=\"" << fixed(ly, 2) << "\" x2=\""
           << fixed(left + pw + 32, 2) << "\" y2=\"" << fixed(ly, 2) << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fixed(left + pw + 36, 2) << "\" y=\"" << fixed(ly + 4, 2) << "\">" << xml_escape(label)
           << "</text>\n";
        idx++;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace mixsspt
