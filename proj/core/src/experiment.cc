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

#include "mixsspt/experiment.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "mixsspt/fidelity.h"
#include "mixsspt/fixtures.h"
#include "mixsspt/mpdo.h"
#include "mixsspt/negativity.h"
#include "mixsspt/plaquette.h"
#include "mixsspt/statmech.h"

namespace mixsspt {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

}  // namespace

ConfigError::ConfigError(std::string key, const std::string &message)
    : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

NumericError::NumericError(std::string point, const std::string &message)
    : std::runtime_error("at " + point + ": " + message), point_(std::move(point)) {}

std::string error_record_json(const std::exception &e) {
    nlohmann::ordered_json j;
    if (const auto *c = dynamic_cast<const ConfigError *>(&e)) {
        j["error"] = "config";
        j["key"] = c->key();
    } else if (const auto *n = dynamic_cast<const NumericError *>(&e)) {
        j["error"] = "numeric";
        j["point"] = n->point();
    } else if (const auto *f = dynamic_cast<const FixtureError *>(&e)) {
        j["error"] = "fixture";
        j["entries"] = f->entries();
    } else {
        j["error"] = "runtime";
    }
    j["message"] = e.what();
    j["exit_status"] = exit_status_for(e);
    return j.dump();
}

int exit_status_for(const std::exception &e) {
    if (dynamic_cast<const ConfigError *>(&e)) {
        return kExitConfig;
    }
    if (dynamic_cast<const NumericError *>(&e)) {
        return kExitNumeric;
    }
    if (dynamic_cast<const FixtureError *>(&e)) {
        return kExitFixture;
    }
    return 1;
}

std::string experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::fc: return "fc";
        case ExperimentKind::fc2d: return "fc2d";
        case ExperimentKind::negativity: return "negativity";
        case ExperimentKind::spurious_ten: return "spurious-ten";
        case ExperimentKind::toric_boundary: return "toric-boundary";
        case ExperimentKind::mpdo: return "mpdo";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(const std::string &name) {
    for (auto k : {ExperimentKind::fc, ExperimentKind::fc2d, ExperimentKind::negativity, ExperimentKind::spurious_ten,
                   ExperimentKind::toric_boundary, ExperimentKind::mpdo}) {
        if (experiment_kind_name(k) == name) {
            return k;
        }
    }
    throw ConfigError("experiment", "unknown experiment kind '" + name + "'");
}

namespace {

// Grid keys used by each experiment kind.
const std::map<ExperimentKind, std::set<std::string>> &grid_keys() {
    static const std::map<ExperimentKind, std::set<std::string>> keys = {
        {ExperimentKind::fc, {"n", "p", "sep"}},
        {ExperimentKind::fc2d, {"n", "p", "w", "h", "mode", "height", "boundary"}},
        {ExperimentKind::negativity, {"n", "p", "noise", "exact"}},
        {ExperimentKind::spurious_ten, {"n", "p", "noise"}},
        {ExperimentKind::toric_boundary, {"n", "p_x", "p_z", "exact"}},
        {ExperimentKind::mpdo, {"p", "noise", "alpha"}},
    };
    return keys;
}

const std::set<std::string> &required_grid_keys(ExperimentKind kind) {
    static const std::map<ExperimentKind, std::set<std::string>> keys = {
        {ExperimentKind::fc, {"n", "p", "sep"}},
        {ExperimentKind::fc2d, {"n", "p", "w", "h"}},
        {ExperimentKind::negativity, {"n", "p", "noise"}},
        {ExperimentKind::spurious_ten, {"n", "p", "noise"}},
        {ExperimentKind::toric_boundary, {"n", "p_x", "p_z"}},
        {ExperimentKind::mpdo, {"p", "noise", "alpha"}},
    };
    return keys.at(kind);
}

void reject_unknown(const YAML::Node &map, const std::set<std::string> &allowed, const std::string &prefix) {
    for (const auto &kv : map) {
        auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            throw ConfigError(prefix + key, "unknown key");
        }
    }
}

template <typename T>
T scalar(const YAML::Node &node, const std::string &key) {
    if (!node.IsScalar()) {
        throw ConfigError(key, "expected a scalar");
    }
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        throw ConfigError(key, "cannot parse '" + node.Scalar() + "'");
    }
}

template <typename T>
std::vector<T> scalar_list(const YAML::Node &node, const std::string &key) {
    std::vector<T> out;
    if (node.IsScalar()) {
        out.push_back(scalar<T>(node, key));
    } else if (node.IsSequence()) {
        for (size_t k = 0; k < node.size(); k++) {
            out.push_back(scalar<T>(node[k], key + "[" + std::to_string(k) + "]"));
        }
    } else {
        throw ConfigError(key, "expected a scalar or a list");
    }
    if (out.empty()) {
        throw ConfigError(key, "list is empty");
    }
    return out;
}

// A list of rates, or {start, stop, num} for an evenly spaced grid.
std::vector<double> rate_list(const YAML::Node &node, const std::string &key) {
    if (!node.IsMap()) {
        return scalar_list<double>(node, key);
    }
    reject_unknown(node, {"start", "stop", "num"}, key + ".");
    for (const char *k : {"start", "stop", "num"}) {
        if (!node[k]) {
            throw ConfigError(key + "." + k, "missing key");
        }
    }
    double start = scalar<double>(node["start"], key + ".start");
    double stop = scalar<double>(node["stop"], key + ".stop");
    auto num = scalar<long long>(node["num"], key + ".num");
    if (num < 1) {
        throw ConfigError(key + ".num", "must be positive");
    }
    std::vector<double> out;
    for (long long k = 0; k < num; k++) {
        out.push_back(num == 1 ? start
                               : k == num - 1 ? stop
                                              : start + (stop - start) * static_cast<double>(k) /
                                                            static_cast<double>(num - 1));
    }
    return out;
}

void check_rates(const std::vector<double> &ps, const std::string &key) {
    for (size_t k = 0; k < ps.size(); k++) {
        if (!(ps[k] >= 0.0 && ps[k] <= 0.5)) {
            throw ConfigError(key + "[" + std::to_string(k) + "]", "rate must lie in [0, 1/2]");
        }
    }
}

template <typename T>
void check_each(const std::vector<T> &v, const std::string &key, const std::function<bool(T)> &ok,
                const std::string &what) {
    for (size_t k = 0; k < v.size(); k++) {
        if (!ok(v[k])) {
            throw ConfigError(key + "[" + std::to_string(k) + "]", what);
        }
    }
}

void emit_doubles(YAML::Emitter &out, const std::vector<double> &v) {
    out << YAML::Flow << YAML::BeginSeq;
    for (double x : v) {
        out << format_double(x);
    }
    out << YAML::EndSeq;
}

void emit_ints(YAML::Emitter &out, const std::vector<long long> &v) {
    out << YAML::Flow << YAML::BeginSeq;
    for (long long x : v) {
        out << x;
    }
    out << YAML::EndSeq;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_yaml(const std::string &text, const std::string &source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception &e) {
        throw ConfigError("", source + ": YAML syntax error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root.IsMap()) {
        throw ConfigError("", source + ": top level must be a mapping");
    }
    reject_unknown(root, {"experiment", "name", "grid", "mc", "output"}, "");
    if (!root["experiment"]) {
        throw ConfigError("experiment", "missing key");
    }
    ExperimentConfig c;
    c.kind = parse_experiment_kind(scalar<std::string>(root["experiment"], "experiment"));
    c.name = root["name"] ? scalar<std::string>(root["name"], "name") : experiment_kind_name(c.kind);

    YAML::Node grid = root["grid"];
    if (!grid) {
        throw ConfigError("grid", "missing key");
    }
    if (!grid.IsMap()) {
        throw ConfigError("grid", "expected a mapping");
    }
    reject_unknown(grid, grid_keys().at(c.kind), "grid.");
    for (const auto &k : required_grid_keys(c.kind)) {
        if (!grid[k]) {
            throw ConfigError("grid." + k, "missing key");
        }
    }
    if (grid["n"]) {
        c.n = scalar_list<long long>(grid["n"], "grid.n");
    }
    if (grid["p"]) {
        c.p = rate_list(grid["p"], "grid.p");
    }
    if (grid["sep"]) {
        if (grid["sep"].IsScalar() && grid["sep"].Scalar() == "N") {
            c.sep_follows_n = true;
        } else {
            c.sep = scalar_list<long long>(grid["sep"], "grid.sep");
        }
    }
    if (grid["noise"]) {
        c.noise = scalar_list<std::string>(grid["noise"], "grid.noise");
    }
    if (grid["exact"]) {
        c.exact = scalar<bool>(grid["exact"], "grid.exact");
    }
    if (grid["w"]) {
        c.w = scalar_list<long long>(grid["w"], "grid.w");
    }
    if (grid["h"]) {
        c.h = scalar_list<long long>(grid["h"], "grid.h");
    }
    if (grid["mode"]) {
        c.mode = scalar<std::string>(grid["mode"], "grid.mode");
    }
    if (grid["height"]) {
        c.height = scalar_list<long long>(grid["height"], "grid.height");
    }
    if (grid["boundary"]) {
        c.boundary = scalar<bool>(grid["boundary"], "grid.boundary");
    }
    if (grid["p_x"]) {
        c.p_x = rate_list(grid["p_x"], "grid.p_x");
    }
    if (grid["p_z"]) {
        c.p_z = rate_list(grid["p_z"], "grid.p_z");
    }
    if (grid["alpha"]) {
        c.alpha = scalar_list<long long>(grid["alpha"], "grid.alpha");
    }

    if (YAML::Node mc = root["mc"]) {
        if (!mc.IsMap()) {
            throw ConfigError("mc", "expected a mapping");
        }
        reject_unknown(mc, {"samples", "seed", "batches"}, "mc.");
        if (mc["samples"]) {
            c.mc.samples = scalar<uint64_t>(mc["samples"], "mc.samples");
        }
        if (mc["seed"]) {
            c.mc.seed = scalar<uint64_t>(mc["seed"], "mc.seed");
        }
        if (mc["batches"]) {
            c.mc.batches = scalar<uint64_t>(mc["batches"], "mc.batches");
        }
    }
    if (YAML::Node out = root["output"]) {
        if (!out.IsMap()) {
            throw ConfigError("output", "expected a mapping");
        }
        reject_unknown(out, {"dir", "stem", "format", "svg"}, "output.");
        if (out["dir"]) {
            c.output.dir = scalar<std::string>(out["dir"], "output.dir");
        }
        if (out["stem"]) {
            c.output.stem = scalar<std::string>(out["stem"], "output.stem");
        }
        if (out["format"]) {
            c.output.format = scalar<std::string>(out["format"], "output.format");
        }
        if (out["svg"]) {
            c.output.svg = scalar<bool>(out["svg"], "output.svg");
        }
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot read config file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_yaml(buf.str(), path);
}

std::string ExperimentConfig::to_yaml() const {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "experiment" << YAML::Value << experiment_kind_name(kind);
    out << YAML::Key << "name" << YAML::Value << name;
    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    const auto &keys = grid_keys().at(kind);
    auto has = [&](const char *k) { return keys.count(k) > 0; };
    if (has("n")) {
        out << YAML::Key << "n" << YAML::Value;
        emit_ints(out, n);
    }
    if (has("p")) {
        out << YAML::Key << "p" << YAML::Value;
        emit_doubles(out, p);
    }
    if (has("sep")) {
        out << YAML::Key << "sep" << YAML::Value;
        if (sep_follows_n) {
            out << "N";
        } else {
            emit_ints(out, sep);
        }
    }
    if (has("noise")) {
        out << YAML::Key << "noise" << YAML::Value << YAML::Flow << noise;
    }
    if (has("exact")) {
        out << YAML::Key << "exact" << YAML::Value << exact;
    }
    if (has("w")) {
        out << YAML::Key << "w" << YAML::Value;
        emit_ints(out, w);
        out << YAML::Key << "h" << YAML::Value;
        emit_ints(out, h);
        out << YAML::Key << "mode" << YAML::Value << mode;
        out << YAML::Key << "height" << YAML::Value;
        emit_ints(out, height);
        out << YAML::Key << "boundary" << YAML::Value << boundary;
    }
    if (has("p_x")) {
        out << YAML::Key << "p_x" << YAML::Value;
        emit_doubles(out, p_x);
        out << YAML::Key << "p_z" << YAML::Value;
        emit_doubles(out, p_z);
    }
    if (has("alpha")) {
        out << YAML::Key << "alpha" << YAML::Value;
        emit_ints(out, alpha);
    }
    out << YAML::EndMap;
    out << YAML::Key << "mc" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "samples" << YAML::Value << mc.samples;
    out << YAML::Key << "seed" << YAML::Value << mc.seed;
    out << YAML::Key << "batches" << YAML::Value << mc.batches;
    out << YAML::EndMap;
    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "dir" << YAML::Value << output.dir;
    out << YAML::Key << "stem" << YAML::Value << output.stem;
    out << YAML::Key << "format" << YAML::Value << output.format;
    out << YAML::Key << "svg" << YAML::Value << output.svg;
    out << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

void ExperimentConfig::validate() const {
    const auto &required = required_grid_keys(kind);
    auto need = [&](const std::string &key, bool present) {
        if (required.count(key) && !present) {
            throw ConfigError("grid." + key, "missing key");
        }
    };
    need("n", !n.empty());
    need("p", !p.empty());
    need("sep", !sep.empty() || sep_follows_n);
    need("noise", !noise.empty());
    need("w", !w.empty());
    need("h", !h.empty());
    need("p_x", !p_x.empty());
    need("p_z", !p_z.empty());
    need("alpha", !alpha.empty());
    check_rates(p, "grid.p");
    check_rates(p_x, "grid.p_x");
    check_rates(p_z, "grid.p_z");
    check_each<std::string>(noise, "grid.noise", [](std::string s) { return s == "X" || s == "Z"; },
                            "noise must be X or Z");
    auto even_ring = [](long long v) { return v >= 4 && v % 2 == 0; };
    switch (kind) {
        case ExperimentKind::fc:
            check_each<long long>(n, "grid.n", [](long long v) { return v >= 2; }, "N must be at least 2");
            check_each<long long>(sep, "grid.sep", [](long long v) { return v >= 2 && v % 2 == 0; },
                                  "sep must be even and at least 2");
            for (long long nv : n) {
                long long s_max = sep_follows_n ? nv : *std::max_element(sep.begin(), sep.end());
                if (sep_follows_n && nv % 2 != 0) {
                    throw ConfigError("grid.sep", "sep = N needs even N");
                }
                if (s_max > 2 * nv) {
                    throw ConfigError("grid.sep", "sep exceeds the ring length 2N = " + std::to_string(2 * nv));
                }
            }
            break;
        case ExperimentKind::fc2d:
            check_each<long long>(n, "grid.n", [](long long v) { return v >= 2 && v % 2 == 0; },
                                  "circumference must be even");
            if (mode != "factorized" && mode != "brute") {
                throw ConfigError("grid.mode", "mode must be factorized or brute");
            }
            if (mode == "brute" && height.empty()) {
                throw ConfigError("grid.height", "missing key (required by brute mode)");
            }
            for (long long nv : n) {
                check_each<long long>(w, "grid.w", [nv](long long v) { return v > 0 && v < nv; },
                                      "need 0 < w < circumference");
            }
            check_each<long long>(h, "grid.h", [](long long v) { return v > 0; }, "h must be positive");
            for (long long hv : height) {
                check_each<long long>(h, "grid.h", [hv](long long v) { return v < hv; },
                                      "rectangle must fit below the cylinder height");
                for (long long nv : n) {
                    if (static_cast<size_t>(nv * hv) > kMaxPlaquetteSpins) {
                        throw ConfigError("grid.height", "brute mode needs circumference * height <= " +
                                                              std::to_string(kMaxPlaquetteSpins));
                    }
                }
            }
            break;
        case ExperimentKind::negativity:
            check_each<long long>(n, "grid.n", even_ring, "two_n must be even and at least 4");
            if (exact) {
                check_each<long long>(n, "grid.n", [](long long v) { return v <= 20; },
                                      "exact enumeration needs two_n <= 20");
            }
            break;
        case ExperimentKind::spurious_ten:
            check_each<long long>(n, "grid.n", [](long long v) { return v >= 2; }, "N must be at least 2");
            break;
        case ExperimentKind::toric_boundary:
            check_each<long long>(n, "grid.n", even_ring, "two_n must be even and at least 4");
            if (exact) {
                check_each<long long>(n, "grid.n", [](long long v) { return v <= 20; },
                                      "exact enumeration needs two_n <= 20");
            }
            break;
        case ExperimentKind::mpdo:
            check_each<long long>(alpha, "grid.alpha", [](long long v) { return v == 2 || v == 3; },
                                  "alpha must be 2 or 3");
            break;
    }
    if (mc.batches < 16) {
        throw ConfigError("mc.batches", "at least 16 batches are needed for error bars");
    }
    if (mc.samples < mc.batches) {
        throw ConfigError("mc.samples", "need at least one sample per batch");
    }
    if (output.format != "csv" && output.format != "json") {
        throw ConfigError("output.format", "format must be csv or json");
    }
}

namespace {

NoiseKind noise_of(const std::string &s) {
    return s == "X" ? NoiseKind::X : NoiseKind::Z;
}

McConfig mc_config(const ExperimentConfig &c, unsigned workers) {
    McConfig m;
    m.n_samples = c.mc.samples;
    m.seed = c.mc.seed;
    m.n_batches = c.mc.batches;
    m.workers = workers;
    return m;
}

std::string point_label(const std::vector<Column> &params) {
    std::string s = "{";
    for (size_t k = 0; k < params.size(); k++) {
        s += (k ? ", " : "") + params[k].name + "=" + format_field(params[k].value);
    }
    return s + "}";
}

// Entropic columns in nats and in units of log 2.
void add_entropy(std::vector<Column> &cols, const std::string &name, const McEstimate &e) {
    cols.push_back({name, e.log_value});
    cols.push_back({name + "_log2", e.log_value / kLn2});
    cols.push_back({"std_err", e.std_err});
    cols.push_back({"std_err_log2", e.std_err / kLn2});
    cols.push_back({"n_samples", static_cast<long long>(e.n_samples)});
    cols.push_back({"exact", e.exact});
}

struct Point {
    std::vector<Column> params;
    std::function<std::vector<Column>(unsigned mc_workers)> eval;
};

void require_finite(const std::string &point, double x, const char *what) {
    if (!std::isfinite(x)) {
        throw NumericError(point, std::string(what) + " is not finite");
    }
}

void require_nonnegative_trace_norm(const std::string &point, const McEstimate &e) {
    require_finite(point, e.log_value, "log trace norm");
    if (e.log_value + 3.0 * e.std_err < -1e-9) {
        throw NumericError(point, "log trace norm is negative beyond 3 standard errors");
    }
}

std::vector<Point> expand(const ExperimentConfig &c) {
    std::vector<Point> pts;
    switch (c.kind) {
        case ExperimentKind::fc:
            for (long long nv : c.n) {
                std::vector<long long> seps = c.sep_follows_n ? std::vector<long long>{nv} : c.sep;
                for (long long s : seps) {
                    for (double p : c.p) {
                        std::vector<Column> params{{"N", nv}, {"p", p}, {"sep", s}};
                        pts.push_back({params, [=](unsigned) {
                                           auto r = fc_1d_exact(static_cast<size_t>(nv), p, static_cast<size_t>(s));
                                           return std::vector<Column>{{"value", r.value}, {"log_value", r.log_value}};
                                       }});
                    }
                }
            }
            break;
        case ExperimentKind::fc2d: {
            std::vector<long long> heights = c.mode == "brute" ? c.height : std::vector<long long>{0};
            for (long long nv : c.n) {
                for (long long hv : heights) {
                    for (long long wv : c.w) {
                        for (long long h : c.h) {
                            for (double p : c.p) {
                                std::vector<Column> params{{"width", nv}, {"w", wv},          {"h", h},
                                                           {"p", p},      {"mode", c.mode},  {"height", hv},
                                                           {"boundary", c.mode == "brute" && c.boundary}};
                                Fc2dMode mode;
                                mode.kind = c.mode == "brute" ? Fc2dMode::Kind::brute : Fc2dMode::Kind::factorized;
                                mode.height = static_cast<size_t>(hv);
                                mode.include_boundary = c.boundary;
                                pts.push_back({params, [=](unsigned) {
                                                   auto r = fc_2d(static_cast<size_t>(nv), static_cast<size_t>(wv),
                                                                  static_cast<size_t>(h), p, mode);
                                                   return std::vector<Column>{{"value", r.value},
                                                                              {"log_value", r.log_value}};
                                               }});
                            }
                        }
                    }
                }
            }
            break;
        }
        case ExperimentKind::negativity:
            for (const auto &noise : c.noise) {
                for (long long nv : c.n) {
                    for (double p : c.p) {
                        std::vector<Column> params{{"two_n", nv}, {"p", p}, {"noise", noise}};
                        std::string label = point_label(params);
                        pts.push_back({params, [=, &c](unsigned workers) {
                                           McEstimate e;
                                           if (c.exact) {
                                               e.log_value = trace_norm_exact_enum(static_cast<size_t>(nv), p,
                                                                                   noise_of(noise));
                                               e.exact = true;
                                           } else {
                                               e = trace_norm_mc(static_cast<size_t>(nv), p, noise_of(noise),
                                                                 mc_config(c, workers));
                                           }
                                           require_nonnegative_trace_norm(label, e);
                                           std::vector<Column> cols;
                                           add_entropy(cols, "log_value", e);
                                           return cols;
                                       }});
                    }
                }
            }
            break;
        case ExperimentKind::spurious_ten:
            for (const auto &noise : c.noise) {
                for (long long nv : c.n) {
                    for (double p : c.p) {
                        std::vector<Column> params{{"N", nv}, {"p", p}, {"noise", noise}};
                        std::string label = point_label(params);
                        pts.push_back({params, [=, &c](unsigned workers) {
                                           McEstimate e = spurious_ten(static_cast<size_t>(nv), p, noise_of(noise),
                                                                       mc_config(c, workers));
                                           require_finite(label, e.log_value, "spurious TEN");
                                           std::vector<Column> cols;
                                           add_entropy(cols, "value", e);
                                           return cols;
                                       }});
                    }
                }
            }
            break;
        case ExperimentKind::toric_boundary:
            for (long long nv : c.n) {
                for (double px : c.p_x) {
                    for (double pz : c.p_z) {
                        std::vector<Column> params{{"two_n", nv}, {"p_x", px}, {"p_z", pz}};
                        std::string label = point_label(params);
                        pts.push_back({params, [=, &c](unsigned workers) {
                                           BoundaryRates rates{px, pz};
                                           McEstimate e;
                                           if (c.exact) {
                                               e.log_value =
                                                   toric_boundary_negativity_exact(static_cast<size_t>(nv), rates);
                                               e.exact = true;
                                           } else {
                                               e = toric_boundary_negativity(static_cast<size_t>(nv), rates,
                                                                             mc_config(c, workers));
                                           }
                                           require_nonnegative_trace_norm(label, e);
                                           std::vector<Column> cols;
                                           add_entropy(cols, "log_value", e);
                                           return cols;
                                       }});
                    }
                }
            }
            break;
        case ExperimentKind::mpdo:
            for (const auto &noise : c.noise) {
                for (long long a : c.alpha) {
                    for (double p : c.p) {
                        std::vector<Column> params{{"p", p}, {"noise", noise}, {"alpha", a}};
                        pts.push_back({params, [=](unsigned) {
                                           MpdoTensor m = cluster_mpdo(p, noise_of(noise));
                                           int alpha = static_cast<int>(a);
                                           MomentSpectra spectra = moment_spectra(m, alpha);
                                           SpuriousTenReport ten = spurious_ten_renyi(m, alpha);
                                           SymmetryReport sym = symmetry_algebra_check(m, alpha);
                                           std::vector<Column> cols{
                                               {"strongly_injective", ten.strongly_injective},
                                               {"c1_prime", ten.c1_prime},
                                               {"plain_top_degeneracy",
                                                static_cast<long long>(spectra.plain.top_degeneracy)},
                                               {"tilde_top_degeneracy",
                                                static_cast<long long>(spectra.tilde.top_degeneracy)},
                                               {"tilde_gap", spectra.tilde.gap},
                                           };
                                           if (ten.value) {
                                               cols.push_back({"value", *ten.value});
                                               cols.push_back({"value_log2", *ten.value / kLn2});
                                           } else {
                                               cols.push_back({"value", std::monostate{}});
                                               cols.push_back({"value_log2", std::monostate{}});
                                           }
                                           cols.push_back({"strong_symmetry", sym.strong});
                                           if (sym.strong) {
                                               cols.push_back({"omega", format_double(sym.omega.real()) + (sym.omega.imag() < 0 ? "-" : "+") +
                                                                            format_double(std::abs(sym.omega.imag())) + "i"});
                                           } else {
                                               cols.push_back({"omega", std::monostate{}});
                                           }
                                           return cols;
                                       }});
                    }
                }
            }
            break;
    }
    return pts;
}

}  // namespace

std::vector<ResultRecord> run_experiment(const ExperimentConfig &config) {
    config.validate();
    std::vector<Point> pts = expand(config);
    std::vector<std::optional<ResultRecord>> results(pts.size());
    std::vector<std::exception_ptr> errors(pts.size());
    unsigned pool = std::min<unsigned>(resolve_workers(0), static_cast<unsigned>(std::max<size_t>(pts.size(), 1)));
    // With several points in flight, each Monte Carlo run stays on one thread.
    unsigned mc_workers = pool > 1 ? 1 : 0;
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (size_t k = next++; k < pts.size(); k = next++) {
            try {
                std::vector<Column> cols = pts[k].params;
                for (auto &col : pts[k].eval(mc_workers)) {
                    cols.push_back(std::move(col));
                }
                results[k].emplace(experiment_kind_name(config.kind), std::move(cols), config.mc.seed);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    if (pool <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < pool; w++) {
            threads.emplace_back(work);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    std::vector<ResultRecord> out;
    for (size_t k = 0; k < pts.size(); k++) {
        if (errors[k]) {
            std::string label = point_label(pts[k].params);
            try {
                std::rethrow_exception(errors[k]);
            } catch (const NumericError &) {
                throw;
            } catch (const std::exception &e) {
                throw NumericError(label, e.what());
            }
        }
        out.push_back(std::move(*results[k]));
    }
    return out;
}

PlotSpec plot_spec(const ExperimentConfig &config) {
    PlotSpec s;
    s.title = config.name;
    switch (config.kind) {
        case ExperimentKind::fc:
            s.x = "p";
            s.y = "value";
            s.series = {"N", "sep"};
            s.y_label = "fidelity correlator";
            if (config.sep_follows_n) {
                s.series = {"N"};
                s.y_label = "fidelity correlator at sep = N";
            }
            break;
        case ExperimentKind::fc2d:
            s.x = "p";
            s.y = "value";
            s.series = {"width", "w", "h", "height"};
            s.y_label = "2D fidelity correlator";
            break;
        case ExperimentKind::negativity:
            s.x = "p";
            s.y = "log_value_log2";
            s.series = {"two_n", "noise"};
            s.y_label = "negativity / log 2";
            break;
        case ExperimentKind::spurious_ten:
            s.x = "p";
            s.y = "value_log2";
            s.series = {"noise", "N"};
            s.y_label = "spurious TEN / log 2";
            break;
        case ExperimentKind::toric_boundary:
            s.x = "p_z";
            s.y = "log_value_log2";
            s.series = {"two_n", "p_x"};
            s.y_label = "boundary negativity / log 2";
            break;
        case ExperimentKind::mpdo:
            s.x = "p";
            s.y = "value_log2";
            s.series = {"noise", "alpha"};
            s.y_label = "Renyi spurious TEN / log 2";
            break;
    }
    return s;
}

namespace {

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

}  // namespace

RunOutputs run_and_write(const ExperimentConfig &config) {
    RunOutputs out;
    out.records = run_experiment(config);
    std::filesystem::path dir(config.output.dir.empty() ? "." : config.output.dir);
    std::filesystem::create_directories(dir);
    std::string stem = config.output.stem.empty() ? config.name : config.output.stem;
    std::string csv = write_csv(to_table(out.records));
    if (config.output.format == "json") {
        out.data_path = (dir / (stem + ".json")).string();
        write_file(out.data_path, write_json(out.records));
    } else {
        out.data_path = (dir / (stem + ".csv")).string();
        write_file(out.data_path, csv);
    }
    if (config.output.svg) {
        out.svg_path = (dir / (stem + ".svg")).string();
        write_file(out.svg_path, render_svg(parse_csv(csv), plot_spec(config)));
    }
    return out;
}

namespace {

nlohmann::ordered_json spectrum_json(const SpectrumSummary &s) {
    nlohmann::ordered_json j;
    j["top_re"] = s.top.real();
    j["top_im"] = s.top.imag();
    j["top_degeneracy"] = s.top_degeneracy;
    j["peripheral_count"] = s.peripheral_count;
    j["top_imag_residue"] = s.top_imag_residue;
    j["gap"] = s.gap;
    return j;
}

}  // namespace

std::string mpdo_report_json(double p, const std::string &noise, int alpha) {
    if (noise != "X" && noise != "Z") {
        throw ConfigError("noise", "noise must be X or Z");
    }
    MpdoTensor m = cluster_mpdo(p, noise_of(noise));
    nlohmann::ordered_json j;
    j["p"] = p;
    j["noise"] = noise;
    j["alpha"] = alpha;
    j["bond_dim"] = m.bond_dim();
    j["phys_dim"] = m.phys_dim();

    InjectivityReport inj = injectivity_report(m, alpha);
    nlohmann::ordered_json ij;
    ij["c1"] = inj.c1;
    ij["c2"] = inj.c2;
    ij["c1_prime"] = inj.c1_prime;
    ij["c2_top_degeneracy"] = inj.c2_top_degeneracy;
    ij["c2_gap"] = inj.c2_gap;
    ij["entries"] = nlohmann::ordered_json::array();
    for (const auto &e : inj.entries) {
        nlohmann::ordered_json ej;
        ej["alpha"] = e.alpha;
        ej["virtual_dim"] = e.virtual_dim;
        ej["blocked_cells"] = e.blocked_cells;
        ej["map_rank"] = e.map_rank;
        ej["primitive"] = e.primitive;
        ej["fixed_point_min_singular"] = std::isfinite(e.fixed_point_min_singular) ? e.fixed_point_min_singular : 0.0;
        ej["top_degeneracy"] = e.top_degeneracy;
        ej["gap"] = e.gap;
        ej["passes"] = e.passes;
        ij["entries"].push_back(ej);
    }
    j["injectivity"] = ij;

    MomentSpectra spectra = moment_spectra(m, alpha);
    j["spectra"]["plain"] = spectrum_json(spectra.plain);
    j["spectra"]["tilde"] = spectrum_json(spectra.tilde);

    SpuriousTenReport ten = spurious_ten_renyi(m, alpha);
    nlohmann::ordered_json tj;
    tj["strongly_injective"] = ten.strongly_injective;
    tj["c1_prime"] = ten.c1_prime;
    tj["degeneracy"] = ten.degeneracy;
    tj["gap"] = ten.gap;
    tj["value"] = ten.value ? nlohmann::ordered_json(*ten.value) : nlohmann::ordered_json(nullptr);
    tj["value_log2"] = ten.value ? nlohmann::ordered_json(*ten.value / kLn2) : nlohmann::ordered_json(nullptr);
    tj["reason"] = ten.reason;
    j["spurious_ten"] = tj;

    SymmetryReport sym = symmetry_algebra_check(m, alpha);
    nlohmann::ordered_json sj;
    sj["strong"] = sym.strong;
    sj["actions"] = nlohmann::ordered_json::array();
    for (const auto &a : sym.actions) {
        nlohmann::ordered_json aj;
        aj["label"] = a.label;
        aj["phase_re"] = a.phase.real();
        aj["phase_im"] = a.phase.imag();
        aj["residual"] = a.residual;
        sj["actions"].push_back(aj);
    }
    if (sym.strong) {
        sj["omega_re"] = sym.omega.real();
        sj["omega_im"] = sym.omega.imag();
        sj["omega_residual"] = sym.omega_residual;
        sj["ket_bra_commutator"] = sym.ket_bra_commutator;
        sj["layer_invariance_residual"] = sym.layer_invariance_residual;
        sj["algebra_rank"] = sym.algebra_rank;
        sj["minimal_representation"] = sym.minimal_representation;
    }
    sj["reason"] = sym.reason;
    j["symmetry"] = sj;
    j["version"] = version_string();
    return j.dump(2) + "\n";
}

ExperimentConfig figure_config(const ReproduceOptions &options) {
    ExperimentConfig c;
    c.output.dir = options.out_dir;
    c.output.svg = true;
    for (int k = 0; k <= 20; k++) {
        c.p.push_back(k == 20 ? 0.5 : 0.025 * k);
    }
    if (options.figure == Figure::fig2) {
        c.kind = ExperimentKind::fc;
        c.name = "fig2";
        for (int k = 1; k <= 10; k++) {
            c.n.push_back(1LL << k);
        }
        c.sep_follows_n = true;
    } else {
        c.kind = ExperimentKind::spurious_ten;
        c.noise = {"X", "Z"};
        c.p.clear();
        for (int k = 0; k <= 10; k++) {
            c.p.push_back(k == 10 ? 0.5 : 0.05 * k);
        }
        if (options.scale == Scale::desk) {
            c.name = "fig3_desk";
            c.n = {8, 16, 32};
            c.mc.samples = 1000000;
        } else {
            if (!options.yes_long) {
                throw ConfigError("scale", "full-scale fig3 draws 8e8 samples per point; pass --yes-long to run it");
            }
            c.name = "fig3_full";
            c.n = {16, 32, 64, 128, 256, 512, 1024};
            c.mc.samples = 800000000;
        }
    }
    if (options.seed) {
        c.mc.seed = *options.seed;
    }
    if (options.samples) {
        c.mc.samples = *options.samples;
    }
    if (options.batches) {
        c.mc.batches = *options.batches;
    }
    if (options.figure == Figure::fig3 && options.scale == Scale::desk && c.mc.samples > 10000000) {
        throw ConfigError("samples", "desk scale is capped at 1e7 samples per point; use --scale full");
    }
    c.output.stem = c.name;
    c.validate();
    return c;
}

RunOutputs reproduce(const ReproduceOptions &options) {
    return run_and_write(figure_config(options));
}

}  // namespace mixsspt
