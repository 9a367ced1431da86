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

#include "mixsspt/fixtures.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "mixsspt/cluster.h"
#include "mixsspt/dense.h"
#include "mixsspt/fidelity.h"
#include "mixsspt/report.h"
#include "mixsspt/statmech.h"

namespace mixsspt {

FixtureError::FixtureError(std::vector<std::string> entries, const std::string &message)
    : std::runtime_error(message), entries_(std::move(entries)) {}

std::string FixtureRecord::key() const {
    std::string s = quantity + "(";
    for (size_t k = 0; k < params.size(); k++) {
        s += (k ? "," : "") + params[k].first + "=" + params[k].second;
    }
    return s + ")";
}

const std::string &FixtureRecord::param(const std::string &name) const {
    for (const auto &[k, v] : params) {
        if (k == name) {
            return v;
        }
    }
    throw std::out_of_range("fixture " + key() + " has no parameter " + name);
}

namespace {

const double kGrid[] = {0.0, 0.1, 0.25, 0.4, 0.5};

double round_digits(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::stod(buf);
}

using Params = std::vector<std::pair<std::string, std::string>>;

struct Corpus {
    std::vector<FixtureRecord> records;
    void add(std::string quantity, Params params, double value) {
        records.push_back({std::move(quantity), std::move(params), value,
                           kFixtureDigits, version_string()});
    }
};

DenseOperator decohere(const DenseOperator &rho0, size_t two_n, const std::vector<double> &rates, char pauli) {
    std::vector<std::pair<PauliOperator, double>> channels;
    for (size_t q = 0; q < two_n; q++) {
        channels.push_back({PauliOperator::single(two_n, q, pauli), rates[q]});
    }
    return apply_pauli_channels(rho0, channels);
}

// <prod_{i in S} s_i> on a periodic Ising ring by summing all 2^n
// configurations.
double ising_ring_enum(size_t n, double beta, uint64_t subset) {
    double num = 0.0, den = 0.0;
    for (uint64_t s = 0; s < (uint64_t{1} << n); s++) {
        double energy = 0.0;
        for (size_t i = 0; i < n; i++) {
            bool a = (s >> i) & 1;
            bool b = (s >> ((i + 1) % n)) & 1;
            energy += a == b ? 1.0 : -1.0;
        }
        double w = std::exp(beta * energy);
        int sign = __builtin_popcountll(s & subset) % 2 ? -1 : 1;
        num += sign * w;
        den += w;
    }
    return num / den;
}

}  // namespace

std::vector<FixtureRecord> generate_fixtures() {
    Corpus c;
    auto fmt = [](double x) { return format_double(x); };
    for (size_t two_n : {4, 6, 8, 10}) {
        DenseOperator rho0 = DenseOperator::pure(densify(build_cluster_1d(two_n)));
        Region a = sublattice_a(two_n);
        for (double p : kGrid) {
            std::vector<double> rates(two_n, p);
            DenseOperator rx = decohere(rho0, two_n, rates, 'X');
            DenseOperator rz = decohere(rho0, two_n, rates, 'Z');
            if (two_n <= 8) {
                for (size_t sep : {2, 4}) {
                    PauliOperator op = sep == two_n ? PauliOperator(two_n) : ChargedOperatorPair::z_pair(two_n, 0, sep).op;
                    c.add("fidelity_correlator_dense",
                          {{"two_n", std::to_string(two_n)}, {"p", fmt(p)}, {"sep", std::to_string(sep)}},
                          fidelity_correlator_dense(rx, op));
                }
            }
            c.add("negativity_dense", {{"two_n", std::to_string(two_n)}, {"p", fmt(p)}, {"noise", "X"}},
                  negativity_dense(rx, a));
            c.add("negativity_dense", {{"two_n", std::to_string(two_n)}, {"p", fmt(p)}, {"noise", "Z"}},
                  negativity_dense(rz, a));
            if (two_n == 8) {
                RenyiMoments m = renyi_moments(rx, a, 2);
                Params base{{"two_n", "8"}, {"p", fmt(p)}, {"noise", "X"}, {"alpha", "2"}};
                c.add("renyi_moment_transposed_dense", base, m.transposed);
                c.add("renyi_moment_plain_dense", base, m.plain);
                c.add("renyi_negativity_dense", base, m.negativity(2));
            }
        }
    }
    {
        // X noise with rate p_x on sublattice A and p_z on B.
        size_t two_n = 8;
        DenseOperator rho0 = DenseOperator::pure(densify(build_cluster_1d(two_n)));
        std::vector<double> rates(two_n);
        for (size_t q = 0; q < two_n; q++) {
            rates[q] = q % 2 == 0 ? 0.1 : 0.3;
        }
        c.add("negativity_mixed_rates_dense", {{"two_n", "8"}, {"p_x", "0.1"}, {"p_z", "0.3"}},
              negativity_dense(decohere(rho0, two_n, rates, 'X'), sublattice_a(two_n)));
    }
    {
        // Two-site Kraus operators X_j X_(j+2).
        size_t two_n = 8;
        DenseOperator rho0 = DenseOperator::pure(densify(build_cluster_1d(two_n)));
        std::vector<std::pair<PauliOperator, double>> channels;
        for (size_t j = 0; j < two_n; j++) {
            channels.push_back(
                {PauliOperator::single(two_n, j, 'X') * PauliOperator::single(two_n, (j + 2) % two_n, 'X'), 0.2});
        }
        DenseOperator rho = apply_pauli_channels(rho0, channels);
        c.add("fidelity_correlator_xx_noise_dense", {{"two_n", "8"}, {"p", "0.2"}, {"x", "1"}, {"y", "5"}},
              fidelity_correlator_dense(rho, ChargedOperatorPair::z_pair(two_n, 1, 5).op));
    }
    {
        double beta = 0.5 * std::log(2.0);
        c.add("ising_ring_correlator_enum", {{"n", "6"}, {"beta", fmt(beta)}, {"subset", "0,2"}},
              ising_ring_enum(6, beta, 0b101));
        c.add("ising_ring_correlator_enum", {{"n", "6"}, {"beta", fmt(beta)}, {"subset", "1,4"}},
              ising_ring_enum(6, beta, 0b10010));
    }
    return c.records;
}

std::string fixtures_to_json(const std::vector<FixtureRecord> &records) {
    nlohmann::ordered_json root;
    root["generator"] = "mixsspt freeze-fixtures";
    root["generator_version"] = version_string();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : records) {
        nlohmann::ordered_json obj;
        obj["quantity"] = r.quantity;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto &[k, v] : r.params) {
            params[k] = v;
        }
        obj["params"] = params;
        obj["value"] = round_digits(r.value, r.digits);
        obj["digits"] = r.digits;
        obj["generator_version"] = r.generator_version;
        arr.push_back(obj);
    }
    root["records"] = arr;
    return root.dump(1) + "\n";
}

std::vector<FixtureRecord> fixtures_from_json(const std::string &text) {
    nlohmann::ordered_json root;
    try {
        root = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw FixtureError({"<file>"}, std::string("fixture file is not valid JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("records") || !root["records"].is_array()) {
        throw FixtureError({"<file>"}, "fixture file has no records array");
    }
    std::vector<FixtureRecord> out;
    size_t index = 0;
    for (const auto &obj : root["records"]) {
        std::string label = "records[" + std::to_string(index++) + "]";
        try {
            FixtureRecord r;
            r.quantity = obj.at("quantity").get<std::string>();
            label = r.quantity + " (" + label + ")";
            for (const auto &[k, v] : obj.at("params").items()) {
                r.params.emplace_back(k, v.get<std::string>());
            }
            label = r.key();
            const auto &value = obj.at("value");
            if (!value.is_number()) {
                throw std::invalid_argument("value is not a number");
            }
            r.value = value.get<double>();
            r.digits = obj.at("digits").get<int>();
            r.generator_version = obj.at("generator_version").get<std::string>();
            out.push_back(std::move(r));
        } catch (const std::exception &e) {
            throw FixtureError({label}, "malformed fixture entry " + label + ": " + e.what());
        }
    }
    return out;
}

std::vector<FixtureRecord> load_fixtures(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FixtureError({path}, "cannot read fixture file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return fixtures_from_json(buf.str());
}

std::string FixtureReport::summary() const {
    std::ostringstream os;
    os << "compared " << compared << " fixture values at tolerance " << tolerance << ": ";
    if (diffs.empty()) {
        os << "no differences";
    } else {
        os << diffs.size() << " over tolerance";
    }
    if (written) {
        os << " (corpus written)";
    }
    os << "\n";
    for (const auto &d : diffs) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "  %s: committed %.17g, fresh %.17g, |diff| %.3g [%s]\n", d.key.c_str(),
                      d.committed, d.fresh, d.abs_diff, d.status.c_str());
        os << buf;
    }
    return os.str();
}

FixtureReport compare_fixtures(const std::vector<FixtureRecord> &committed, const std::vector<FixtureRecord> &fresh,
                               double tol) {
    FixtureReport report;
    report.tolerance = tol;
    std::map<std::string, const FixtureRecord *> old;
    for (const auto &r : committed) {
        old[r.key()] = &r;
    }
    std::map<std::string, bool> seen;
    for (const auto &r : fresh) {
        std::string key = r.key();
        seen[key] = true;
        auto it = old.find(key);
        if (it == old.end()) {
            report.diffs.push_back({key, NAN, r.value, NAN, "missing"});
            continue;
        }
        report.compared++;
        double c = it->second->value;
        double diff = std::abs(r.value - c);
        double scale = std::max(1.0, std::abs(c));
        if (diff <= tol * scale) {
            continue;
        }
        // Half a unit in the last stored digit bounds the rounding error.
        double storage = 0.5 * std::pow(10.0, 1 - it->second->digits) * std::max(std::abs(c), 1e-300);
        bool roundoff = diff <= storage + 1e-14 * scale;
        report.diffs.push_back({key, c, r.value, diff, roundoff ? "round-off limited" : "divergent"});
    }
    for (const auto &r : committed) {
        if (!seen.count(r.key())) {
            report.diffs.push_back({r.key(), r.value, NAN, NAN, "unexpected"});
        }
    }
    return report;
}

FixtureReport freeze_fixtures(const std::string &path, double tol, bool update) {
    std::vector<FixtureRecord> fresh = generate_fixtures();
    FixtureReport report;
    report.tolerance = tol;
    bool exists = std::filesystem::exists(path);
    if (exists) {
        report = compare_fixtures(load_fixtures(path), fresh, tol);
    }
    if (!exists || (update && report.ok())) {
        auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty()) {
            std::filesystem::create_directories(parent);
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw FixtureError({path}, "cannot write fixture file " + path);
        }
        out << fixtures_to_json(fresh);
        report.written = true;
    }
    return report;
}

}  // namespace mixsspt
