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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "mixsspt/fidelity.h"
#include "mixsspt/fixtures.h"
#include "mixsspt/negativity.h"
#include "mixsspt/statmech.h"

using namespace mixsspt;

namespace {

const std::string kCorpus = std::string(MIXSSPT_FIXTURE_DIR) + "/dense_oracle.json";

const std::vector<FixtureRecord> &corpus() {
    static const std::vector<FixtureRecord> records = load_fixtures(kCorpus);
    return records;
}

BitVector bits_from_list(size_t n, const std::string &list) {
    BitVector b(n);
    size_t start = 0;
    while (start < list.size()) {
        size_t end = list.find(',', start);
        if (end == std::string::npos) {
            end = list.size();
        }
        b.set(std::stoul(list.substr(start, end - start)), true);
        start = end + 1;
    }
    return b;
}

}  // namespace

TEST(fixture_corpus, loads_with_provenance) {
    ASSERT_FALSE(corpus().empty());
    for (const auto &r : corpus()) {
        EXPECT_EQ(r.digits, kFixtureDigits);
        EXPECT_FALSE(r.generator_version.empty());
    }
}

TEST(fixture_corpus, closed_forms_match_frozen_dense_values) {
    size_t checked = 0;
    for (const auto &r : corpus()) {
        double value;
        if (r.quantity == "fidelity_correlator_dense") {
            size_t two_n = std::stoul(r.param("two_n"));
            value = fc_1d_exact(two_n / 2, std::stod(r.param("p")), std::stoul(r.param("sep"))).value;
        } else if (r.quantity == "negativity_dense") {
            value = trace_norm_exact_enum(std::stoul(r.param("two_n")), std::stod(r.param("p")),
                                          parse_noise_kind(r.param("noise")));
        } else if (r.quantity == "negativity_mixed_rates_dense") {
            value = toric_boundary_negativity_exact(8, {std::stod(r.param("p_x")), std::stod(r.param("p_z"))});
        } else if (r.quantity == "ising_ring_correlator_enum") {
            size_t n = std::stoul(r.param("n"));
            BitVector s = bits_from_list(n, r.param("subset"));
            value = ising_correlator_closed({std::stod(r.param("beta")), n}, ErrorPattern::from_spin_subset(s));
        } else {
            continue;
        }
        // Frozen values carry 12 significant digits.
        EXPECT_NEAR(value, r.value, 1e-10) << r.key();
        checked++;
    }
    EXPECT_GT(checked, 60u);
}

TEST(freeze_fixtures, unchanged_tree_has_no_diffs) {
    FixtureReport report = compare_fixtures(corpus(), generate_fixtures(), 1e-10);
    EXPECT_TRUE(report.ok()) << report.summary();
    EXPECT_EQ(report.compared, corpus().size());
}

TEST(freeze_fixtures, tight_tolerance_reports_round_off) {
    FixtureReport report = compare_fixtures(corpus(), generate_fixtures(), 1e-14);
    ASSERT_FALSE(report.ok());
    for (const auto &d : report.diffs) {
        EXPECT_EQ(d.status, "round-off limited") << d.key;
    }
}

TEST(freeze_fixtures, divergent_and_missing_entries) {
    std::vector<FixtureRecord> committed = corpus();
    committed[0].value += 1e-3;
    committed.pop_back();
    FixtureReport report = compare_fixtures(committed, generate_fixtures(), 1e-10);
    ASSERT_EQ(report.diffs.size(), 2u);
    EXPECT_EQ(report.diffs[0].status, "divergent");
    EXPECT_EQ(report.diffs[0].key, committed[0].key());
    EXPECT_EQ(report.diffs[1].status, "missing");
}

TEST(freeze_fixtures, corrupted_file_names_the_entry) {
    auto path = std::filesystem::temp_directory_path() / "mixsspt_corrupt_fixture.json";
    std::string text = fixtures_to_json(corpus());
    size_t at = text.find("\"value\":", text.find("\"negativity_dense\""));
    ASSERT_NE(at, std::string::npos);
    size_t end = text.find(',', at);
    text.replace(at, end - at, "\"value\": \"garbled\"");
    std::ofstream(path) << text;
    try {
        freeze_fixtures(path.string());
        FAIL() << "corrupted corpus accepted";
    } catch (const FixtureError &e) {
        ASSERT_EQ(e.entries().size(), 1u);
        EXPECT_EQ(e.entries()[0].rfind("negativity_dense(", 0), 0u) << e.entries()[0];
    }
    std::filesystem::remove(path);
}
