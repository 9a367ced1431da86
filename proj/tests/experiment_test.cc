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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "mixsspt/experiment.h"
#include "mixsspt/negativity.h"

using namespace mixsspt;

namespace {

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string config_error_key(const std::string &yaml) {
    try {
        ExperimentConfig::from_yaml(yaml);
    } catch (const ConfigError &e) {
        return e.key();
    }
    return "<no error>";
}

}  // namespace

TEST(config, round_trips_every_example) {
    for (const auto &entry : std::filesystem::directory_iterator(MIXSSPT_CONFIG_DIR)) {
        if (entry.path().extension() != ".yaml") {
            continue;
        }
        ExperimentConfig c = ExperimentConfig::from_file(entry.path().string());
        ExperimentConfig back = ExperimentConfig::from_yaml(c.to_yaml());
        EXPECT_EQ(back, c) << entry.path() << "\n" << c.to_yaml();
        EXPECT_EQ(back.to_yaml(), c.to_yaml());
    }
}

TEST(config, linspace_grid) {
    ExperimentConfig c = ExperimentConfig::from_yaml(
        "experiment: fc\n"
        "grid:\n"
        "  n: [4]\n"
        "  p: {start: 0, stop: 0.5, num: 5}\n"
        "  sep: N\n");
    ASSERT_EQ(c.p.size(), 5u);
    EXPECT_EQ(c.p[2], 0.25);
    EXPECT_EQ(c.p[4], 0.5);
    EXPECT_TRUE(c.sep_follows_n);
}

TEST(config, errors_name_the_key) {
    EXPECT_EQ(config_error_key("experiment: fc\ngrid:\n  n: [4]\n  sep: [2]\n"), "grid.p");
    EXPECT_EQ(config_error_key("experiment: fc\ngrid:\n  n: [4]\n  p: [0.1]\n  sep: [2]\n  colour: red\n"),
              "grid.colour");
    EXPECT_EQ(config_error_key("experiment: fc\ngrid:\n  n: [4]\n  p: [0.7]\n  sep: [2]\n"), "grid.p[0]");
    EXPECT_EQ(config_error_key("experiment: fc\ngrid:\n  n: [4]\n  p: [0.1]\n  sep: [3]\n"), "grid.sep[0]");
    EXPECT_EQ(config_error_key("experiment: nope\ngrid: {}\n"), "experiment");
    EXPECT_EQ(config_error_key("experiment: negativity\ngrid:\n  n: [8]\n  p: [0.1]\n  noise: [X]\n"
                               "mc:\n  batches: 4\n"),
              "mc.batches");
    EXPECT_EQ(config_error_key("experiment: fc\nextra: 1\ngrid:\n  n: [4]\n  p: [0.1]\n  sep: [2]\n"), "extra");
}

TEST(run_experiment, fc_plateau_row) {
    ExperimentConfig c = ExperimentConfig::from_yaml("experiment: fc\ngrid:\n  n: [4]\n  p: [0.5]\n  sep: [4]\n");
    auto recs = run_experiment(c);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].number("value"), 1.0);
    EXPECT_EQ(recs[0].number("log_value"), 0.0);
    Table t = to_table(recs);
    std::vector<std::string> header{"N", "p", "sep", "value", "log_value", "seed", "version"};
    EXPECT_EQ(t.header, header);
}

TEST(run_experiment, negativity_columns_in_both_units) {
    ExperimentConfig c = ExperimentConfig::from_yaml(
        "experiment: negativity\ngrid:\n  n: [8]\n  p: [0]\n  noise: [X]\n  exact: true\n");
    auto recs = run_experiment(c);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_NEAR(recs[0].number("log_value"), 3 * std::log(2.0), 1e-12);
    EXPECT_NEAR(recs[0].number("log_value_log2"), 3.0, 1e-12);
}

TEST(run_experiment, output_independent_of_worker_count) {
    ExperimentConfig c = ExperimentConfig::from_yaml(
        "experiment: negativity\ngrid:\n  n: [8, 12]\n  p: [0.1, 0.3]\n  noise: [X, Z]\n"
        "mc:\n  samples: 4096\n  seed: 3\n  batches: 16\n");
    std::string reference;
    for (const char *workers : {"1", "3"}) {
        ::setenv(kWorkersEnv, workers, 1);
        std::string csv = write_csv(to_table(run_experiment(c)));
        if (reference.empty()) {
            reference = csv;
        } else {
            EXPECT_EQ(csv, reference);
        }
    }
    ::unsetenv(kWorkersEnv);
}

TEST(run_and_write, csv_and_svg_are_reproducible) {
    auto dir = std::filesystem::temp_directory_path() / "mixsspt_experiment_test";
    std::filesystem::remove_all(dir);
    ExperimentConfig c = ExperimentConfig::from_yaml(
        "experiment: fc\nname: sweep\ngrid:\n  n: [2, 4, 8]\n  p: {start: 0, stop: 0.5, num: 11}\n  sep: N\n");
    c.output.dir = dir.string();
    c.output.svg = true;
    RunOutputs out = run_and_write(c);
    std::string csv = read_file(out.data_path);
    std::string svg = read_file(out.svg_path);
    EXPECT_EQ(render_svg(parse_csv(csv), plot_spec(c)), svg);
    RunOutputs again = run_and_write(c);
    EXPECT_EQ(read_file(again.data_path), csv);
    EXPECT_EQ(read_file(again.svg_path), svg);
    std::filesystem::remove_all(dir);
}

TEST(error_records, machine_readable) {
    ConfigError ce("grid.p", "missing key");
    EXPECT_EQ(exit_status_for(ce), kExitConfig);
    EXPECT_NE(error_record_json(ce).find("\"key\":\"grid.p\""), std::string::npos);
    NumericError ne("{N=4, p=0.1}", "value is not finite");
    EXPECT_EQ(exit_status_for(ne), kExitNumeric);
    EXPECT_NE(error_record_json(ne).find("\"point\":\"{N=4, p=0.1}\""), std::string::npos);
}

TEST(reproduce, figure_recipes) {
    ReproduceOptions fig2;
    ExperimentConfig c2 = figure_config(fig2);
    EXPECT_EQ(c2.kind, ExperimentKind::fc);
    EXPECT_EQ(c2.n.size(), 10u);
    EXPECT_EQ(c2.n.back(), 1024);
    EXPECT_EQ(c2.p.size(), 21u);
    EXPECT_TRUE(c2.sep_follows_n);

    ReproduceOptions full;
    full.figure = Figure::fig3;
    full.scale = Scale::full;
    try {
        figure_config(full);
        FAIL() << "full scale ran without acknowledgment";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key(), "scale");
    }
    full.yes_long = true;
    EXPECT_EQ(figure_config(full).mc.samples, 800000000u);

    ReproduceOptions desk;
    desk.figure = Figure::fig3;
    desk.samples = 20000000;
    EXPECT_THROW(figure_config(desk), ConfigError);
    desk.samples.reset();
    ExperimentConfig c3 = figure_config(desk);
    EXPECT_LE(*std::max_element(c3.n.begin(), c3.n.end()), 32);
}

TEST(reproduce, fig2_curves_pass_through_plateau) {
    ReproduceOptions o;
    auto recs = run_experiment(figure_config(o));
    size_t plateau = 0;
    for (const auto &r : recs) {
        if (r.number("p") == 0.5) {
            EXPECT_EQ(r.number("value"), 1.0);
            plateau++;
        }
    }
    EXPECT_EQ(plateau, 10u);
}
