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

// mixsspt: command line front end for the decohered cluster-state library.
//
//   mixsspt fc --n 4 --p 0.5 --sep 4
//   mixsspt negativity --two-n 8 --p 0 --noise X --exact
//   mixsspt run configs/fig2.yaml
//   mixsspt reproduce fig3 --scale desk --out results/

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "mixsspt/experiment.h"
#include "mixsspt/fixtures.h"
#include "mixsspt/negativity.h"

namespace {

using mixsspt::ExperimentConfig;
using mixsspt::ExperimentKind;

struct GlobalFlags {
    std::optional<uint64_t> seed;
    std::optional<uint64_t> samples;
    std::optional<uint64_t> batches;
    std::string out;
    std::string format = "csv";
    std::string svg;
};

void write_text(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

void apply_mc(ExperimentConfig &c, const GlobalFlags &g) {
    if (g.seed) {
        c.mc.seed = *g.seed;
    }
    if (g.samples) {
        c.mc.samples = *g.samples;
    }
    if (g.batches) {
        c.mc.batches = *g.batches;
    }
}

// Runs a single-shot subcommand: data to --out (or stdout), SVG to --svg.
int run_single(ExperimentConfig c, const GlobalFlags &g) {
    apply_mc(c, g);
    c.name = mixsspt::experiment_kind_name(c.kind);
    c.output.format = g.format;
    c.validate();
    auto records = mixsspt::run_experiment(c);
    std::string csv = mixsspt::write_csv(mixsspt::to_table(records));
    write_text(g.out, g.format == "json" ? mixsspt::write_json(records) : csv);
    if (!g.svg.empty()) {
        write_text(g.svg, mixsspt::render_svg(mixsspt::parse_csv(csv), mixsspt::plot_spec(c)));
    }
    return mixsspt::kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fidelity correlators, negativity and MPDO checks for decohered cluster states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mixsspt::version_string());

    GlobalFlags g;
    app.add_option("--seed", g.seed, "Monte Carlo seed");
    app.add_option("--samples", g.samples, "Monte Carlo samples per estimate");
    app.add_option("--batches", g.batches, "batches for batch-means error bars (>= 16)");
    app.add_option("--out", g.out, "output file (single runs; default stdout) or directory (run, reproduce)");
    app.add_option("--format", g.format, "data format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--svg", g.svg, "also write an SVG line plot to this path (single runs)");
    app.footer(std::string("Environment: ") + mixsspt::kWorkersEnv +
               " overrides the worker count.\nExit status: 0 ok, 2 invalid configuration, 3 numerical failure, "
               "4 fixture mismatch.");

    ExperimentConfig fc;
    fc.kind = ExperimentKind::fc;
    bool sep_n = false;
    auto *fc_cmd = app.add_subcommand("fc", "1D fidelity correlator of Z_x Z_y under X noise (exact)");
    fc_cmd->add_option("--n", fc.n, "sites per sublattice N (ring of 2N qubits)")->required()->delimiter(',');
    fc_cmd->add_option("--p", fc.p, "error rates in [0, 1/2]")->required()->delimiter(',');
    fc_cmd->add_option("--sep", fc.sep, "separation |x - y| in qubits: even, 2 <= sep <= 2N")->delimiter(',');
    fc_cmd->add_flag("--sep-n", sep_n, "use sep = N for every N (largest same-sublattice distance)");

    ExperimentConfig fc2d;
    fc2d.kind = ExperimentKind::fc2d;
    bool no_boundary = false;
    auto *fc2d_cmd = app.add_subcommand("fc2d", "2D fidelity correlator of a w x h rectangle on a cylinder");
    // --h would collide with -h, so this subcommand only takes --help.
    fc2d_cmd->set_help_flag("--help", "Print this help message and exit");
    fc2d_cmd->add_option("--width", fc2d.n, "cylinder circumference (even)")->required()->delimiter(',');
    fc2d_cmd->add_option("--w", fc2d.w, "rectangle width")->required()->delimiter(',');
    fc2d_cmd->add_option("--h", fc2d.h, "rectangle height in plaquette rows")->required()->delimiter(',');
    fc2d_cmd->add_option("--p", fc2d.p, "error rates")->required()->delimiter(',');
    fc2d_cmd->add_option("--mode", fc2d.mode, "factorized or brute")->check(CLI::IsMember({"factorized", "brute"}));
    fc2d_cmd->add_option("--height", fc2d.height, "spin rows of the brute-force model")->delimiter(',');
    fc2d_cmd->add_flag("--no-boundary", no_boundary, "drop the boundary Ising terms (brute mode)");

    ExperimentConfig neg;
    neg.kind = ExperimentKind::negativity;
    neg.noise = {"X"};
    auto *neg_cmd = app.add_subcommand("negativity", "log trace norm of the partial transpose on sublattice A");
    neg_cmd->add_option("--two-n", neg.n, "ring length 2N in qubits")->required()->delimiter(',');
    neg_cmd->add_option("--p", neg.p, "error rates")->required()->delimiter(',');
    neg_cmd->add_option("--noise", neg.noise, "X or Z")->delimiter(',');
    neg_cmd->add_flag("--exact", neg.exact, "exact subset enumeration (2N <= 20) instead of Monte Carlo");

    ExperimentConfig ten;
    ten.kind = ExperimentKind::spurious_ten;
    ten.noise = {"X"};
    auto *ten_cmd = app.add_subcommand("spurious-ten", "E(4N qubits) - 2 E(2N qubits) by Monte Carlo");
    ten_cmd->add_option("--n", ten.n, "N: compares rings of 2N and 4N qubits")->required()->delimiter(',');
    ten_cmd->add_option("--p", ten.p, "error rates")->required()->delimiter(',');
    ten_cmd->add_option("--noise", ten.noise, "X or Z")->delimiter(',');

    ExperimentConfig toric;
    toric.kind = ExperimentKind::toric_boundary;
    auto *toric_cmd =
        app.add_subcommand("toric-boundary", "toric-code boundary negativity with rates p_x (A) and p_z (B)");
    toric_cmd->add_option("--two-n", toric.n, "boundary length 2N")->required()->delimiter(',');
    toric_cmd->add_option("--p-x", toric.p_x, "rates on sublattice A")->required()->delimiter(',');
    toric_cmd->add_option("--p-z", toric.p_z, "rates on sublattice B")->required()->delimiter(',');
    toric_cmd->add_flag("--exact", toric.exact, "exact enumeration instead of Monte Carlo");

    ExperimentConfig mp;
    mp.kind = ExperimentKind::mpdo;
    mp.noise = {"X"};
    mp.alpha = {2};
    auto *mpdo_cmd = app.add_subcommand(
        "mpdo", "MPDO checks: injectivity, moment spectra, Renyi spurious TEN, symmetry algebra "
                "(--format json gives the full report)");
    mpdo_cmd->add_option("--p", mp.p, "error rates")->required()->delimiter(',');
    mpdo_cmd->add_option("--noise", mp.noise, "X or Z")->delimiter(',');
    mpdo_cmd->add_option("--alpha", mp.alpha, "Renyi index alpha (2 or 3)")->delimiter(',');

    std::string config_path;
    auto *run_cmd = app.add_subcommand("run", "run a YAML experiment config");
    run_cmd->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);

    std::string figure, scale = "desk";
    bool yes_long = false;
    auto *rep_cmd = app.add_subcommand("reproduce", "regenerate a figure's data grid and SVG");
    rep_cmd->add_option("figure", figure, "fig2 or fig3")->required()->check(CLI::IsMember({"fig2", "fig3"}));
    rep_cmd->add_option("--scale", scale, "desk or full")->check(CLI::IsMember({"desk", "full"}));
    rep_cmd->add_flag("--yes-long", yes_long, "acknowledge the full-scale sample budget");

    std::string fixture_path = "tests/fixtures/dense_oracle.json";
    double tolerance = 1e-10;
    bool update = false;
    auto *fix_cmd = app.add_subcommand("freeze-fixtures", "regenerate dense-oracle fixtures and diff them");
    fix_cmd->add_option("path", fixture_path, "fixture corpus (JSON)");
    fix_cmd->add_option("--tolerance", tolerance, "allowed |diff| relative to max(1, |value|)");
    fix_cmd->add_flag("--update", update, "rewrite the corpus when the diff is clean");

    for (auto *cmd : app.get_subcommands({})) {
        cmd->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return mixsspt::kExitConfig;
    }

    try {
        if (fc_cmd->parsed()) {
            fc.sep_follows_n = sep_n;
            if (!sep_n && fc.sep.empty()) {
                throw mixsspt::ConfigError("sep", "missing: give --sep or --sep-n");
            }
            return run_single(fc, g);
        }
        if (fc2d_cmd->parsed()) {
            fc2d.boundary = !no_boundary;
            return run_single(fc2d, g);
        }
        if (neg_cmd->parsed()) {
            return run_single(neg, g);
        }
        if (ten_cmd->parsed()) {
            return run_single(ten, g);
        }
        if (toric_cmd->parsed()) {
            return run_single(toric, g);
        }
        if (mpdo_cmd->parsed()) {
            if (g.format != "json") {
                return run_single(mp, g);
            }
            mp.validate();
            std::string text = "[\n";
            bool first = true;
            for (const auto &noise : mp.noise) {
                for (long long a : mp.alpha) {
                    for (double p : mp.p) {
                        text += (first ? "" : ",\n") + mixsspt::mpdo_report_json(p, noise, static_cast<int>(a));
                        first = false;
                    }
                }
            }
            write_text(g.out, text + "]\n");
            return mixsspt::kExitOk;
        }
        if (run_cmd->parsed()) {
            ExperimentConfig c = ExperimentConfig::from_file(config_path);
            apply_mc(c, g);
            if (!g.out.empty()) {
                c.output.dir = g.out;
            }
            auto out = mixsspt::run_and_write(c);
            std::cerr << "wrote " << out.data_path << (out.svg_path.empty() ? "" : " and " + out.svg_path) << "\n";
            return mixsspt::kExitOk;
        }
        if (rep_cmd->parsed()) {
            mixsspt::ReproduceOptions opt;
            opt.figure = figure == "fig2" ? mixsspt::Figure::fig2 : mixsspt::Figure::fig3;
            opt.scale = scale == "desk" ? mixsspt::Scale::desk : mixsspt::Scale::full;
            opt.yes_long = yes_long;
            opt.out_dir = g.out.empty() ? "." : g.out;
            opt.seed = g.seed;
            opt.samples = g.samples;
            opt.batches = g.batches;
            auto out = mixsspt::reproduce(opt);
            std::cerr << "wrote " << out.data_path << " and " << out.svg_path << "\n";
            return mixsspt::kExitOk;
        }
        if (fix_cmd->parsed()) {
            auto report = mixsspt::freeze_fixtures(fixture_path, tolerance, update);
            std::cout << report.summary();
            if (!report.ok()) {
                std::vector<std::string> keys;
                for (const auto &d : report.diffs) {
                    keys.push_back(d.key);
                }
                throw mixsspt::FixtureError(keys, "fixture values differ from the oracle beyond tolerance");
            }
            return mixsspt::kExitOk;
        }
    } catch (const std::exception &e) {
        std::cerr << mixsspt::error_record_json(e) << "\n";
        return mixsspt::exit_status_for(e);
    }
    return mixsspt::kExitOk;
}
