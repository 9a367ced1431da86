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

#ifndef MIXSSPT_EXPERIMENT_H
#define MIXSSPT_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixsspt/report.h"

namespace mixsspt {

/// Process exit statuses of the runner.
enum ExitStatus : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumeric = 3,
    kExitFixture = 4,
};

/// Invalid configuration; `key` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string key, const std::string &message);
    const std::string &key() const {
        return key_;
    }

   private:
    std::string key_;
};

/// Numerical failure at one parameter point.
class NumericError : public std::runtime_error {
   public:
    NumericError(std::string point, const std::string &message);
    const std::string &point() const {
        return point_;
    }

   private:
    std::string point_;
};

/// Machine-readable error record (one JSON object) for an exception.
std::string error_record_json(const std::exception &e);
/// Exit status matching an exception type.
int exit_status_for(const std::exception &e);

enum class ExperimentKind { fc, fc2d, negativity, spurious_ten, toric_boundary, mpdo };

/// CLI spelling: "fc", "fc2d", "negativity", "spurious-ten",
/// "toric-boundary", "mpdo".
std::string experiment_kind_name(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string &name);

struct McSettings {
    uint64_t samples = 1000000;
    uint64_t seed = 1;
    uint64_t batches = 64;

    bool operator==(const McSettings &) const = default;
};

struct OutputSpec {
    std::string dir = ".";
    /// File stem; defaults to the experiment name.
    std::string stem;
    std::string format = "csv";  // csv or json
    bool svg = false;

    bool operator==(const OutputSpec &) const = default;
};

/// One experiment over a parameter grid. Which grid fields apply depends on
/// the kind:
///
///   fc              n (sites per sublattice), p, sep (qubits) or sep_follows_n
///   fc2d            n (cylinder circumference), p, w, h, mode, height, boundary
///   negativity      n (two_n, qubits), p, noise, exact
///   spurious-ten    n (N; chains of 2N and 4N qubits), p, noise
///   toric-boundary  n (two_n), p_x, p_z, exact
///   mpdo            p, noise, alpha
///
/// The YAML form uses these names as keys, with `grid`, `mc` and `output`
/// sections. Keys a kind does not use are rejected.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::fc;
    std::string name;

    std::vector<long long> n;
    std::vector<double> p;
    std::vector<long long> sep;
    bool sep_follows_n = false;
    std::vector<std::string> noise;
    bool exact = false;
    std::vector<long long> w;
    std::vector<long long> h;
    std::string mode = "factorized";
    std::vector<long long> height;
    bool boundary = true;
    std::vector<double> p_x;
    std::vector<double> p_z;
    std::vector<long long> alpha;

    McSettings mc;
    OutputSpec output;

    bool operator==(const ExperimentConfig &) const = default;

    /// Parses YAML text; `source` names the document in error messages.
    static ExperimentConfig from_yaml(const std::string &text, const std::string &source = "<config>");
    static ExperimentConfig from_file(const std::string &path);
    std::string to_yaml() const;
    /// Checks ranges and required fields; throws ConfigError.
    void validate() const;
};

/// Evaluates every grid point. Points run on a worker pool; records come
/// back in grid order, independent of scheduling.
std::vector<ResultRecord> run_experiment(const ExperimentConfig &config);

/// Default plot for an experiment kind.
PlotSpec plot_spec(const ExperimentConfig &config);

struct RunOutputs {
    std::vector<ResultRecord> records;
    std::string data_path;
    std::string svg_path;  // empty unless requested
};

/// Runs the experiment and writes `<dir>/<stem>.csv` (or .json) and, when
/// requested, `<dir>/<stem>.svg` rendered from the CSV text.
RunOutputs run_and_write(const ExperimentConfig &config);

/// Detailed report of one MPDO instance: injectivity conditions, moment
/// spectra, the Renyi spurious TEN and the symmetry algebra, as JSON.
std::string mpdo_report_json(double p, const std::string &noise, int alpha);

enum class Figure { fig2, fig3 };
enum class Scale { desk, full };

struct ReproduceOptions {
    Figure figure = Figure::fig2;
    Scale scale = Scale::desk;
    bool yes_long = false;
    std::string out_dir = ".";
    std::optional<uint64_t> seed;
    std::optional<uint64_t> samples;
    std::optional<uint64_t> batches;
};

/// Config of a figure recipe. Full-scale fig3 throws ConfigError unless
/// yes_long is set.
ExperimentConfig figure_config(const ReproduceOptions &options);
RunOutputs reproduce(const ReproduceOptions &options);

}  // namespace mixsspt

#endif
