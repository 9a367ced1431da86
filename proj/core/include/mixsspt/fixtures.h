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

#ifndef MIXSSPT_FIXTURES_H
#define MIXSSPT_FIXTURES_H

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mixsspt {

/// Significant digits kept for frozen oracle values.
inline constexpr int kFixtureDigits = 12;

/// A frozen oracle value: {params, quantity, value, digits, generator_version}.
/// Freshly generated records keep full precision; the JSON form keeps
/// `digits` significant digits.
struct FixtureRecord {
    std::string quantity;
    std::vector<std::pair<std::string, std::string>> params;
    double value = 0.0;
    int digits = kFixtureDigits;
    std::string generator_version;

    /// "quantity(k1=v1,k2=v2)"; unique within a corpus.
    std::string key() const;
    /// Parameter value by name; throws std::out_of_range.
    const std::string &param(const std::string &name) const;
};

/// Corrupted corpus or values that diverge from the oracle.
class FixtureError : public std::runtime_error {
   public:
    FixtureError(std::vector<std::string> entries, const std::string &message);
    const std::vector<std::string> &entries() const {
        return entries_;
    }

   private:
    std::vector<std::string> entries_;
};

/// Recomputes every oracle value of the corpus: dense density-matrix
/// fidelities, negativities and Renyi moments, plus exhaustive Boltzmann
/// sums.
std::vector<FixtureRecord> generate_fixtures();

std::string fixtures_to_json(const std::vector<FixtureRecord> &records);
/// Throws FixtureError naming the first malformed entry.
std::vector<FixtureRecord> fixtures_from_json(const std::string &text);
std::vector<FixtureRecord> load_fixtures(const std::string &path);

struct FixtureDiff {
    std::string key;
    double committed = 0.0;
    double fresh = 0.0;
    double abs_diff = 0.0;
    /// "round-off limited" when the difference is within the storage
    /// precision, otherwise "divergent", "missing" or "unexpected".
    std::string status;
};

struct FixtureReport {
    size_t compared = 0;
    double tolerance = 0.0;
    /// Entries over tolerance.
    std::vector<FixtureDiff> diffs;
    bool written = false;

    bool ok() const {
        return diffs.empty();
    }
    std::string summary() const;
};

/// |fresh - committed| <= tol * max(1, |committed|) passes.
FixtureReport compare_fixtures(const std::vector<FixtureRecord> &committed, const std::vector<FixtureRecord> &fresh,
                               double tol);

/// Regenerates the corpus and diffs it against the file at `path`. The file
/// is written when it does not exist, or when `update` is set and the diff
/// is clean.
FixtureReport freeze_fixtures(const std::string &path, double tol = 1e-10, bool update = false);

}  // namespace mixsspt

#endif
