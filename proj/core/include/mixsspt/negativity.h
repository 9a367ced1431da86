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

#ifndef MIXSSPT_NEGATIVITY_H
#define MIXSSPT_NEGATIVITY_H

#include <cstdint>
#include <optional>
#include <random>

#include "mixsspt/gf2.h"
#include "mixsspt/statmech.h"

namespace mixsspt {

/// Environment variable that overrides the worker count.
inline constexpr const char *kWorkersEnv = "MIXSSPT_WORKERS";

/// Smallest default proposal rate of the importance sampler.
inline constexpr double kProposalFloor = 0.45;

struct McConfig {
    uint64_t n_samples = 1000000;
    uint64_t seed = 1;
    uint64_t n_batches = 64;
    /// 0 picks the environment override or the hardware concurrency.
    unsigned workers = 0;
    /// Bernoulli rate used to draw error patterns. Defaults to
    /// max(p_i, kProposalFloor) on every site.
    std::optional<double> proposal_rate;

    void validate() const;
};

struct McEstimate {
    double log_value = 0.0;
    double std_err = 0.0;
    uint64_t n_samples = 0;
    uint64_t seed = 0;
    /// Set when the value came from an exact route and carries no error.
    bool exact = false;
};

/// Boundary decoherence rates: p_x on sublattice A qubits, p_z on B.
struct BoundaryRates {
    double p_x = 0.0;
    double p_z = 0.0;

    static BoundaryRates from_betas(double beta_x, double beta_z);
    void validate() const;
};

/// Resolved worker count for a config.
unsigned resolve_workers(unsigned requested);

/// Exact log trace norm: log[(1/C) sum_S |<s_S>|] over all 2^(2N) subsets.
double trace_norm_exact_enum(const ChainModel &model);
double trace_norm_exact_enum(size_t two_n, double p, NoiseKind kind);

struct SyndromeSample {
    BitVector subset;
    double log_pi = 0.0;
};

/// Draws independent Bernoulli errors with per-site `proposal` rates and
/// returns the stabilizer-sign subset with the log of its exact class
/// probability under those rates.
void sample_syndrome(const std::vector<double> &proposal, bool x_type, std::mt19937_64 &rng, SyndromeSample &out);
SyndromeSample sample_syndrome(size_t two_n, double p, NoiseKind kind, std::mt19937_64 &rng);

/// Class probability of a subset under per-site rates (log; -inf if not admissible).
double log_syndrome_probability(const std::vector<double> &rates, bool x_type, const BitVector &subset);

/// Importance-sampling estimate of the log trace norm of the partial transpose.
McEstimate trace_norm_mc(const ChainModel &model, const McConfig &cfg);
McEstimate trace_norm_mc(size_t two_n, double p, NoiseKind kind, const McConfig &cfg);

/// E(4N qubits) - 2 E(2N qubits). The longer chain uses seed + 1.
McEstimate spurious_ten(size_t n, double p, NoiseKind kind, const McConfig &cfg);

/// Exact stabilizer-route negativity at p = 0 or p = 1/2.
double negativity_stabilizer_endpoint(size_t two_n, double p, NoiseKind kind);

McEstimate toric_boundary_negativity(size_t two_n, const BoundaryRates &rates, const McConfig &cfg);
double toric_boundary_negativity_exact(size_t two_n, const BoundaryRates &rates);

}  // namespace mixsspt

#endif
