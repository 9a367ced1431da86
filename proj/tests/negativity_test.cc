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
#include <map>
#include <random>

#include "gtest/gtest.h"
#include "mixsspt/cluster.h"
#include "mixsspt/dense.h"
#include "mixsspt/negativity.h"

using namespace mixsspt;

namespace {

const double kLog2 = std::log(2.0);

McConfig small_config(uint64_t samples, uint64_t seed = 1) {
    McConfig c;
    c.n_samples = samples;
    c.seed = seed;
    c.workers = 1;
    return c;
}

uint64_t mask_of(const BitVector &b) {
    uint64_t m = 0;
    for (size_t k = 0; k < b.size(); k++) {
        m |= uint64_t{b.get(k)} << k;
    }
    return m;
}

}  // namespace

TEST(trace_norm_exact_enum, endpoints) {
    EXPECT_NEAR(trace_norm_exact_enum(8, 0.0, NoiseKind::X), 3 * kLog2, 1e-12);
    EXPECT_NEAR(trace_norm_exact_enum(8, 0.0, NoiseKind::Z), 3 * kLog2, 1e-12);
    EXPECT_EQ(trace_norm_exact_enum(8, 0.5, NoiseKind::X), 0.0);
    EXPECT_EQ(trace_norm_exact_enum(8, 0.5, NoiseKind::Z), 0.0);
    EXPECT_THROW(trace_norm_exact_enum(22, 0.1, NoiseKind::X), std::invalid_argument);
}

TEST(trace_norm_exact_enum, matches_dense_partial_transpose) {
    DenseOperator rho0 = DenseOperator::pure(densify(build_cluster_1d(6)));
    for (char pauli : {'X', 'Z'}) {
        for (double p : {0.05, 0.2, 0.35}) {
            std::vector<std::pair<PauliOperator, double>> ch;
            for (auto &k : onsite_kraus(6, pauli)) {
                ch.push_back({k, p});
            }
            double dense = negativity_dense(apply_pauli_channels(rho0, ch), sublattice_a(6));
            NoiseKind kind = pauli == 'X' ? NoiseKind::X : NoiseKind::Z;
            EXPECT_NEAR(trace_norm_exact_enum(6, p, kind), dense, 1e-10) << pauli << " p=" << p;
        }
    }
}

TEST(trace_norm_exact_enum, nonincreasing_in_p) {
    for (NoiseKind kind : {NoiseKind::X, NoiseKind::Z}) {
        double prev = 1e300;
        for (int k = 0; k <= 20; k++) {
            double v = trace_norm_exact_enum(10, 0.025 * k, kind);
            EXPECT_LE(v, prev + 1e-12) << noise_kind_name(kind) << " p=" << 0.025 * k;
            EXPECT_GE(v, -1e-12);
            prev = v;
        }
    }
}

TEST(sample_syndrome, endpoints) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; k++) {
        SyndromeSample s = sample_syndrome(8, 0.0, NoiseKind::X, rng);
        EXPECT_FALSE(s.subset.any());
        EXPECT_EQ(s.log_pi, 0.0);
    }
    // At p = 1/2 every admissible syndrome (even on each sublattice) is equally likely.
    std::vector<double> half(8, 0.5);
    BitVector s(8);
    s.set(0, true);
    s.set(2, true);
    EXPECT_NEAR(log_syndrome_probability(half, true, s), -6 * kLog2, 1e-12);
    s.set(1, true);
    EXPECT_TRUE(std::isinf(log_syndrome_probability(half, true, s)));
}

TEST(sample_syndrome, frequencies_match_class_probabilities) {
    const size_t two_n = 8;
    const double p = 0.3;
    const uint64_t draws = 1000000;
    std::vector<double> rates(two_n, p);
    std::mt19937_64 rng(2024);
    std::map<uint64_t, uint64_t> counts;
    SyndromeSample s;
    for (uint64_t k = 0; k < draws; k++) {
        sample_syndrome(rates, true, rng, s);
        counts[mask_of(s.subset)]++;
    }
    double total = 0.0;
    for (uint64_t m = 0; m < (1u << two_n); m++) {
        BitVector b(two_n);
        for (size_t k = 0; k < two_n; k++) {
            b.set(k, (m >> k) & 1);
        }
        double pi = std::exp(log_syndrome_probability(rates, true, b));
        total += pi;
        double expected = pi * draws;
        double sigma = std::sqrt(draws * pi * (1 - pi));
        EXPECT_LE(std::abs(static_cast<double>(counts[m]) - expected), 4 * sigma + 1e-9) << "S=" << m;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(trace_norm_mc, agrees_with_enumeration) {
    double exact = trace_norm_exact_enum(8, 0.1, NoiseKind::X);
    McEstimate est = trace_norm_mc(8, 0.1, NoiseKind::X, small_config(1000000));
    EXPECT_FALSE(est.exact);
    EXPECT_GT(est.std_err, 0.0);
    EXPECT_LE(std::abs(est.log_value - exact), 3 * est.std_err) << est.log_value << " +- " << est.std_err;
}

TEST(trace_norm_mc, pure_state_has_no_variance) {
    McEstimate est = trace_norm_mc(12, 0.0, NoiseKind::Z, small_config(1000));
    EXPECT_TRUE(est.exact);
    EXPECT_EQ(est.std_err, 0.0);
    EXPECT_NEAR(est.log_value, 5 * kLog2, 1e-12);
}

TEST(trace_norm_mc, large_chain_is_finite) {
    McEstimate est = trace_norm_mc(64, 0.45, NoiseKind::X, small_config(20000));
    EXPECT_TRUE(std::isfinite(est.log_value));
    EXPECT_TRUE(std::isfinite(est.std_err));
    EXPECT_GE(est.log_value + 3 * est.std_err, 0.0);
}

TEST(trace_norm_mc, deterministic_across_workers) {
    McConfig c = small_config(40000, 99);
    McEstimate base = trace_norm_mc(12, 0.2, NoiseKind::Z, c);
    for (unsigned w : {2u, 8u}) {
        c.workers = w;
        McEstimate other = trace_norm_mc(12, 0.2, NoiseKind::Z, c);
        EXPECT_EQ(other.log_value, base.log_value);
        EXPECT_EQ(other.std_err, base.std_err);
    }
}

TEST(mc_config, validation) {
    McConfig c = small_config(1000);
    c.n_batches = 8;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.n_batches = 64;
    c.n_samples = 10;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(spurious_ten, endpoints_are_exact) {
    for (NoiseKind kind : {NoiseKind::X, NoiseKind::Z}) {
        for (size_t n : {2, 4, 16}) {
            EXPECT_EQ(spurious_ten(n, 0.0, kind, small_config(1000)).log_value, kLog2);
            EXPECT_EQ(spurious_ten(n, 0.5, kind, small_config(1000)).log_value, 0.0);
        }
    }
}

TEST(toric_boundary, equal_rates_reduce_to_x_noise) {
    McConfig c = small_config(20000, 5);
    for (double p : {0.1, 0.3}) {
        McEstimate toric = toric_boundary_negativity(8, {p, p}, c);
        McEstimate chain = trace_norm_mc(8, p, NoiseKind::X, c);
        EXPECT_EQ(toric.log_value, chain.log_value);
        EXPECT_EQ(toric.std_err, chain.std_err);
        EXPECT_EQ(toric_boundary_negativity_exact(8, {p, p}), trace_norm_exact_enum(8, p, NoiseKind::X));
    }
    EXPECT_NEAR(toric_boundary_negativity_exact(8, {0.0, 0.0}), 3 * kLog2, 1e-12);
}

TEST(toric_boundary, rates_from_betas) {
    BoundaryRates r = BoundaryRates::from_betas(0.5 * std::log(2.0), 0.0);
    EXPECT_NEAR(r.p_x, 0.25, 1e-15);
    EXPECT_EQ(r.p_z, 0.0);
    EXPECT_THROW((BoundaryRates{0.6, 0.1}).validate(), std::invalid_argument);
}
