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

#include <bit>
#include <cmath>
#include <complex>
#include <random>

#include "gtest/gtest.h"
#include "mixsspt/log_value.h"
#include "mixsspt/statmech.h"

using namespace mixsspt;

namespace {

const double kPi = 3.14159265358979323846;
const double kBetas[] = {0.0, 0.1, 0.3465735902799727, 0.8, 1.5};

BitVector bits_of(uint64_t mask, size_t n) {
    BitVector b(n);
    for (size_t k = 0; k < n; k++) {
        b.set(k, (mask >> k) & 1);
    }
    return b;
}

// Complex Boltzmann weight of one configuration of the non-Hermitian chain;
// bit k of s set means s_k = -1.
std::complex<double> chain_weight(NoiseKind kind, double beta, size_t n, uint64_t s) {
    auto spin = [&](size_t k) { return ((s >> (k % n)) & 1) ? -1.0 : 1.0; };
    std::complex<double> h = 0.0;
    for (size_t i = 0; i < n; i++) {
        h += std::complex<double>(0, kPi / 4) * spin(i) * spin(i + 1);
        if (kind == NoiseKind::Z) {
            h += std::complex<double>(beta, -kPi / 2) * spin(i);
        } else {
            h += beta * spin(i) * spin(i + 2) + std::complex<double>(0, -kPi / 2) * spin(i);
        }
    }
    return std::exp(h);
}

std::complex<double> brute_correlator(NoiseKind kind, double beta, size_t n, uint64_t subset) {
    std::complex<double> num = 0.0, den = 0.0;
    for (uint64_t s = 0; s < (uint64_t{1} << n); s++) {
        std::complex<double> w = chain_weight(kind, beta, n, s);
        den += w;
        num += (std::popcount(s & subset) % 2 ? -1.0 : 1.0) * w;
    }
    return num / den;
}

double ising_enum(size_t n, double beta, uint64_t subset) {
    double num = 0.0, den = 0.0;
    for (uint64_t s = 0; s < (uint64_t{1} << n); s++) {
        double e = 0.0;
        for (size_t i = 0; i < n; i++) {
            e += (((s >> i) ^ (s >> ((i + 1) % n))) & 1) ? -1.0 : 1.0;
        }
        double w = std::exp(beta * e);
        den += w;
        num += (std::popcount(s & subset) % 2 ? -1.0 : 1.0) * w;
    }
    return num / den;
}

}  // namespace

TEST(beta_from_p, values) {
    EXPECT_EQ(beta_from_p(0.0), 0.0);
    EXPECT_TRUE(std::isinf(beta_from_p(0.5)));
    EXPECT_NEAR(beta_from_p(0.25), 0.5 * std::log(2.0), 1e-15);
    EXPECT_THROW(beta_from_p(0.51), std::invalid_argument);
    EXPECT_THROW(beta_from_p(-1e-3), std::invalid_argument);
}

TEST(ising_correlator_closed, limits_and_symmetry) {
    BitVector none(6);
    EXPECT_EQ(ising_correlator_closed(IsingParams::from_p(0.2, 6), ErrorPattern(none)), 1.0);
    for (uint64_t e = 0; e < 64; e++) {
        ErrorPattern pat(bits_of(e, 6));
        EXPECT_EQ(ising_correlator_closed(IsingParams::from_p(0.5, 6), pat), 1.0);
        ErrorPattern comp(bits_of(~e & 63, 6));
        double prev = -1.0;
        for (double beta : kBetas) {
            IsingParams params{beta, 6};
            double c = ising_correlator_closed(params, pat);
            EXPECT_GE(c, 0.0);
            EXPECT_LE(c, 1.0);
            EXPECT_GE(c, prev - 1e-15);
            EXPECT_NEAR(c, ising_correlator_closed(params, comp), 1e-15);
            prev = c;
        }
    }
}

TEST(ising_correlator_closed, matches_boltzmann_sum) {
    double beta = 0.5 * std::log(2.0);
    for (uint64_t subset = 0; subset < 64; subset++) {
        if (std::popcount(subset) % 2) {
            continue;
        }
        ErrorPattern e = ErrorPattern::from_spin_subset(bits_of(subset, 6));
        EXPECT_NEAR(ising_correlator_closed({beta, 6}, e), ising_enum(6, beta, subset), 1e-13) << subset;
    }
}

TEST(transfer, ising_trace_matches_closed_partition) {
    for (double beta : kBetas) {
        for (size_t n : {3, 6, 11}) {
            LogScaled tr = TransferOperator::ising(beta).trace_power(n);
            EXPECT_NEAR(tr.log_abs(), ising_partition_closed(beta, n).log_abs(), 1e-10);
        }
    }
}

TEST(transfer, nonhermitian_traces_match_closed_forms) {
    for (double beta : kBetas) {
        for (size_t n = 2; n <= 6; n++) {
            std::complex<double> tx = TransferOperator::nonhermitian_x(beta).trace_power(2 * n).to_complex();
            std::complex<double> zx = partition_x_closed(beta, n).to_complex();
            EXPECT_LT(std::abs(tx - zx), 1e-10 * std::abs(zx)) << beta << " " << n;
            std::complex<double> tz = TransferOperator::nonhermitian_z(beta).trace_power(2 * n).to_complex();
            std::complex<double> zz = partition_z_closed(beta, n).to_complex();
            EXPECT_LT(std::abs(tz - zz), 1e-10 * std::abs(zz)) << beta << " " << n;
        }
    }
}

TEST(nonhermitian_correlator, empty_subset_is_one) {
    for (auto model : {ChainModel::x_noise(8, 0.2), ChainModel::z_noise(8, 0.2), ChainModel::mixed(8, 0.1, 0.3)}) {
        EXPECT_NEAR(nonhermitian_correlator(model, BitVector(8)), 1.0, 1e-12);
    }
}

TEST(nonhermitian_correlator, matches_complex_boltzmann_sum) {
    std::mt19937_64 rng(17);
    for (NoiseKind kind : {NoiseKind::X, NoiseKind::Z}) {
        for (double p : {0.1, 0.3}) {
            ChainModel model = kind == NoiseKind::X ? ChainModel::x_noise(8, p) : ChainModel::z_noise(8, p);
            for (int trial = 0; trial < 20; trial++) {
                uint64_t subset = rng() & 0xff;
                std::complex<double> brute = brute_correlator(kind, beta_from_p(p), 8, subset);
                EXPECT_LT(std::abs(brute.imag()), 1e-10);
                EXPECT_NEAR(nonhermitian_correlator(model, bits_of(subset, 8)), brute.real(), 1e-10)
                    << noise_kind_name(kind) << " p=" << p << " S=" << subset;
            }
        }
    }
}

TEST(nonhermitian_correlator, mixed_reduces_to_x) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; trial++) {
        BitVector s = bits_of(rng() & 0x3ff, 10);
        EXPECT_EQ(nonhermitian_correlator(ChainModel::mixed(10, 0.2, 0.2), s),
                  nonhermitian_correlator(ChainModel::x_noise(10, 0.2), s));
    }
}

TEST(normalization_constant, closed_forms_match_subset_sums) {
    for (double beta : kBetas) {
        double p = 0.5 * (1.0 - std::exp(-2.0 * beta));
        for (size_t n = 2; n <= 6; n++) {
            ChainModel x = ChainModel::x_noise(2 * n, p);
            ChainModel z = ChainModel::z_noise(2 * n, p);
            double cx = log_c_x_closed(beta, n), cz = log_c_z_closed(beta, n);
            EXPECT_NEAR(normalization_constant(x), cx, 1e-10 * std::max(1.0, std::abs(cx)));
            EXPECT_NEAR(normalization_constant(z), cz, 1e-10 * std::max(1.0, std::abs(cz)));
            EXPECT_NEAR(normalization_constant_enum(x), cx, 1e-10 * std::max(1.0, std::abs(cx)));
            EXPECT_NEAR(normalization_constant_enum(z), cz, 1e-10 * std::max(1.0, std::abs(cz)));
        }
    }
}

TEST(normalization_constant, monotone_in_beta) {
    double prev = -1e300;
    for (int k = 0; k <= 40; k++) {
        double c = log_c_x_closed(0.05 * k, 4);
        EXPECT_GT(c, prev);
        prev = c;
    }
}

TEST(log_value, helpers) {
    EXPECT_NEAR(log_binomial(1024, 512), std::lgamma(1025.0) - 2 * std::lgamma(513.0), 1e-9);
    double terms[] = {-1000.0, -1000.0};
    EXPECT_NEAR(log_sum_exp(terms), -1000.0 + std::log(2.0), 1e-12);
    LogScaled a = LogScaled::from_log(800.0, 1);
    LogScaled b = a * a;
    EXPECT_NEAR(b.log_abs(), 1600.0, 1e-9);
    EXPECT_NEAR(std::abs(b.arg()), kPi, 1e-12);
    NeumaierSum s;
    s.add(1.0);
    s.add(1e-17);
    s.add(-1.0);
    EXPECT_EQ(s.value(), 1e-17);
}
