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

#include "gtest/gtest.h"
#include "mixsspt/cluster.h"
#include "mixsspt/dense.h"
#include "mixsspt/fidelity.h"

using namespace mixsspt;

namespace {

const double kGrid[] = {0.0, 0.1, 0.25, 0.4, 0.5};

std::vector<PauliOperator> xx_kraus(size_t two_n) {
    std::vector<PauliOperator> k;
    for (size_t j = 0; j < two_n; j++) {
        k.push_back(PauliOperator::single(two_n, j, 'X') * PauliOperator::single(two_n, (j + 2) % two_n, 'X'));
    }
    return k;
}

}  // namespace

TEST(fc_1d_exact, endpoints) {
    for (size_t n : {2, 4, 16, 1024}) {
        for (size_t sep = 2; sep <= 2 * n; sep += 2 * std::max<size_t>(1, n / 4)) {
            FidelityResult r = fc_1d_exact(n, 0.5, sep);
            EXPECT_EQ(r.value, 1.0);
            EXPECT_EQ(r.log_value, 0.0);
        }
        EXPECT_EQ(fc_1d_exact(n, 0.0, 2).value, 0.0);
    }
}

TEST(fc_1d_exact, matches_dense_fidelity) {
    DenseOperator rho0 = DenseOperator::pure(densify(build_cluster_1d(8)));
    std::vector<std::pair<PauliOperator, double>> ch;
    for (auto &k : onsite_kraus(8, 'X')) {
        ch.push_back({k, 0.25});
    }
    DenseOperator rho = apply_pauli_channels(rho0, ch);
    double dense = fidelity_correlator_dense(rho, ChargedOperatorPair::z_pair(8, 0, 4).op);
    EXPECT_NEAR(fc_1d_exact(4, 0.25, 4).value, dense, 1e-10);
}

TEST(fc_1d_exact, rejects_bad_separations) {
    EXPECT_THROW(fc_1d_exact(4, 0.1, 3), std::invalid_argument);
    EXPECT_THROW(fc_1d_exact(4, 0.1, 0), std::invalid_argument);
    EXPECT_THROW(fc_1d_exact(4, 0.1, 10), std::invalid_argument);
    EXPECT_THROW(fc_1d_exact(4, 0.6, 2), std::invalid_argument);
}

TEST(fc_1d_exact, bounded_and_monotone_on_sweep) {
    for (size_t n = 2; n <= 1024; n *= 2) {
        double prev = -1.0;
        for (int k = 0; k <= 20; k++) {
            double p = 0.025 * k;
            double v = fc_1d_exact(n, p, n).value;
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
            EXPECT_GE(v, prev - 1e-12) << "N=" << n << " p=" << p;
            prev = v;
        }
    }
}

TEST(fc_decay_length, closed_form) {
    EXPECT_NEAR(fc_decay_length(0.25), -1.0 / std::log(std::sqrt(3.0) / 2.0), 1e-12);
    EXPECT_NEAR(fc_decay_length(0.25), 6.952, 1e-3);
    EXPECT_GT(fc_decay_length(0.4999), 1e3);
    EXPECT_THROW(fc_decay_length(0.0), std::invalid_argument);
    EXPECT_THROW(fc_decay_length(0.5), std::invalid_argument);
}

TEST(fc_1d_general, onsite_x_reproduces_exact) {
    for (size_t n : {2, 3, 8, 21, 64}) {
        size_t two_n = 2 * n;
        NoiseSpec general = NoiseSpec::general(two_n, onsite_kraus(two_n, 'X'));
        for (double p : kGrid) {
            for (size_t sep : {size_t{2}, 2 * (n / 2)}) {
                auto charged = ChargedOperatorPair::z_pair(two_n, 0, sep);
                double expected = fc_1d_exact(n, p, sep).value;
                EXPECT_NEAR(fc_1d_general(p, general, charged).value, expected, 1e-12)
                    << "N=" << n << " p=" << p << " sep=" << sep;
            }
        }
    }
}

TEST(fc_1d_general, two_site_kraus) {
    NoiseSpec noise = NoiseSpec::general(8, xx_kraus(8));
    auto charged = ChargedOperatorPair::z_pair(8, 1, 5);
    EXPECT_EQ(fc_1d_general(0.5, noise, charged).value, 1.0);

    DenseOperator rho = DenseOperator::pure(densify(build_cluster_1d(8)));
    std::vector<std::pair<PauliOperator, double>> ch;
    for (auto &k : xx_kraus(8)) {
        ch.push_back({k, 0.2});
    }
    rho = apply_pauli_channels(rho, ch);
    double dense = fidelity_correlator_dense(rho, charged.op);
    EXPECT_NEAR(fc_1d_general(0.2, noise, charged).value, dense, 1e-10);
    EXPECT_NEAR(fc_1d_general_enum(0.2, noise, charged), dense, 1e-10);
}

TEST(fc_1d_general, infeasible_pair_is_reported) {
    NoiseSpec noise = NoiseSpec::general(8, xx_kraus(8));
    auto charged = ChargedOperatorPair::z_pair(8, 1, 3);
    EXPECT_FALSE(patch_decomposition(noise, charged).has_value());
    EXPECT_THROW(fc_1d_general(0.2, noise, charged), std::invalid_argument);
}

TEST(noise_spec, rejects_asymmetric_kraus) {
    EXPECT_THROW(NoiseSpec::general(8, onsite_kraus(8, 'Z')), std::invalid_argument);
    EXPECT_TRUE(NoiseSpec::onsite(8, 'X').symmetric());
    EXPECT_FALSE(NoiseSpec::onsite(8, 'Z').symmetric());
}

TEST(fc_2d, endpoints) {
    Fc2dMode fact;
    Fc2dMode brute{Fc2dMode::Kind::brute, 3, true};
    EXPECT_EQ(fc_2d(4, 2, 1, 0.5, fact).value, 1.0);
    EXPECT_EQ(fc_2d(4, 2, 1, 0.5, brute).value, 1.0);
    EXPECT_EQ(fc_2d(4, 2, 2, 0.0, fact).value, 0.0);
}

TEST(fc_2d, factorized_is_power_of_chain_value) {
    for (double p : {0.1, 0.25, 0.4}) {
        for (size_t h : {1, 2, 3}) {
            double row = fc_1d_exact(6, p, 4).log_value;
            double expected = 0.0;
            for (size_t k = 0; k < h; k++) {
                expected += row;
            }
            EXPECT_EQ(fc_2d(6, 2, h, p, {}).log_value, expected);
        }
    }
}

TEST(fc_2d, brute_without_boundary_matches_factorized) {
    double p = 0.5 * (1.0 - std::exp(-0.6));
    for (size_t height : {2, 3, 4, 5}) {
        for (size_t h = 1; h < height && h <= 2; h++) {
            Fc2dMode brute{Fc2dMode::Kind::brute, height, false};
            EXPECT_NEAR(fc_2d(4, 2, h, p, brute).value, fc_2d(4, 2, h, p, {}).value, 1e-12)
                << "height " << height << " h " << h;
        }
    }
}
