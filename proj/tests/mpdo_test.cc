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

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "mixsspt/cluster.h"
#include "mixsspt/dense.h"
#include "mixsspt/mpdo.h"

using namespace mixsspt;

namespace {

const double kLog2 = std::log(2.0);

DenseOperator dense_cluster(size_t two_n, double p, char pauli) {
    DenseOperator rho = DenseOperator::pure(densify(build_cluster_1d(two_n)));
    std::vector<std::pair<PauliOperator, double>> ch;
    for (auto &k : onsite_kraus(two_n, pauli)) {
        ch.push_back({k, p});
    }
    return apply_pauli_channels(rho, ch);
}

std::vector<double> sorted_moduli(const Eigen::VectorXcd &v, size_t count) {
    std::vector<double> out;
    for (Eigen::Index k = 0; k < v.size(); k++) {
        out.push_back(std::abs(v(k)));
    }
    std::sort(out.rbegin(), out.rend());
    out.resize(std::min(count, out.size()));
    return out;
}

}  // namespace

TEST(cluster_mpdo, densifies_to_dense_oracle) {
    EXPECT_LT((cluster_mpdo(0.0, NoiseKind::X).densify(4).entries() - dense_cluster(8, 0.0, 'X').entries()).norm(),
              1e-12);
    EXPECT_LT((cluster_mpdo(0.2, NoiseKind::X).densify(4).entries() - dense_cluster(8, 0.2, 'X').entries()).norm(),
              1e-10);
    EXPECT_LT((cluster_mpdo(0.3, NoiseKind::Z).densify(3).entries() - dense_cluster(6, 0.3, 'Z').entries()).norm(),
              1e-10);
}

TEST(cluster_mpdo, tensor_shape) {
    MpdoTensor m = cluster_mpdo(0.2, NoiseKind::X);
    EXPECT_EQ(m.phys_dim(), 4u);
    EXPECT_EQ(m.bond_dim(), 4u);
    EXPECT_EQ(m.entries().size(), 16u);
}

TEST(injectivity_report, interior_rates_pass) {
    InjectivityReport r = injectivity_report(cluster_mpdo(0.2, NoiseKind::X), 3);
    EXPECT_TRUE(r.c1);
    EXPECT_TRUE(r.c2);
    EXPECT_EQ(r.c2_top_degeneracy, 1u);
    EXPECT_GT(r.c2_gap, 1e-3);
    ASSERT_EQ(r.entries.size(), 3u);
}

TEST(injectivity_report, maximal_rate_loses_uniqueness) {
    InjectivityReport r = injectivity_report(cluster_mpdo(0.5, NoiseKind::X), 2);
    EXPECT_FALSE(r.c1);
    EXPECT_TRUE(r.c2);
    MomentSpectra s = moment_spectra(cluster_mpdo(0.5, NoiseKind::X), 2);
    EXPECT_GT(s.plain.top_degeneracy, 1u);
}

TEST(injectivity_report, pure_state_is_injective) {
    InjectivityReport r = injectivity_report(cluster_mpdo(0.0, NoiseKind::X), 1);
    EXPECT_TRUE(r.c1);
    EXPECT_TRUE(r.c2);
}

TEST(moment_spectra, plain_and_tilde_degeneracies) {
    for (int alpha : {2, 3}) {
        for (double p : {0.1, 0.2, 0.4}) {
            MomentSpectra s = moment_spectra(cluster_mpdo(p, NoiseKind::X), alpha);
            EXPECT_EQ(s.plain.top_degeneracy, 1u) << "alpha " << alpha << " p " << p;
            EXPECT_LT(s.plain.top_imag_residue, 1e-9);
            EXPECT_LT(std::abs(s.plain.top.imag()), 1e-9 * std::abs(s.plain.top));
            EXPECT_GT(s.plain.top.real(), 0.0);
            EXPECT_EQ(s.tilde.top_degeneracy, static_cast<size_t>(std::pow(4, alpha - 1)));
            EXPECT_LT(s.tilde.top_imag_residue, 1e-9);
        }
    }
}

TEST(moment_spectra, similar_to_purification_transfer) {
    for (double p : {0.1, 0.2, 0.4}) {
        MpdoTensor m = cluster_mpdo(p, NoiseKind::X);
        for (int alpha : {1, 2}) {
            auto a = sorted_moduli(moment_transfer(m, alpha, false).matrix.eigenvalues(), 24);
            auto b = sorted_moduli(purification_moment_transfer(m, alpha).eigenvalues(), 24);
            for (size_t k = 0; k < a.size(); k++) {
                EXPECT_NEAR(a[k], b[k], 1e-8) << "p " << p << " alpha " << alpha << " k " << k;
            }
        }
    }
}

TEST(moment_spectra, trace_power_matches_dense_moments) {
    // Tr[T_4^L] / Tr[T_2^L]^2 is free of the MPDO normalization.
    MpdoTensor m = cluster_mpdo(0.2, NoiseKind::X);
    DenseOperator rho = dense_cluster(8, 0.2, 'X');
    double purity = (rho.entries() * rho.entries()).trace().real();
    RenyiMoments dense = renyi_moments(rho, sublattice_a(8), 2);
    LogScaled t4 = moment_transfer(m, 2, false).matrix.trace_power(4);
    LogScaled t2 = moment_transfer(m, 1, false).matrix.trace_power(4);
    EXPECT_NEAR(std::exp(t4.log_abs() - 2.0 * t2.log_abs()), dense.plain / (purity * purity), 1e-8);
}

TEST(renyi_negativity_tm, matches_dense_moments) {
    for (double p : {0.0, 0.1, 0.2, 0.4}) {
        MpdoTensor m = cluster_mpdo(p, NoiseKind::X);
        double dense = renyi_moments(dense_cluster(8, p, 'X'), sublattice_a(8), 2).negativity(2);
        EXPECT_NEAR(renyi_negativity_tm(m, 2, 8), dense, 1e-8) << "p " << p;
    }
    EXPECT_NEAR(renyi_negativity_tm(cluster_mpdo(0.5, NoiseKind::X), 2, 8), 0.0, 1e-10);
}

TEST(spurious_ten_renyi, log_two_for_x_noise) {
    for (auto [alpha, p] : {std::pair{2, 0.2}, std::pair{3, 0.3}, std::pair{2, 0.0}}) {
        SpuriousTenReport r = spurious_ten_renyi(cluster_mpdo(p, NoiseKind::X), alpha);
        ASSERT_TRUE(r.value.has_value()) << r.reason;
        EXPECT_NEAR(*r.value, kLog2, 1e-12);
        EXPECT_EQ(r.degeneracy, static_cast<size_t>(std::pow(4, alpha - 1)));
    }
    SpuriousTenReport half = spurious_ten_renyi(cluster_mpdo(0.5, NoiseKind::X), 2);
    EXPECT_FALSE(half.strongly_injective);
    EXPECT_FALSE(half.value.has_value());
    EXPECT_FALSE(half.reason.empty());
}

TEST(symmetry_algebra, x_noise_fractionalizes_with_minus_one) {
    for (double p : {0.0, 0.25}) {
        SymmetryReport r = symmetry_algebra_check(cluster_mpdo(p, NoiseKind::X));
        ASSERT_TRUE(r.strong) << r.reason;
        EXPECT_LT(std::abs(r.omega + 1.0), 1e-9);
        EXPECT_LT(r.ket_bra_commutator, 1e-9);
        EXPECT_FALSE(r.actions.empty());
    }
}

TEST(symmetry_algebra, z_noise_has_no_strong_solution) {
    SymmetryReport r = symmetry_algebra_check(cluster_mpdo(0.25, NoiseKind::Z));
    EXPECT_FALSE(r.strong);
    EXPECT_FALSE(r.reason.empty());
}
