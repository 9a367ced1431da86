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

#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mixsspt/gf2.h"
#include "mixsspt/mpdo.h"

namespace mixsspt {

namespace {

using cd = std::complex<double>;

const cd kPhases[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

// Phase minimizing ||a - phase * b||, relative to the larger norm.
std::pair<cd, double> closest_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    double scale = std::max(a.norm(), b.norm());
    cd best{1, 0};
    double best_res = std::numeric_limits<double>::infinity();
    for (cd c : kPhases) {
        double res = scale > 0.0 ? (a - c * b).norm() / scale : 0.0;
        if (res < best_res) {
            best_res = res;
            best = c;
        }
    }
    return {best, best_res};
}

Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    return x;
}

Eigen::MatrixXcd kron2(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Least-squares solution of (u M)^{ij} V = phase V M^{ij} for the ket layer,
// or (M u^dagger)^{ij} V = phase V M^{ij} for the bra layer, over all i, j
// and the four phases. The residual is the smallest relative singular value.
VirtualAction solve_action(const MpdoTensor &m, const Eigen::MatrixXcd &u, bool ket, std::string label, double tol) {
    auto d = static_cast<Eigen::Index>(m.phys_dim());
    auto bond = static_cast<Eigen::Index>(m.bond_dim());
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(bond, bond);
    VirtualAction best;
    best.label = std::move(label);
    best.residual = std::numeric_limits<double>::infinity();
    for (cd phase : kPhases) {
        Eigen::MatrixXcd system(d * d * bond * bond, bond * bond);
        for (Eigen::Index i = 0; i < d; i++) {
            for (Eigen::Index j = 0; j < d; j++) {
                Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(bond, bond);
                for (Eigen::Index k = 0; k < d; k++) {
                    if (ket) {
                        lhs += u(i, k) * m.at(static_cast<size_t>(k), static_cast<size_t>(j));
                    } else {
                        lhs += std::conj(u(j, k)) * m.at(static_cast<size_t>(i), static_cast<size_t>(k));
                    }
                }
                const Eigen::MatrixXcd &mij = m.at(static_cast<size_t>(i), static_cast<size_t>(j));
                // Column-major vec: vec(L V) = (I (x) L) vec V, vec(V M) = (M^T (x) I) vec V.
                system.block((i * d + j) * bond * bond, 0, bond * bond, bond * bond) =
                    kron2(eye, lhs) - phase * kron2(mij.transpose(), eye);
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
        const auto &sv = svd.singularValues();
        double res = sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
        if (res < best.residual) {
            Eigen::VectorXcd x = svd.matrixV().col(bond * bond - 1);
            best.v = Eigen::Map<Eigen::MatrixXcd>(x.data(), bond, bond);
            best.phase = phase;
            best.residual = res;
        }
    }
    // Unit normalization ||V||_F^2 = D with the largest entry real and positive.
    Eigen::Index r = 0, c = 0;
    best.v.cwiseAbs().maxCoeff(&r, &c);
    cd lead = best.v(r, c);
    best.v *= std::sqrt(static_cast<double>(bond)) / best.v.norm() * std::abs(lead) / lead;
    Eigen::JacobiSVD<Eigen::MatrixXcd> check(best.v);
    const auto &sv = check.singularValues();
    if (sv(sv.size() - 1) < 1e-8 * sv(0)) {
        best.residual = std::max(best.residual, 1.0);
    }
    (void)tol;
    return best;
}

struct ActionSet {
    VirtualAction ga_ket, gb_ket, ga_bra, gb_bra;
    bool ok = false;
};

ActionSet solve_actions(const MpdoTensor &m, double tol) {
    Eigen::MatrixXcd x = pauli_x();
    Eigen::MatrixXcd i2 = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd ua = kron2(x, i2);
    Eigen::MatrixXcd ub = kron2(i2, x);
    ActionSet s;
    s.ga_ket = solve_action(m, ua, true, "gA^u", tol);
    s.gb_ket = solve_action(m, ub, true, "gB^u", tol);
    s.ga_bra = solve_action(m, ua, false, "gA^d", tol);
    s.gb_bra = solve_action(m, ub, false, "gB^d", tol);
    s.ok = s.ga_ket.residual <= tol && s.gb_ket.residual <= tol && s.ga_bra.residual <= tol &&
           s.gb_bra.residual <= tol;
    return s;
}

// Applies V to one layer of a vector on the D^n layered virtual space; layer
// 0 is the most significant digit.
Eigen::VectorXcd apply_layer(const Eigen::VectorXcd &x, size_t layer, const Eigen::MatrixXcd &v, size_t bond,
                             size_t n) {
    size_t stride = 1;
    for (size_t l = layer + 1; l < n; l++) {
        stride *= bond;
    }
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    for (Eigen::Index idx = 0; idx < x.size(); idx++) {
        size_t digit = (static_cast<size_t>(idx) / stride) % bond;
        Eigen::Index base = idx - static_cast<Eigen::Index>(digit * stride);
        for (size_t out = 0; out < bond; out++) {
            y(base + static_cast<Eigen::Index>(out * stride)) += v(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(digit)) * x(idx);
        }
    }
    return y;
}

}  // namespace

SymmetryReport symmetry_algebra_check(const MpdoTensor &m, int alpha, double tol) {
    if (alpha < 2) {
        throw std::invalid_argument("symmetry algebra check needs alpha >= 2");
    }
    if (m.phys_dim() != 4) {
        throw std::invalid_argument("symmetry algebra check needs two-qubit cells");
    }
    SymmetryReport report;
    report.alpha = alpha;
    ActionSet s = solve_actions(m, tol);
    report.actions = {s.ga_ket, s.gb_ket, s.ga_bra, s.gb_bra};
    report.strong = s.ok;
    if (!s.ok) {
        report.reason = "fractionalization equations have no invertible solution: the symmetry is not strong or the tensor is not injective";
        return report;
    }
    auto [omega, omega_res] = closest_phase(s.ga_ket.v * s.gb_ket.v, s.gb_ket.v * s.ga_ket.v);
    report.omega = omega;
    report.omega_residual = omega_res;
    auto comm = [](const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
        return (a * b - b * a).norm() / (a.norm() * b.norm());
    };
    report.ket_bra_commutator = std::max(comm(s.ga_ket.v, s.ga_bra.v), comm(s.gb_ket.v, s.gb_bra.v));

    // Layer operators of T~: V^d on layer c and V^u on layer c + 1, built from
    // the actions of the partially transposed tensor.
    MpdoTensor pt = m.partial_transpose_a();
    ActionSet t = solve_actions(pt, tol);
    if (!t.ok) {
        report.reason = "partially transposed tensor has no virtual symmetry action";
        return report;
    }
    size_t n = 2 * static_cast<size_t>(alpha);
    size_t bond = m.bond_dim();
    RingTransfer tilde = moment_transfer(m, alpha, true).matrix;
    struct Generator {
        const Eigen::MatrixXcd *bra;
        const Eigen::MatrixXcd *ket;
        size_t bond_index;
    };
    std::vector<Generator> gens;
    for (size_t c = 0; c < n; c++) {
        gens.push_back({&t.ga_bra.v, &t.ga_ket.v, c});
        gens.push_back({&t.gb_bra.v, &t.gb_ket.v, c});
    }
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd x(static_cast<Eigen::Index>(tilde.dim()));
    for (Eigen::Index k = 0; k < x.size(); k++) {
        x(k) = cd(normal(rng), normal(rng));
    }
    auto apply_gen = [&](const Generator &g, const Eigen::VectorXcd &v) {
        Eigen::VectorXcd y = apply_layer(v, g.bond_index, *g.bra, bond, n);
        return apply_layer(y, (g.bond_index + 1) % n, *g.ket, bond, n);
    };
    for (const Generator &g : gens) {
        Eigen::VectorXcd lhs = apply_gen(g, tilde.apply(x));
        Eigen::VectorXcd rhs = tilde.apply(apply_gen(g, x));
        report.layer_invariance_residual = std::max(report.layer_invariance_residual, closest_phase(lhs, rhs).second);
    }

    // Commutation phases factor over layers.
    auto layer_factor = [&](const Generator &g, size_t layer) -> const Eigen::MatrixXcd * {
        if (layer == g.bond_index) {
            return g.bra;
        }
        if (layer == (g.bond_index + 1) % n) {
            return g.ket;
        }
        return nullptr;
    };
    std::vector<BitVector> form(gens.size(), BitVector(gens.size()));
    for (size_t a = 0; a < gens.size(); a++) {
        for (size_t b = 0; b < gens.size(); b++) {
            cd phase{1, 0};
            for (size_t l = 0; l < n; l++) {
                const Eigen::MatrixXcd *fa = layer_factor(gens[a], l);
                const Eigen::MatrixXcd *fb = layer_factor(gens[b], l);
                if (fa && fb) {
                    auto [p, res] = closest_phase((*fa) * (*fb), (*fb) * (*fa));
                    if (res > 1e-8) {
                        report.reason = "layer operators do not commute up to a phase";
                        return report;
                    }
                    phase *= p;
                }
            }
            if (std::abs(phase.imag()) > 0.5) {
                report.reason = "layer operators have a non-real commutation phase";
                return report;
            }
            form[a].set(b, phase.real() < 0.0);
        }
    }
    report.algebra_rank = gf2_rank(form);
    report.minimal_representation = size_t{1} << (report.algebra_rank / 2);
    return report;
}

}  // namespace mixsspt
