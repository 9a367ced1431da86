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

#include "mixsspt/dense.h"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace mixsspt {

namespace {

using cd = std::complex<double>;

struct PauliMasks {
    uint64_t x = 0;
    uint64_t z = 0;
    cd base{1.0, 0.0};
};

// P|b> = base * (-1)^{popcount(b & z)} |b ^ x>, with the i factors of Y
// absorbed into base.
PauliMasks masks_of(const PauliOperator &p, size_t n) {
    if (p.n_qubits() != n) {
        throw std::invalid_argument("Pauli qubit count mismatch");
    }
    PauliMasks m;
    int ys = 0;
    for (size_t q = 0; q < n; q++) {
        if (p.x(q)) {
            m.x |= uint64_t{1} << q;
        }
        if (p.z(q)) {
            m.z |= uint64_t{1} << q;
        }
        if (p.x(q) && p.z(q)) {
            ys++;
        }
    }
    static const cd kTurns[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    m.base = kTurns[(p.phase_exponent() + ys) % 4];
    return m;
}

cd coefficient(const PauliMasks &m, uint64_t b) {
    return (std::popcount(b & m.z) & 1) ? -m.base : m.base;
}

uint64_t transpose_index_mask(size_t n, const Region &region) {
    uint64_t mask = 0;
    for (size_t q : region) {
        if (q >= n) {
            throw std::invalid_argument("region qubit out of range");
        }
        mask |= uint64_t{1} << q;
    }
    return mask;
}

// |eigenvalues| of a Hermitian matrix. The tridiagonal QR in Eigen can fail
// to converge on the exactly degenerate spectra of stabilizer states; a
// unit diagonal shift avoids that, and a Jacobi SVD is the last resort.
Eigen::VectorXd absolute_eigenvalues(const Eigen::MatrixXcd &m) {
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() == Eigen::Success) {
        return es.eigenvalues().cwiseAbs();
    }
    h.diagonal().array() += 1.0;
    es.compute(h, Eigen::EigenvaluesOnly);
    if (es.info() == Eigen::Success) {
        return (es.eigenvalues().array() - 1.0).abs().matrix();
    }
    h.diagonal().array() -= 1.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
    return svd.singularValues();
}

}  // namespace

DenseState::DenseState(size_t n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits == 0 || n_qubits > kMaxDenseStateQubits) {
        throw std::invalid_argument("dense states support 1..12 qubits");
    }
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
        throw std::invalid_argument("amplitude vector has the wrong length");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("state is not normalized");
    }
}

std::complex<double> DenseState::expectation(const PauliOperator &p) const {
    return amplitudes_.dot(apply(p).amplitudes_);
}

DenseState DenseState::apply(const PauliOperator &p) const {
    PauliMasks m = masks_of(p, n_qubits_);
    Eigen::VectorXcd out(amplitudes_.size());
    for (Eigen::Index b = 0; b < amplitudes_.size(); b++) {
        uint64_t ub = static_cast<uint64_t>(b);
        out(static_cast<Eigen::Index>(ub ^ m.x)) = coefficient(m, ub) * amplitudes_(b);
    }
    return DenseState(n_qubits_, std::move(out));
}

DenseOperator::DenseOperator(size_t n_qubits, Eigen::MatrixXcd entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
    if (n_qubits == 0 || n_qubits > kMaxDenseOperatorQubits) {
        throw std::invalid_argument("dense operators support 1..10 qubits");
    }
    Eigen::Index dim = Eigen::Index{1} << n_qubits;
    if (entries_.rows() != dim || entries_.cols() != dim) {
        throw std::invalid_argument("operator matrix has the wrong shape");
    }
}

DenseOperator DenseOperator::pure(const DenseState &state) {
    const auto &v = state.amplitudes();
    return DenseOperator(state.n_qubits(), v * v.adjoint());
}

DenseOperator DenseOperator::zero_state(size_t n_qubits) {
    Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    m(0, 0) = 1.0;
    return DenseOperator(n_qubits, std::move(m));
}

bool DenseOperator::is_density_matrix() const {
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        return false;
    }
    if (std::abs(entries_.trace() - cd(1.0, 0.0)) > 1e-12) {
        return false;
    }
    // A unit-trace Hermitian matrix is positive iff its trace norm is one.
    return absolute_eigenvalues(entries_).sum() <= 1.0 + 1e-10;
}

void DenseOperator::require_density_matrix() const {
    if (!is_density_matrix()) {
        throw std::domain_error("operator is not a density matrix");
    }
}

DenseOperator DenseOperator::conjugated(const PauliOperator &p) const {
    PauliMasks m = masks_of(p, n_qubits_);
    Eigen::Index dim = entries_.rows();
    Eigen::MatrixXcd out(dim, dim);
    // (P rho P^dagger)_{ab} = c(a^x) conj(c(b^x)) rho_{a^x, b^x}.
    for (Eigen::Index b = 0; b < dim; b++) {
        uint64_t bs = static_cast<uint64_t>(b) ^ m.x;
        cd cb = std::conj(coefficient(m, bs));
        for (Eigen::Index a = 0; a < dim; a++) {
            uint64_t as = static_cast<uint64_t>(a) ^ m.x;
            out(a, b) = coefficient(m, as) * cb *
                        entries_(static_cast<Eigen::Index>(as), static_cast<Eigen::Index>(bs));
        }
    }
    return DenseOperator(n_qubits_, std::move(out));
}

DenseState densify(const StabilizerTableau &tab) {
    size_t n = tab.n_qubits();
    if (n > kMaxDenseStateQubits) {
        throw std::invalid_argument("densify supports at most 12 qubits");
    }
    if (tab.size() != n) {
        throw std::invalid_argument("densify needs a full-rank tableau");
    }
    Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<PauliMasks> masks;
    for (const auto &g : tab.generators()) {
        masks.push_back(masks_of(g, n));
    }
    // Some basis state overlaps the stabilizer state; its projection has
    // squared norm at least 2^-n.
    for (Eigen::Index start = 0; start < dim; start++) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v(start) = 1.0;
        for (const auto &m : masks) {
            Eigen::VectorXcd gv(dim);
            for (Eigen::Index b = 0; b < dim; b++) {
                uint64_t ub = static_cast<uint64_t>(b);
                gv(static_cast<Eigen::Index>(ub ^ m.x)) = coefficient(m, ub) * v(b);
            }
            v = 0.5 * (v + gv);
        }
        double norm = v.norm();
        if (norm * norm > 0.5 / static_cast<double>(dim)) {
            return DenseState(n, v / norm);
        }
    }
    throw std::domain_error("stabilizer projection vanished on every basis state");
}

DenseOperator apply_pauli_channel(const DenseOperator &rho, double p, const PauliOperator &kraus) {
    if (!(p >= 0.0 && p <= 0.5)) {
        throw std::invalid_argument("channel rate must lie in [0, 1/2]");
    }
    if (p == 0.0) {
        return rho;
    }
    Eigen::MatrixXcd out = (1.0 - p) * rho.entries() + p * rho.conjugated(kraus).entries();
    Eigen::MatrixXcd sym = 0.5 * (out + out.adjoint());
    return DenseOperator(rho.n_qubits(), std::move(sym));
}

DenseOperator apply_pauli_channels(DenseOperator rho, const std::vector<std::pair<PauliOperator, double>> &channels) {
    for (const auto &[op, p] : channels) {
        rho = apply_pauli_channel(rho, p, op);
    }
    return rho;
}

namespace {

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) {
        throw std::domain_error("Hermitian eigensolver failed");
    }
    Eigen::VectorXd ev = es.eigenvalues();
    double top = std::max(ev.maxCoeff(), 0.0);
    if (ev.minCoeff() < -1e-10 * std::max(top, 1.0)) {
        throw std::domain_error("matrix is not positive semidefinite");
    }
    double floor = 1e-12 * top;
    Eigen::VectorXd root(ev.size());
    for (Eigen::Index k = 0; k < ev.size(); k++) {
        root(k) = ev(k) > floor ? std::sqrt(ev(k)) : 0.0;
    }
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DenseOperator &rho, const DenseOperator &sigma) {
    if (rho.n_qubits() != sigma.n_qubits()) {
        throw std::invalid_argument("fidelity of operators with different sizes");
    }
    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma);
    // singular values avoid the square-root amplification of round-off.
    Eigen::MatrixXcd prod = psd_sqrt(rho.entries()) * psd_sqrt(sigma.entries());
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(prod);
    return std::min(svd.singularValues().sum(), 1.0);
}

double fidelity_correlator_dense(const DenseOperator &rho, const PauliOperator &charged) {
    return fidelity(rho, rho.conjugated(charged));
}

DenseOperator partial_transpose(const DenseOperator &rho, const Region &region) {
    uint64_t t = transpose_index_mask(rho.n_qubits(), region);
    Eigen::Index dim = rho.entries().rows();
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index a = 0; a < dim; a++) {
        for (Eigen::Index b = 0; b < dim; b++) {
            uint64_t ua = static_cast<uint64_t>(a);
            uint64_t ub = static_cast<uint64_t>(b);
            uint64_t swap = (ua ^ ub) & t;
            out(static_cast<Eigen::Index>(ua ^ swap), static_cast<Eigen::Index>(ub ^ swap)) = rho.entries()(a, b);
        }
    }
    return DenseOperator(rho.n_qubits(), std::move(out));
}

double negativity_dense(const DenseOperator &rho, const Region &region) {
    DenseOperator pt = partial_transpose(rho, region);
    return std::log(absolute_eigenvalues(pt.entries()).sum());
}

double RenyiMoments::negativity(int alpha) const {
    return std::log(transposed / plain) / (2.0 - 2.0 * alpha);
}

RenyiMoments renyi_moments(const DenseOperator &rho, const Region &region, int alpha) {
    if (alpha < 2) {
        throw std::invalid_argument("Renyi moments need alpha >= 2");
    }
    auto power_trace = [alpha](const Eigen::MatrixXcd &m) {
        Eigen::MatrixXcd sq = m * m;
        Eigen::MatrixXcd acc = sq;
        for (int k = 1; k < alpha; k++) {
            acc = (acc * sq).eval();
        }
        return acc.trace();
    };
    cd t = power_trace(partial_transpose(rho, region).entries());
    cd plain = power_trace(rho.entries());
    RenyiMoments out;
    out.transposed = t.real();
    out.plain = plain.real();
    out.imag_residue = std::max(std::abs(t.imag()), std::abs(plain.imag()));
    return out;
}

}  // namespace mixsspt
