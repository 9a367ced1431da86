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

#include "mixsspt/mpdo.h"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace mixsspt {

namespace {

using cd = std::complex<double>;

constexpr size_t kMaxTransferDim = size_t{1} << 16;
constexpr size_t kMaxMomentDim = 4096;

size_t ipow(size_t base, size_t exp) {
    size_t r = 1;
    for (size_t k = 0; k < exp; k++) {
        r *= base;
    }
    return r;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

size_t numerical_rank(const Eigen::MatrixXcd &m, double tol) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(tol);
    return static_cast<size_t>(qr.rank());
}

bool is_real(const Eigen::MatrixXcd &m) {
    return m.imag().cwiseAbs().maxCoeff() == 0.0;
}

Eigen::VectorXcd block_eigenvalues(const Eigen::MatrixXcd &m) {
    if (m.rows() == 1) {
        return m.col(0);
    }
    if (is_real(m)) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(m.real(), false);
        if (es.info() != Eigen::Success) {
            throw std::runtime_error("transfer block eigensolver failed");
        }
        return es.eigenvalues();
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("transfer block eigensolver failed");
    }
    return es.eigenvalues();
}

void sort_by_modulus(Eigen::VectorXcd &v) {
    std::sort(v.data(), v.data() + v.size(), [](cd a, cd b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) {
            return ma > mb;
        }
        return a.real() > b.real();
    });
}

struct Nz {
    uint32_t r, c;
    cd v;
};

// Entry lists of the open chain sum_{interior} (x)_l G_l^{i_l i_(l+1)} for
// layers [lo, hi), indexed by the end points a * d + b.
using ChainBlocks = std::vector<std::vector<Nz>>;

ChainBlocks open_chain(const std::vector<std::vector<std::vector<Nz>>> &nz, size_t d, size_t bond, size_t lo, size_t hi) {
    ChainBlocks cur = nz[lo];
    for (size_t l = lo + 1; l < hi; l++) {
        ChainBlocks next(d * d);
        for (size_t a = 0; a < d; a++) {
            for (size_t b = 0; b < d; b++) {
                std::unordered_map<uint64_t, cd> acc;
                for (size_t m = 0; m < d; m++) {
                    for (const Nz &x : cur[a * d + m]) {
                        for (const Nz &y : nz[l][m * d + b]) {
                            acc[(uint64_t{x.r * bond + y.r} << 24) | (x.c * bond + y.c)] += x.v * y.v;
                        }
                    }
                }
                auto &out = next[a * d + b];
                out.reserve(acc.size());
                for (const auto &[k, v] : acc) {
                    if (v != cd(0.0, 0.0)) {
                        out.push_back({static_cast<uint32_t>(k >> 24), static_cast<uint32_t>(k & 0xffffff), v});
                    }
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

void MpsTensor::validate() const {
    if (phys_dim == 0 || bond_dim == 0 || entries.size() != phys_dim) {
        throw std::invalid_argument("MPS tensor needs one matrix per physical index");
    }
    for (const auto &e : entries) {
        if (static_cast<size_t>(e.rows()) != bond_dim || static_cast<size_t>(e.cols()) != bond_dim) {
            throw std::invalid_argument("MPS tensor matrices must be D x D");
        }
    }
}

Eigen::MatrixXcd MpsTensor::transfer() const {
    validate();
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(bond_dim * bond_dim, bond_dim * bond_dim);
    for (const auto &e : entries) {
        t += kron(e, e.conjugate());
    }
    return t;
}

size_t MpsTensor::map_rank(double tol) const {
    validate();
    Eigen::MatrixXcd m(phys_dim, bond_dim * bond_dim);
    for (size_t i = 0; i < phys_dim; i++) {
        Eigen::MatrixXcd row = entries[i].transpose();
        m.row(i) = Eigen::Map<Eigen::RowVectorXcd>(row.data(), row.size());
    }
    return numerical_rank(m, tol);
}

MpsTensor cluster_site_tensor() {
    MpsTensor t{2, 2, {Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(2, 2)}};
    t.entries[0] << 1.0, 1.0, 0.0, 0.0;
    t.entries[1] << 0.0, 0.0, 1.0, -1.0;
    return t;
}

MpsTensor block_tensors(const MpsTensor &a, const MpsTensor &b) {
    a.validate();
    b.validate();
    if (a.bond_dim != b.bond_dim) {
        throw std::invalid_argument("blocked tensors need equal bond dimensions");
    }
    MpsTensor out{a.phys_dim * b.phys_dim, a.bond_dim, {}};
    for (size_t i = 0; i < a.phys_dim; i++) {
        for (size_t j = 0; j < b.phys_dim; j++) {
            out.entries.push_back(a.entries[i] * b.entries[j]);
        }
    }
    return out;
}

MpdoTensor::MpdoTensor(size_t phys_dim, size_t bond_dim, std::vector<Eigen::MatrixXcd> entries)
    : phys_dim_(phys_dim), bond_dim_(bond_dim), entries_(std::move(entries)) {
    if (entries_.size() != phys_dim * phys_dim) {
        throw std::invalid_argument("MPDO tensor needs d^2 matrices");
    }
}

MpdoTensor MpdoTensor::from_purification(const MpsTensor &purification, size_t env_dim) {
    purification.validate();
    if (env_dim == 0 || purification.phys_dim % env_dim != 0) {
        throw std::invalid_argument("environment dimension must divide the purification dimension");
    }
    size_t d = purification.phys_dim / env_dim;
    size_t bond = purification.bond_dim * purification.bond_dim;
    std::vector<Eigen::MatrixXcd> entries;
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(bond, bond);
            for (size_t k = 0; k < env_dim; k++) {
                m += kron(purification.entries[i * env_dim + k], purification.entries[j * env_dim + k].conjugate());
            }
            entries.push_back(std::move(m));
        }
    }
    MpdoTensor out(d, bond, std::move(entries));
    out.purification_ = purification;
    out.env_dim_ = env_dim;
    return out;
}

MpdoTensor MpdoTensor::partial_transpose_a() const {
    if (phys_dim_ != 4) {
        throw std::invalid_argument("partial transpose needs two-qubit cells");
    }
    std::vector<Eigen::MatrixXcd> entries(16);
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            size_t ia = i >> 1, ib = i & 1, ja = j >> 1, jb = j & 1;
            entries[i * 4 + j] = at(ja * 2 + ib, ia * 2 + jb);
        }
    }
    MpdoTensor out(phys_dim_, bond_dim_, std::move(entries));
    out.p_ = p_;
    out.kind_ = kind_;
    return out;
}

DenseOperator MpdoTensor::densify(size_t n_cells) const {
    if (phys_dim_ != 4) {
        throw std::invalid_argument("densify needs two-qubit cells");
    }
    size_t n_qubits = 2 * n_cells;
    if (n_cells == 0 || n_qubits > kMaxDenseOperatorQubits) {
        throw std::invalid_argument("densify supports 1..5 cells");
    }
    size_t dim = size_t{1} << n_qubits;
    // Basis bit q is qubit q; cell c holds qubits 2c (A) and 2c + 1 (B).
    auto cell_index = [](size_t basis, size_t c) { return ((basis >> (2 * c)) & 1) * 2 + ((basis >> (2 * c + 1)) & 1); };
    Eigen::MatrixXcd rho(dim, dim);
    for (size_t a = 0; a < dim; a++) {
        for (size_t b = 0; b < dim; b++) {
            Eigen::MatrixXcd acc = at(cell_index(a, 0), cell_index(b, 0));
            for (size_t c = 1; c < n_cells; c++) {
                acc = (acc * at(cell_index(a, c), cell_index(b, c))).eval();
            }
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc.trace();
        }
    }
    cd tr = rho.trace();
    if (std::abs(tr) == 0.0) {
        throw std::domain_error("contracted MPDO has zero trace");
    }
    return DenseOperator(n_qubits, rho / tr);
}

MpdoTensor cluster_mpdo(double p, NoiseKind kind) {
    require_rate(p);
    if (kind == NoiseKind::Mixed) {
        throw std::invalid_argument("cluster MPDO supports X or Z noise");
    }
    Eigen::MatrixXcd kraus[2] = {Eigen::MatrixXcd::Identity(2, 2) * std::sqrt(1.0 - p), Eigen::MatrixXcd(2, 2)};
    if (kind == NoiseKind::X) {
        kraus[1] << 0.0, 1.0, 1.0, 0.0;
    } else {
        kraus[1] << 1.0, 0.0, 0.0, -1.0;
    }
    kraus[1] *= std::sqrt(p);
    MpsTensor c = cluster_site_tensor();
    // Single-site purification with physical index i * 2 + k.
    MpsTensor site{4, 2, {}};
    for (size_t i = 0; i < 2; i++) {
        for (size_t k = 0; k < 2; k++) {
            site.entries.push_back(kraus[k](static_cast<Eigen::Index>(i), 0) * c.entries[0] +
                                   kraus[k](static_cast<Eigen::Index>(i), 1) * c.entries[1]);
        }
    }
    // Two-site cell, reordered to ((i_A, i_B), (k_A, k_B)).
    MpsTensor cell{16, 2, std::vector<Eigen::MatrixXcd>(16)};
    for (size_t ia = 0; ia < 2; ia++) {
        for (size_t ka = 0; ka < 2; ka++) {
            for (size_t ib = 0; ib < 2; ib++) {
                for (size_t kb = 0; kb < 2; kb++) {
                    size_t idx = (ia * 2 + ib) * 4 + (ka * 2 + kb);
                    cell.entries[idx] = site.entries[ia * 2 + ka] * site.entries[ib * 2 + kb];
                }
            }
        }
    }
    MpdoTensor m = MpdoTensor::from_purification(cell, 4);
    m.p_ = p;
    m.kind_ = kind;
    return m;
}

RingTransfer::RingTransfer(size_t phys_dim, size_t bond_dim, const std::vector<std::vector<Eigen::MatrixXcd>> &layers) {
    size_t n = layers.size();
    if (n == 0 || phys_dim == 0 || phys_dim > 256 || bond_dim == 0) {
        throw std::invalid_argument("ring transfer needs at least one layer");
    }
    dim_ = ipow(bond_dim, n);
    if (dim_ > kMaxTransferDim) {
        throw std::invalid_argument("ring transfer dimension exceeds 65536");
    }
    std::vector<std::vector<std::vector<Nz>>> nz(n, std::vector<std::vector<Nz>>(phys_dim * phys_dim));
    for (size_t l = 0; l < n; l++) {
        if (layers[l].size() != phys_dim * phys_dim) {
            throw std::invalid_argument("each layer needs d^2 matrices");
        }
        for (size_t ab = 0; ab < phys_dim * phys_dim; ab++) {
            const auto &g = layers[l][ab];
            if (static_cast<size_t>(g.rows()) != bond_dim || static_cast<size_t>(g.cols()) != bond_dim) {
                throw std::invalid_argument("layer matrices must be D x D");
            }
            for (Eigen::Index r = 0; r < g.rows(); r++) {
                for (Eigen::Index c = 0; c < g.cols(); c++) {
                    if (g(r, c) != cd(0.0, 0.0)) {
                        nz[l][ab].push_back({static_cast<uint32_t>(r), static_cast<uint32_t>(c), g(r, c)});
                    }
                }
            }
        }
    }
    std::unordered_map<uint64_t, cd> merged;
    auto key = [](uint64_t row, uint64_t col) { return (row << 24) | col; };
    if (n == 1) {
        for (size_t a = 0; a < phys_dim; a++) {
            for (const Nz &e : nz[0][a * phys_dim + a]) {
                merged[key(e.r, e.c)] += e.v;
            }
        }
    } else {
        // Meet in the middle: close the ring from two open half-chains.
        size_t split = (n + 1) / 2;
        ChainBlocks left = open_chain(nz, phys_dim, bond_dim, 0, split);
        ChainBlocks right = open_chain(nz, phys_dim, bond_dim, split, n);
        uint64_t right_dim = ipow(bond_dim, n - split);
        for (size_t a = 0; a < phys_dim; a++) {
            for (size_t b = 0; b < phys_dim; b++) {
                for (const Nz &x : left[a * phys_dim + b]) {
                    for (const Nz &y : right[b * phys_dim + a]) {
                        merged[key(x.r * right_dim + y.r, x.c * right_dim + y.c)] += x.v * y.v;
                    }
                }
            }
        }
    }
    // Exact cancellations leave round-off of order eps * max_abs^n.
    double largest = 0.0;
    for (const auto &[k, v] : merged) {
        largest = std::max(largest, std::abs(v));
    }
    double floor = 1e-13 * largest;
    for (const auto &[k, v] : merged) {
        if (std::abs(v) > floor) {
            triplets_.push_back({static_cast<uint32_t>(k >> 24), static_cast<uint32_t>(k & 0xffffff), v});
        }
    }
    std::sort(triplets_.begin(), triplets_.end(),
              [](const Entry &a, const Entry &b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    row_start_.assign(dim_ + 1, 0);
    for (const Entry &e : triplets_) {
        row_start_[e.row + 1]++;
    }
    std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());

    std::vector<uint32_t> parent(dim_);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const Entry &e : triplets_) {
        uint32_t a = find(e.row), b = find(e.col);
        if (a != b) {
            parent[a] = b;
        }
    }
    std::unordered_map<uint32_t, size_t> slot;
    for (uint32_t x = 0; x < dim_; x++) {
        uint32_t r = find(x);
        auto it = slot.find(r);
        if (it == slot.end()) {
            slot[r] = blocks_.size();
            blocks_.push_back({x});
        } else {
            blocks_[it->second].push_back(x);
        }
    }
}

std::vector<size_t> RingTransfer::block_sizes() const {
    std::vector<size_t> out;
    for (const auto &b : blocks_) {
        out.push_back(b.size());
    }
    return out;
}

Eigen::MatrixXcd RingTransfer::block_matrix(const std::vector<uint32_t> &block) const {
    std::unordered_map<uint32_t, Eigen::Index> local;
    for (size_t k = 0; k < block.size(); k++) {
        local[block[k]] = static_cast<Eigen::Index>(k);
    }
    auto size = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
    for (uint32_t row : block) {
        for (size_t k = row_start_[row]; k < row_start_[row + 1]; k++) {
            m(local.at(row), local.at(triplets_[k].col)) = triplets_[k].value;
        }
    }
    return m;
}

Eigen::VectorXcd RingTransfer::eigenvalues() const {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(dim_));
    Eigen::Index pos = 0;
    for (const auto &b : blocks_) {
        Eigen::VectorXcd ev = block_eigenvalues(block_matrix(b));
        out.segment(pos, ev.size()) = ev;
        pos += ev.size();
    }
    sort_by_modulus(out);
    return out;
}

Eigen::VectorXcd RingTransfer::top_eigenvector() const {
    size_t best = 0;
    cd lambda{0.0, 0.0};
    for (size_t k = 0; k < blocks_.size(); k++) {
        Eigen::VectorXcd ev = block_eigenvalues(block_matrix(blocks_[k]));
        Eigen::Index i = 0;
        ev.cwiseAbs().maxCoeff(&i);
        if (std::abs(ev(i)) > std::abs(lambda)) {
            lambda = ev(i);
            best = k;
        }
    }
    const auto &block = blocks_[best];
    Eigen::MatrixXcd m = block_matrix(block);
    auto size = m.rows();
    // Inverse iteration with a shift just off the eigenvalue.
    cd shift = lambda * (1.0 + 1e-10) + cd(0.0, 1e-12 * std::abs(lambda));
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m - shift * Eigen::MatrixXcd::Identity(size, size));
    Eigen::VectorXcd x = Eigen::VectorXcd::Ones(size).normalized();
    for (int it = 0; it < 6; it++) {
        x = lu.solve(x);
        x.normalize();
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_));
    for (size_t j = 0; j < block.size(); j++) {
        out(block[j]) = x(static_cast<Eigen::Index>(j));
    }
    return out;
}

LogScaled RingTransfer::trace_power(size_t k) const {
    LogScaled total = LogScaled::zero();
    for (const auto &b : blocks_) {
        total += log_trace_power(block_matrix(b), k);
    }
    return total;
}

Eigen::MatrixXcd RingTransfer::dense() const {
    if (dim_ > kMaxMomentDim) {
        throw std::invalid_argument("dense transfer copies are limited to dimension 4096");
    }
    auto d = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const Entry &e : triplets_) {
        m(e.row, e.col) = e.value;
    }
    return m;
}

Eigen::VectorXcd RingTransfer::apply(const Eigen::VectorXcd &x) const {
    if (static_cast<size_t>(x.size()) != dim_) {
        throw std::invalid_argument("vector size does not match the transfer dimension");
    }
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    for (const Entry &e : triplets_) {
        y(e.row) += e.value * x(e.col);
    }
    return y;
}

SpectrumSummary summarize_spectrum(const Eigen::VectorXcd &eigenvalues, double tol) {
    SpectrumSummary s;
    s.eigenvalues = eigenvalues;
    sort_by_modulus(s.eigenvalues);
    if (s.eigenvalues.size() == 0) {
        return s;
    }
    s.top = s.eigenvalues(0);
    double top_abs = std::abs(s.top);
    if (top_abs == 0.0) {
        s.top_degeneracy = static_cast<size_t>(s.eigenvalues.size());
        s.peripheral_count = s.top_degeneracy;
        return s;
    }
    bool gap_found = false;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); k++) {
        cd l = s.eigenvalues(k);
        if (std::abs(l - s.top) <= tol * top_abs) {
            s.top_degeneracy++;
        } else if (!gap_found) {
            s.gap = 1.0 - std::abs(l) / top_abs;
            gap_found = true;
        }
        if (std::abs(std::abs(l) - top_abs) <= tol * top_abs) {
            s.peripheral_count++;
            s.top_imag_residue = std::max(s.top_imag_residue, std::abs(l.imag()) / top_abs);
        }
    }
    if (!gap_found) {
        s.gap = 0.0;
    }
    return s;
}

TransferMoment moment_transfer(const MpdoTensor &m, int alpha, bool tilde) {
    if (alpha < 1) {
        throw std::invalid_argument("moment transfer needs alpha >= 1");
    }
    size_t layers = 2 * static_cast<size_t>(alpha);
    if (ipow(m.bond_dim(), layers) > kMaxMomentDim) {
        throw std::invalid_argument("moment transfer dimension D^(2 alpha) exceeds 4096");
    }
    const MpdoTensor t = tilde ? m.partial_transpose_a() : m;
    std::vector<std::vector<Eigen::MatrixXcd>> g(layers, t.entries());
    return TransferMoment{alpha, tilde, RingTransfer(m.phys_dim(), m.bond_dim(), g)};
}

RingTransfer purification_moment_transfer(const MpdoTensor &m, int alpha) {
    if (alpha < 1) {
        throw std::invalid_argument("moment transfer needs alpha >= 1");
    }
    size_t d = m.phys_dim();
    size_t layers = 2 * static_cast<size_t>(alpha);
    if (ipow(m.bond_dim(), layers) > kMaxMomentDim) {
        throw std::invalid_argument("moment transfer dimension D^(2 alpha) exceeds 4096");
    }
    // Ket copies run i -> k_1 -> ... -> j; the conjugate copies close the
    // ring backwards with R^{ab} = conj(M^{ba}).
    std::vector<Eigen::MatrixXcd> reversed(d * d);
    for (size_t a = 0; a < d; a++) {
        for (size_t b = 0; b < d; b++) {
            reversed[a * d + b] = m.at(b, a).conjugate();
        }
    }
    std::vector<std::vector<Eigen::MatrixXcd>> g;
    for (int k = 0; k < alpha; k++) {
        g.push_back(m.entries());
    }
    for (int k = 0; k < alpha; k++) {
        g.push_back(reversed);
    }
    return RingTransfer(d, m.bond_dim(), g);
}

MomentSpectra moment_spectra(const MpdoTensor &m, int alpha, double tol) {
    if (alpha < 2) {
        throw std::invalid_argument("moment spectra need alpha >= 2");
    }
    MomentSpectra out;
    out.alpha = alpha;
    out.plain = summarize_spectrum(moment_transfer(m, alpha, false).matrix.eigenvalues(), tol);
    out.tilde = summarize_spectrum(moment_transfer(m, alpha, true).matrix.eigenvalues(), tol);
    return out;
}

namespace {

// M_alpha^{ij} = sum_k M^{i k_1} (x) M^{k_1 k_2} (x) ... (x) M^{k_(alpha-1) j}.
std::vector<Eigen::MatrixXcd> physical_power(const MpdoTensor &m, int alpha) {
    size_t d = m.phys_dim();
    std::vector<Eigen::MatrixXcd> cur = m.entries();
    for (int a = 1; a < alpha; a++) {
        std::vector<Eigen::MatrixXcd> next(d * d);
        for (size_t i = 0; i < d; i++) {
            for (size_t j = 0; j < d; j++) {
                Eigen::MatrixXcd acc;
                for (size_t k = 0; k < d; k++) {
                    Eigen::MatrixXcd term = kron(cur[i * d + k], m.at(k, j));
                    acc = k == 0 ? term : Eigen::MatrixXcd(acc + term);
                }
                next[i * d + j] = std::move(acc);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// Rank of (I, J) -> M^{I J}_{ab} after blocking `cells` copies of the tensor.
size_t blocked_map_rank(const std::vector<Eigen::MatrixXcd> &entries, size_t d, size_t cells, double tol) {
    std::vector<Eigen::MatrixXcd> cur = entries;
    size_t dc = d;
    for (size_t c = 1; c < cells; c++) {
        std::vector<Eigen::MatrixXcd> next(dc * d * dc * d);
        for (size_t i1 = 0; i1 < dc; i1++) {
            for (size_t i2 = 0; i2 < d; i2++) {
                for (size_t j1 = 0; j1 < dc; j1++) {
                    for (size_t j2 = 0; j2 < d; j2++) {
                        next[(i1 * d + i2) * dc * d + (j1 * d + j2)] = cur[i1 * dc + j1] * entries[i2 * d + j2];
                    }
                }
            }
        }
        cur = std::move(next);
        dc *= d;
    }
    auto cols = cur.front().size();
    Eigen::MatrixXcd mat(static_cast<Eigen::Index>(cur.size()), cols);
    for (size_t r = 0; r < cur.size(); r++) {
        mat.row(static_cast<Eigen::Index>(r)) = Eigen::Map<const Eigen::RowVectorXcd>(cur[r].data(), cols);
    }
    return numerical_rank(mat, tol);
}

}  // namespace

InjectivityReport injectivity_report(const MpdoTensor &m, int alpha_max, double tol) {
    if (alpha_max < 1) {
        throw std::invalid_argument("injectivity report needs alpha_max >= 1");
    }
    InjectivityReport report;
    size_t d = m.phys_dim();
    size_t bond = m.bond_dim();

    Eigen::MatrixXcd transfer = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(bond), static_cast<Eigen::Index>(bond));
    for (size_t i = 0; i < d; i++) {
        transfer += m.at(i, i);
    }
    SpectrumSummary c2 = summarize_spectrum(block_eigenvalues(transfer), tol);
    report.c2_gap = c2.gap;
    report.c2_top_degeneracy = c2.top_degeneracy;
    report.c2 = c2.peripheral_count == 1 && c2.top_imag_residue <= tol && c2.top.real() > 0.0;

    report.c1_prime = true;
    for (int alpha = 1; alpha <= alpha_max; alpha++) {
        InjectivityEntry e;
        e.alpha = alpha;
        e.virtual_dim = ipow(bond, 2 * static_cast<size_t>(alpha));
        if (e.virtual_dim > kMaxMomentDim) {
            throw std::invalid_argument("injectivity report is limited to D^(2 alpha) <= 4096");
        }
        std::vector<Eigen::MatrixXcd> power = physical_power(m, alpha);
        // Block cells until the map can be injective or the matrix gets large.
        for (size_t cells = 1;; cells++) {
            size_t rows = ipow(d * d, cells);
            if (rows * e.virtual_dim > (size_t{1} << 17)) {
                break;
            }
            e.blocked_cells = cells;
            e.map_rank = blocked_map_rank(power, d, cells, tol);
            if (e.map_rank == e.virtual_dim) {
                break;
            }
        }
        RingTransfer t = purification_moment_transfer(m, alpha);
        SpectrumSummary s = summarize_spectrum(t.eigenvalues(), tol);
        e.gap = s.gap;
        e.top_degeneracy = s.top_degeneracy;
        bool unique = s.peripheral_count == 1 && s.top_imag_residue <= tol && s.top.real() > 0.0;
        if (unique) {
            Eigen::VectorXcd v = t.top_eigenvector();
            auto side = static_cast<Eigen::Index>(ipow(bond, static_cast<size_t>(alpha)));
            // Ket digits index the rows; conjugate digits (in reverse order) the columns.
            Eigen::MatrixXcd x = Eigen::Map<const Eigen::MatrixXcd>(v.data(), side, side).transpose();
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x);
            const auto &sv = svd.singularValues();
            e.fixed_point_min_singular = sv(sv.size() - 1) / sv(0);
            e.primitive = e.fixed_point_min_singular > 1e-8;
        }
        e.passes = e.primitive;
        if (alpha == 1) {
            report.c1 = e.passes && e.map_rank == e.virtual_dim;
        }
        report.c1_prime = report.c1_prime && e.passes;
        report.entries.push_back(e);
    }
    return report;
}

double renyi_negativity_tm(const MpdoTensor &m, int alpha, size_t two_n) {
    if (alpha < 2) {
        throw std::invalid_argument("Renyi negativity needs alpha >= 2");
    }
    if (two_n < 4 || two_n % 2 != 0) {
        throw std::invalid_argument("ring length must be even and at least 4");
    }
    size_t cells = two_n / 2;
    LogScaled num = moment_transfer(m, alpha, true).matrix.trace_power(cells);
    LogScaled den = moment_transfer(m, alpha, false).matrix.trace_power(cells);
    if (num.is_zero() || den.is_zero()) {
        throw std::domain_error("vanishing moment");
    }
    return (num.log_abs() - den.log_abs()) / (2.0 - 2.0 * alpha);
}

SpuriousTenReport spurious_ten_renyi(const MpdoTensor &m, int alpha, double tol) {
    if (alpha < 2) {
        throw std::invalid_argument("spurious TEN needs alpha >= 2");
    }
    SpuriousTenReport out;
    InjectivityReport inj = injectivity_report(m, alpha, tol);
    SpectrumSummary tilde = summarize_spectrum(moment_transfer(m, alpha, true).matrix.eigenvalues(), tol);
    out.degeneracy = tilde.top_degeneracy;
    out.gap = tilde.gap;
    out.strongly_injective = inj.c1 && inj.c2;
    out.c1_prime = inj.c1_prime;
    if (!inj.c1) {
        out.reason = "(C1) fails: the MPDO map is not injective";
        return out;
    }
    if (!inj.c2) {
        out.reason = "(C2) fails: the transfer matrix has no unique largest eigenvalue";
        return out;
    }
    if (!inj.c1_prime) {
        out.reason = "(C1') fails: M_alpha has a redundant virtual space";
    }
    out.value = std::log(static_cast<double>(out.degeneracy)) / (2.0 * (alpha - 1));
    return out;
}

}  // namespace mixsspt
