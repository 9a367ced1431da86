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

#include "mixsspt/pauli.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mixsspt {

PauliOperator::PauliOperator(size_t n_qubits) : x_(n_qubits), z_(n_qubits) {
    if (n_qubits == 0) {
        throw std::invalid_argument("PauliOperator needs at least one qubit");
    }
}

PauliOperator PauliOperator::from_string(std::string_view text) {
    int phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') {
            phase += 2;
        }
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase += 1;
        text.remove_prefix(1);
    }
    PauliOperator p(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        p.set(q, text[q]);
    }
    p.set_phase_exponent(phase);
    return p;
}

PauliOperator PauliOperator::single(size_t n_qubits, size_t qubit, char pauli) {
    if (qubit >= n_qubits) {
        throw std::invalid_argument("qubit index out of range");
    }
    PauliOperator p(n_qubits);
    p.set(qubit, pauli);
    return p;
}

void PauliOperator::set(size_t q, char pauli) {
    switch (pauli) {
        case 'I':
        case '_':
            x_.set(q, false);
            z_.set(q, false);
            break;
        case 'X':
            x_.set(q, true);
            z_.set(q, false);
            break;
        case 'Y':
            x_.set(q, true);
            z_.set(q, true);
            break;
        case 'Z':
            x_.set(q, false);
            z_.set(q, true);
            break;
        default:
            throw std::invalid_argument(std::string("not a Pauli character: ") + pauli);
    }
}

char PauliOperator::at(size_t q) const {
    static const char kChars[4] = {'_', 'X', 'Z', 'Y'};
    return kChars[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
}

std::complex<double> PauliOperator::phase() const {
    static const std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPhases[phase_];
}

bool PauliOperator::commutes_with(const PauliOperator &other) const {
    if (other.n_qubits() != n_qubits()) {
        throw std::invalid_argument("qubit count mismatch");
    }
    const auto &x1 = x_.words();
    const auto &z1 = z_.words();
    const auto &x2 = other.x_.words();
    const auto &z2 = other.z_.words();
    uint64_t acc = 0;
    for (size_t w = 0; w < x1.size(); w++) {
        acc ^= (x1[w] & z2[w]) ^ (z1[w] & x2[w]);
    }
    return (std::popcount(acc) & 1) == 0;
}

bool PauliOperator::is_identity() const {
    return !x_.any() && !z_.any();
}

size_t PauliOperator::weight() const {
    return support().popcount();
}

BitVector PauliOperator::support() const {
    BitVector s = x_;
    auto &w = s.words();
    for (size_t k = 0; k < w.size(); k++) {
        w[k] |= z_.words()[k];
    }
    return s;
}

PauliOperator PauliOperator::operator*(const PauliOperator &other) const {
    PauliOperator r = *this;
    r *= other;
    return r;
}

PauliOperator &PauliOperator::operator*=(const PauliOperator &other) {
    if (other.n_qubits() != n_qubits()) {
        throw std::invalid_argument("qubit count mismatch");
    }
    // Per qubit, P1 P2 = i^g P3 with g = +1 for XY, YZ, ZX and -1 for the
    // reversed orders.
    auto &x1 = x_.words();
    auto &z1 = z_.words();
    const auto &x2 = other.x_.words();
    const auto &z2 = other.z_.words();
    int g = 0;
    for (size_t w = 0; w < x1.size(); w++) {
        uint64_t a = x1[w], b = z1[w], c = x2[w], d = z2[w];
        uint64_t plus = (a & ~b & c & d) | (a & b & ~c & d) | (~a & b & c & ~d);
        uint64_t minus = (a & ~b & ~c & d) | (a & b & c & ~d) | (~a & b & c & d);
        g += std::popcount(plus) - std::popcount(minus);
        x1[w] ^= c;
        z1[w] ^= d;
    }
    set_phase_exponent(phase_ + other.phase_ + g);
    return *this;
}

PauliOperator PauliOperator::restricted(const BitVector &mask) const {
    PauliOperator r = *this;
    r.x_ = x_ & mask;
    r.z_ = z_ & mask;
    return r;
}

std::string PauliOperator::str() const {
    static const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string s = kPrefix[phase_];
    for (size_t q = 0; q < n_qubits(); q++) {
        s.push_back(at(q));
    }
    return s;
}

size_t symplectic_rank(const std::vector<PauliOperator> &ops) {
    if (ops.empty()) {
        return 0;
    }
    size_t n = ops[0].n_qubits();
    std::vector<BitVector> rows;
    rows.reserve(ops.size());
    for (const auto &op : ops) {
        BitVector row(2 * n);
        for (size_t q = 0; q < n; q++) {
            row.set(q, op.x(q));
            row.set(n + q, op.z(q));
        }
        rows.push_back(std::move(row));
    }
    return gf2_rank(std::move(rows));
}

StabilizerTableau::StabilizerTableau(size_t n_qubits, std::vector<PauliOperator> generators)
    : n_qubits_(n_qubits), generators_(std::move(generators)) {
    for (size_t i = 0; i < generators_.size(); i++) {
        const auto &g = generators_[i];
        if (g.n_qubits() != n_qubits_) {
            throw std::invalid_argument("generator qubit count mismatch");
        }
        if (!g.is_hermitian()) {
            throw std::invalid_argument("generator " + g.str() + " is not Hermitian");
        }
        for (size_t j = 0; j < i; j++) {
            if (!g.commutes_with(generators_[j])) {
                throw std::invalid_argument("generators " + std::to_string(j) + " and " + std::to_string(i) +
                                            " anticommute");
            }
        }
    }
    if (symplectic_rank(generators_) != generators_.size()) {
        throw std::invalid_argument("generators are not independent");
    }
}

namespace {

// Row-reduced signed generators with their pivot columns in the (x | z)
// ordering. Products of commuting Hermitian Paulis stay Hermitian.
struct Canonical {
    std::vector<PauliOperator> rows;
    std::vector<size_t> pivots;
};

bool column_bit(const PauliOperator &p, size_t col) {
    size_t n = p.n_qubits();
    return col < n ? p.x(col) : p.z(col - n);
}

size_t leading_column(const PauliOperator &p) {
    size_t n = p.n_qubits();
    for (size_t c = 0; c < 2 * n; c++) {
        if (column_bit(p, c)) {
            return c;
        }
    }
    return 2 * n;
}

Canonical canonicalize(const std::vector<PauliOperator> &gens) {
    Canonical out;
    for (const auto &g : gens) {
        PauliOperator v = g;
        for (size_t k = 0; k < out.rows.size(); k++) {
            if (column_bit(v, out.pivots[k])) {
                v *= out.rows[k];
            }
        }
        size_t pivot = leading_column(v);
        if (pivot == 2 * v.n_qubits()) {
            continue;
        }
        for (size_t k = 0; k < out.rows.size(); k++) {
            if (column_bit(out.rows[k], pivot)) {
                out.rows[k] *= v;
            }
        }
        out.rows.push_back(std::move(v));
        out.pivots.push_back(pivot);
    }
    return out;
}

}  // namespace

bool StabilizerTableau::contains(const PauliOperator &p) const {
    if (p.n_qubits() != n_qubits_) {
        return false;
    }
    Canonical c = canonicalize(generators_);
    PauliOperator v = p;
    for (size_t k = 0; k < c.rows.size(); k++) {
        if (column_bit(v, c.pivots[k])) {
            v *= c.rows[k];
        }
    }
    return v.is_identity() && v.phase_exponent() == 0;
}

bool StabilizerTableau::same_group(const StabilizerTableau &other) const {
    if (other.n_qubits_ != n_qubits_ || other.size() != size()) {
        return false;
    }
    for (const auto &g : other.generators_) {
        if (!contains(g)) {
            return false;
        }
    }
    return true;
}

StabilizerTableau StabilizerTableau::with_row_multiplied(size_t target, size_t source) const {
    if (target == source || target >= size() || source >= size()) {
        throw std::invalid_argument("invalid row operation");
    }
    StabilizerTableau r = *this;
    r.generators_[target] = generators_[source] * generators_[target];
    return r;
}

BitVector region_mask(size_t n_qubits, const Region &region) {
    BitVector mask(n_qubits);
    for (size_t q : region) {
        if (q >= n_qubits) {
            throw std::invalid_argument("region qubit out of range");
        }
        mask.set(q, true);
    }
    return mask;
}

StabilizerNegativity negativity_stabilizer(const StabilizerTableau &tab, const Region &region) {
    BitVector mask = region_mask(tab.n_qubits(), region);
    StabilizerNegativity out;
    size_t count = mask.popcount();
    if (count == 0 || count == tab.n_qubits()) {
        out.degenerate_region = true;
        return out;
    }
    std::vector<PauliOperator> restricted;
    restricted.reserve(tab.size());
    for (const auto &g : tab.generators()) {
        restricted.push_back(g.restricted(mask));
    }
    size_t m = restricted.size();
    std::vector<BitVector> k_rows(m, BitVector(m));
    for (size_t i = 0; i < m; i++) {
        for (size_t j = i + 1; j < m; j++) {
            if (!restricted[i].commutes_with(restricted[j])) {
                k_rows[i].set(j, true);
                k_rows[j].set(i, true);
            }
        }
    }
    out.rank = gf2_rank(std::move(k_rows));
    out.nats = 0.5 * static_cast<double>(out.rank) * std::log(2.0);
    return out;
}

StabilizerTableau maximal_dephase(const StabilizerTableau &tab, const std::vector<PauliOperator> &kraus_list) {
    std::vector<PauliOperator> gens = tab.generators();
    for (const auto &p : kraus_list) {
        if (p.n_qubits() != tab.n_qubits()) {
            throw std::invalid_argument("Kraus operator qubit count mismatch");
        }
        size_t pivot = gens.size();
        for (size_t k = 0; k < gens.size(); k++) {
            if (gens[k].commutes_with(p)) {
                continue;
            }
            if (pivot == gens.size()) {
                pivot = k;
            } else {
                gens[k] = gens[pivot] * gens[k];
            }
        }
        if (pivot != gens.size()) {
            gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(pivot));
        }
    }
    return StabilizerTableau(tab.n_qubits(), std::move(gens));
}

}  // namespace mixsspt
