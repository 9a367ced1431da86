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

#ifndef MIXSSPT_PAULI_H
#define MIXSSPT_PAULI_H

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mixsspt/gf2.h"

namespace mixsspt {

/// A sorted list of qubit indices.
using Region = std::vector<size_t>;

/// Pauli string i^phase * P_0 (x) P_1 (x) ... stored as symplectic bits.
///
/// A qubit with both x and z set holds Y itself (not XZ), so Hermitian
/// operators are exactly those with an even phase exponent.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t n_qubits);

    /// Parses strings like "+XZ_Y", "-iX_Z" or "ZXZI".
    static PauliOperator from_string(std::string_view text);
    /// A single-qubit Pauli ('X', 'Y' or 'Z') embedded in n qubits.
    static PauliOperator single(size_t n_qubits, size_t qubit, char pauli);

    size_t n_qubits() const {
        return x_.size();
    }
    bool x(size_t q) const {
        return x_.get(q);
    }
    bool z(size_t q) const {
        return z_.get(q);
    }
    /// Sets qubit q to 'I', 'X', 'Y' or 'Z'.
    void set(size_t q, char pauli);
    char at(size_t q) const;

    /// Exponent k of the overall phase i^k, in 0..3.
    uint8_t phase_exponent() const {
        return phase_;
    }
    void set_phase_exponent(int k) {
        phase_ = static_cast<uint8_t>(((k % 4) + 4) % 4);
    }
    std::complex<double> phase() const;

    const BitVector &x_bits() const {
        return x_;
    }
    const BitVector &z_bits() const {
        return z_;
    }

    bool commutes_with(const PauliOperator &other) const;
    bool is_identity() const;
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }
    size_t weight() const;
    /// Support as a bit mask over qubits.
    BitVector support() const;

    /// Operator product with exact phase.
    PauliOperator operator*(const PauliOperator &other) const;
    PauliOperator &operator*=(const PauliOperator &other);
    bool operator==(const PauliOperator &other) const = default;

    /// Keeps only the factors on qubits in mask (phase kept).
    PauliOperator restricted(const BitVector &mask) const;

    std::string str() const;

   private:
    BitVector x_;
    BitVector z_;
    uint8_t phase_ = 0;
};

/// Commuting, independent set of Hermitian Pauli generators.
class StabilizerTableau {
   public:
    StabilizerTableau() = default;
    /// Validates commutation, Hermiticity and independence; throws
    /// std::invalid_argument on violation.
    StabilizerTableau(size_t n_qubits, std::vector<PauliOperator> generators);

    size_t n_qubits() const {
        return n_qubits_;
    }
    size_t size() const {
        return generators_.size();
    }
    const std::vector<PauliOperator> &generators() const {
        return generators_;
    }
    const PauliOperator &operator[](size_t k) const {
        return generators_[k];
    }

    /// True if P (with its sign) is an element of the stabilizer group.
    bool contains(const PauliOperator &p) const;
    /// True if both tableaus generate the same signed group.
    bool same_group(const StabilizerTableau &other) const;

    /// Returns a tableau where generator `target` is replaced by
    /// generators[source] * generators[target].
    StabilizerTableau with_row_multiplied(size_t target, size_t source) const;

   private:
    size_t n_qubits_ = 0;
    std::vector<PauliOperator> generators_;
};

/// Rank over GF(2) of the stacked (x | z) rows.
size_t symplectic_rank(const std::vector<PauliOperator> &ops);

struct StabilizerNegativity {
    double nats = 0.0;
    size_t rank = 0;
    /// Set when the region is empty or covers every qubit.
    bool degenerate_region = false;
};

/// Negativity of a stabilizer state across region vs complement:
/// half the GF(2) rank of the anticommutation matrix of the restricted
/// generators, times log 2.
StabilizerNegativity negativity_stabilizer(const StabilizerTableau &tab, const Region &region);

/// Applies the rate-1/2 Pauli channel for every operator in kraus_list.
///
/// Each channel keeps only the stabilizers commuting with its Kraus
/// operator: the first anticommuting generator is multiplied into the later
/// anticommuting ones and then dropped.
StabilizerTableau maximal_dephase(const StabilizerTableau &tab, const std::vector<PauliOperator> &kraus_list);

/// Mask with the given qubits set.
BitVector region_mask(size_t n_qubits, const Region &region);

}  // namespace mixsspt

#endif
