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

#ifndef MIXSSPT_FIDELITY_H
#define MIXSSPT_FIDELITY_H

#include <optional>
#include <vector>

#include "mixsspt/pauli.h"
#include "mixsspt/plaquette.h"

namespace mixsspt {

struct FidelityResult {
    double value = 0.0;
    double log_value = 0.0;
    size_t n = 0;  // sites per sublattice (1D) or circumference (2D)
    double p = 0.0;
    size_t sep = 0;
};

/// Overlap sum for one class of `size` equivalent noise patches whose
/// charged-operator patch vector has `weight` entries in the class:
///
///   (1-p)^size / 2 * sum_{e} sqrt((t^|e| + t^(size-|e|)) (t^|e^r| + t^(size-|e^r|)))
///
/// with t = p / (1 - p). Returned as a log.
double log_class_overlap(size_t size, size_t weight, double p);

/// Fidelity correlator of Z_x Z_y on the X-decohered ring of 2N qubits,
/// with x, y on the same sublattice at distance sep (in qubits).
/// sep must be even with 2 <= sep <= 2N; sep = 2N closes the loop.
FidelityResult fc_1d_exact(size_t n, double p, size_t sep);

/// xi = -1 / log(2 sqrt(p (1 - p))) for 0 < p < 1/2.
double fc_decay_length(double p);

/// Pauli noise on a 2N-qubit cluster ring: one Kraus operator per anchor,
/// all applied at a shared rate. Patches are the syndromes of the Kraus
/// operators with respect to the cluster generators.
class NoiseSpec {
   public:
    enum class Kind { onsite_X, onsite_Z, general };

    static NoiseSpec onsite(size_t two_n, char pauli);
    /// Throws std::invalid_argument if a Kraus operator fails to commute
    /// with both sublattice symmetries.
    static NoiseSpec general(size_t two_n, std::vector<PauliOperator> kraus);

    Kind kind() const {
        return kind_;
    }
    size_t two_n() const {
        return two_n_;
    }
    const std::vector<PauliOperator> &kraus() const {
        return kraus_;
    }
    const std::vector<BitVector> &patches() const {
        return patches_;
    }
    /// True when every Kraus operator commutes with both symmetries.
    bool symmetric() const;

   private:
    NoiseSpec(Kind kind, size_t two_n, std::vector<PauliOperator> kraus);

    Kind kind_;
    size_t two_n_;
    std::vector<PauliOperator> kraus_;
    std::vector<BitVector> patches_;
};

/// Syndrome of P: bit j set iff P anticommutes with generator K_j of the ring.
BitVector cluster_syndrome(const PauliOperator &p);

/// The charged operator O = O_x O_y^dagger and its syndrome.
struct ChargedOperatorPair {
    PauliOperator op;
    BitVector syndrome;

    static ChargedOperatorPair from_operator(PauliOperator op);
    /// Z_x Z_y on a ring of two_n qubits.
    static ChargedOperatorPair z_pair(size_t two_n, size_t x, size_t y);
};

/// Which noise patches, XORed together, reproduce the charged syndrome.
/// Empty if no such decomposition exists.
std::optional<BitVector> patch_decomposition(const NoiseSpec &noise, const ChargedOperatorPair &charged);

/// Fidelity correlator under general symmetric Pauli noise.
///
/// When the kernel of the patch map is spanned by disjoint patch classes,
/// the result is a product of log_class_overlap factors. Otherwise the
/// syndrome distribution is enumerated exactly (2N <= 24).
FidelityResult fc_1d_general(double p, const NoiseSpec &noise, const ChargedOperatorPair &charged);

/// Same quantity by direct enumeration of error patterns (2N <= 24).
double fc_1d_general_enum(double p, const NoiseSpec &noise, const ChargedOperatorPair &charged);

struct Fc2dMode {
    enum class Kind { factorized, brute };
    Kind kind = Kind::factorized;
    /// Brute mode: spin rows of the plaquette model and boundary terms.
    size_t height = 0;
    bool include_boundary = true;
};

/// Fidelity correlator of the w x h rectangle on a cylinder whose rows have
/// `width` plaquette-model spins. Factorized mode multiplies h copies of the
/// 1D ring result at separation 2w.
FidelityResult fc_2d(size_t width, size_t w, size_t h, double p, const Fc2dMode &mode);

}  // namespace mixsspt

#endif
