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

#ifndef MIXSSPT_CLUSTER_H
#define MIXSSPT_CLUSTER_H

#include <vector>

#include "mixsspt/pauli.h"

namespace mixsspt {

// Sites are 0-indexed. Sublattice A holds the even indices 0, 2, 4, ...
// and sublattice B the odd ones.

/// Ring cluster state on two_n qubits with generators Z_{j-1} X_j Z_{j+1}.
StabilizerTableau build_cluster_1d(size_t two_n);

Region sublattice_a(size_t two_n);
Region sublattice_b(size_t two_n);

/// Product of X over sublattice A (or B) of a two_n ring.
PauliOperator symmetry_a(size_t two_n);
PauliOperator symmetry_b(size_t two_n);

/// On-site Kraus operators: `pauli` on every one of the n qubits.
std::vector<PauliOperator> onsite_kraus(size_t n_qubits, char pauli);

/// Rotated square lattice on a cylinder.
///
/// Row y holds `width` sites; site (x, y) sits at horizontal position
/// 2x + (y & 1) with period 2 * width, and its neighbors are the sites of
/// rows y - 1 and y + 1 at horizontal offset +-1. Even rows form
/// sublattice A and odd rows sublattice B. Rows 0 and height - 1 are open
/// edges whose generators keep only their two in-lattice Z legs.
class CylinderGeometry {
   public:
    CylinderGeometry(size_t width, size_t height);

    size_t width() const {
        return width_;
    }
    size_t height() const {
        return height_;
    }
    size_t n_qubits() const {
        return width_ * height_;
    }
    size_t index(size_t x, size_t y) const {
        return y * width_ + x;
    }
    std::vector<size_t> neighbors(size_t x, size_t y) const;
    /// Qubits of rows y0 .. height - 1.
    Region rows_from(size_t y0) const;
    /// Product of X over row y; an exact symmetry of the cluster state.
    PauliOperator row_symmetry(size_t y) const;

   private:
    size_t width_;
    size_t height_;
};

StabilizerTableau build_cluster_2d_cylinder(size_t width, size_t height);

}  // namespace mixsspt

#endif
