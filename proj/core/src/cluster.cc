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

#include "mixsspt/cluster.h"

#include <stdexcept>

namespace mixsspt {

StabilizerTableau build_cluster_1d(size_t two_n) {
    if (two_n < 4 || two_n % 2 != 0) {
        throw std::invalid_argument("cluster chain length must be even and at least 4");
    }
    std::vector<PauliOperator> gens;
    gens.reserve(two_n);
    for (size_t j = 0; j < two_n; j++) {
        PauliOperator k(two_n);
        k.set((j + two_n - 1) % two_n, 'Z');
        k.set(j, 'X');
        k.set((j + 1) % two_n, 'Z');
        gens.push_back(std::move(k));
    }
    return StabilizerTableau(two_n, std::move(gens));
}

Region sublattice_a(size_t two_n) {
    Region r;
    for (size_t j = 0; j < two_n; j += 2) {
        r.push_back(j);
    }
    return r;
}

Region sublattice_b(size_t two_n) {
    Region r;
    for (size_t j = 1; j < two_n; j += 2) {
        r.push_back(j);
    }
    return r;
}

namespace {
PauliOperator x_on(size_t n, const Region &region) {
    PauliOperator p(n);
    for (size_t q : region) {
        p.set(q, 'X');
    }
    return p;
}
}  // namespace

PauliOperator symmetry_a(size_t two_n) {
    return x_on(two_n, sublattice_a(two_n));
}

PauliOperator symmetry_b(size_t two_n) {
    return x_on(two_n, sublattice_b(two_n));
}

std::vector<PauliOperator> onsite_kraus(size_t n_qubits, char pauli) {
    std::vector<PauliOperator> out;
    out.reserve(n_qubits);
    for (size_t q = 0; q < n_qubits; q++) {
        out.push_back(PauliOperator::single(n_qubits, q, pauli));
    }
    return out;
}

CylinderGeometry::CylinderGeometry(size_t width, size_t height) : width_(width), height_(height) {
    if (width < 2 || width % 2 != 0) {
        throw std::invalid_argument("cylinder circumference must be even");
    }
    if (height < 1) {
        throw std::invalid_argument("cylinder height must be positive");
    }
}

std::vector<size_t> CylinderGeometry::neighbors(size_t x, size_t y) const {
    // Even rows connect to (x - 1, x) in adjacent odd rows, odd rows to (x, x + 1).
    std::vector<size_t> out;
    size_t left = (y & 1) ? x : (x + width_ - 1) % width_;
    size_t right = (y & 1) ? (x + 1) % width_ : x;
    for (int dy : {-1, 1}) {
        if ((dy < 0 && y == 0) || (dy > 0 && y + 1 == height_)) {
            continue;
        }
        size_t yy = y + dy;
        out.push_back(index(left, yy));
        out.push_back(index(right, yy));
    }
    return out;
}

Region CylinderGeometry::rows_from(size_t y0) const {
    Region r;
    for (size_t y = y0; y < height_; y++) {
        for (size_t x = 0; x < width_; x++) {
            r.push_back(index(x, y));
        }
    }
    return r;
}

PauliOperator CylinderGeometry::row_symmetry(size_t y) const {
    PauliOperator p(n_qubits());
    for (size_t x = 0; x < width_; x++) {
        p.set(index(x, y), 'X');
    }
    return p;
}

StabilizerTableau build_cluster_2d_cylinder(size_t width, size_t height) {
    CylinderGeometry geo(width, height);
    std::vector<PauliOperator> gens;
    gens.reserve(geo.n_qubits());
    for (size_t y = 0; y < height; y++) {
        for (size_t x = 0; x < width; x++) {
            PauliOperator k(geo.n_qubits());
            k.set(geo.index(x, y), 'X');
            for (size_t q : geo.neighbors(x, y)) {
                k.set(q, 'Z');
            }
            gens.push_back(std::move(k));
        }
    }
    return StabilizerTableau(geo.n_qubits(), std::move(gens));
}

}  // namespace mixsspt
