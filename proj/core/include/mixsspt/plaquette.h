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

#ifndef MIXSSPT_PLAQUETTE_H
#define MIXSSPT_PLAQUETTE_H

#include <cstdint>
#include <vector>

namespace mixsspt {

constexpr size_t kMaxPlaquetteSpins = 22;

/// Plaquette Ising model on a cylinder of `width` x `height` spins,
/// periodic in x and open in y. Spin (x, y) is bit y * width + x.
///
/// Energy: -beta * (sum of four-spin products over the (width) x (height - 1)
/// elementary plaquettes), plus, when include_boundary is set, -beta times
/// the nearest-neighbor bonds along the first and last rows.
struct PlaquetteModel {
    size_t width = 4;
    size_t height = 2;
    double beta = 0.0;
    bool include_boundary = false;

    /// Throws std::invalid_argument on odd width or too many spins.
    void validate() const;
    size_t n_spins() const {
        return width * height;
    }
    size_t spin(size_t x, size_t y) const {
        return y * width + (x % width);
    }
    /// Spin mask of plaquette (x, y): rows y and y + 1, columns x and x + 1.
    uint64_t plaquette_mask(size_t x, size_t y) const;
    std::vector<uint64_t> plaquettes() const;
};

/// <prod_{i in S} s_i> by direct enumeration of all configurations.
double pim_brute_correlator(const PlaquetteModel &model, uint64_t subset);

/// Every correlator at once: entry S of the result is <s_S>.
/// Uses a Walsh-Hadamard transform of the Boltzmann weights.
std::vector<double> pim_correlator_table(const PlaquetteModel &model);

/// Correlator of a plaquette-generated subset through the row variables
/// tau(x, y) = s(x, y) s(x, y + 1), as a product of periodic Ising chain
/// correlators. Valid without boundary terms; throws if the subset is not
/// an XOR of plaquettes.
double pim_tau_correlator(const PlaquetteModel &model, uint64_t subset);

/// Distinct XORs of plaquettes, in a deterministic order.
std::vector<uint64_t> plaquette_span(const PlaquetteModel &model);

/// Corner mask of the w x h rectangle with lower-left spin (0, 0).
uint64_t rectangle_corners(const PlaquetteModel &model, size_t w, size_t h);

}  // namespace mixsspt

#endif
