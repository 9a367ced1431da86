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

#include "mixsspt/plaquette.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "mixsspt/gf2.h"
#include "mixsspt/log_value.h"
#include "mixsspt/statmech.h"

namespace mixsspt {

void PlaquetteModel::validate() const {
    if (width < 2 || width % 2 != 0) {
        throw std::invalid_argument("plaquette model width must be even");
    }
    if (height < 1) {
        throw std::invalid_argument("plaquette model height must be positive");
    }
    if (n_spins() > kMaxPlaquetteSpins) {
        throw std::invalid_argument("plaquette model exceeds 22 spins");
    }
    if (!(beta >= 0.0) || std::isinf(beta)) {
        throw std::invalid_argument("plaquette model needs finite beta >= 0");
    }
}

uint64_t PlaquetteModel::plaquette_mask(size_t x, size_t y) const {
    uint64_t m = 0;
    for (size_t dy = 0; dy < 2; dy++) {
        for (size_t dx = 0; dx < 2; dx++) {
            m |= uint64_t{1} << spin(x + dx, y + dy);
        }
    }
    return m;
}

std::vector<uint64_t> PlaquetteModel::plaquettes() const {
    std::vector<uint64_t> out;
    for (size_t y = 0; y + 1 < height; y++) {
        for (size_t x = 0; x < width; x++) {
            out.push_back(plaquette_mask(x, y));
        }
    }
    return out;
}

namespace {

// Bonds whose products enter the energy, as two- or four-spin masks.
std::vector<uint64_t> interaction_terms(const PlaquetteModel &m) {
    std::vector<uint64_t> terms = m.plaquettes();
    if (m.include_boundary) {
        for (size_t y : {size_t{0}, m.height - 1}) {
            for (size_t x = 0; x < m.width; x++) {
                terms.push_back((uint64_t{1} << m.spin(x, y)) | (uint64_t{1} << m.spin(x + 1, y)));
            }
            if (m.height == 1) {
                break;
            }
        }
    }
    return terms;
}

// Boltzmann weights relative to the ground state, exp(-beta * (E - E0)).
std::vector<double> boltzmann_weights(const PlaquetteModel &m) {
    std::vector<uint64_t> terms = interaction_terms(m);
    size_t count = size_t{1} << m.n_spins();
    std::vector<double> w(count);
    // Each violated term costs 2 beta.
    std::vector<double> table(terms.size() + 1);
    for (size_t k = 0; k < table.size(); k++) {
        table[k] = std::exp(-2.0 * m.beta * static_cast<double>(k));
    }
    for (size_t c = 0; c < count; c++) {
        size_t broken = 0;
        for (uint64_t t : terms) {
            broken += std::popcount(c & t) & 1;
        }
        w[c] = table[broken];
    }
    return w;
}

}  // namespace

double pim_brute_correlator(const PlaquetteModel &model, uint64_t subset) {
    model.validate();
    if (subset >> model.n_spins()) {
        throw std::invalid_argument("subset has spins outside the lattice");
    }
    std::vector<double> w = boltzmann_weights(model);
    NeumaierSum num, den;
    for (size_t c = 0; c < w.size(); c++) {
        den.add(w[c]);
        num.add((std::popcount(c & subset) & 1) ? -w[c] : w[c]);
    }
    return num.value() / den.value();
}

std::vector<double> pim_correlator_table(const PlaquetteModel &model) {
    model.validate();
    std::vector<double> v = boltzmann_weights(model);
    size_t n = v.size();
    for (size_t len = 1; len < n; len <<= 1) {
        for (size_t i = 0; i < n; i += 2 * len) {
            for (size_t j = i; j < i + len; j++) {
                double a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
    double z = v[0];
    for (double &x : v) {
        x /= z;
    }
    return v;
}

namespace {

BitVector to_bits(uint64_t mask, size_t n) {
    BitVector b(n);
    for (size_t k = 0; k < n; k++) {
        b.set(k, (mask >> k) & 1);
    }
    return b;
}

}  // namespace

double pim_tau_correlator(const PlaquetteModel &model, uint64_t subset) {
    model.validate();
    std::vector<uint64_t> plaqs = model.plaquettes();
    std::vector<BitVector> vecs;
    for (uint64_t p : plaqs) {
        vecs.push_back(to_bits(p, model.n_spins()));
    }
    auto coeffs = gf2_solve(vecs, to_bits(subset, model.n_spins()));
    if (!coeffs) {
        throw std::invalid_argument("subset is not generated by plaquettes");
    }
    double t = std::tanh(model.beta);
    double value = 1.0;
    for (size_t y = 0; y + 1 < model.height; y++) {
        BitVector row(model.width);
        for (size_t x = 0; x < model.width; x++) {
            if (coeffs->get(y * model.width + x)) {
                row.flip(x);
                row.flip((x + 1) % model.width);
            }
        }
        ErrorPattern walls = ErrorPattern::from_spin_subset(row);
        value *= std::exp(log_ising_correlator(t, model.width, walls.weight()));
    }
    return value;
}

std::vector<uint64_t> plaquette_span(const PlaquetteModel &model) {
    model.validate();
    std::vector<uint64_t> basis;
    for (uint64_t p : model.plaquettes()) {
        uint64_t v = p;
        for (uint64_t b : basis) {
            uint64_t lead = uint64_t{1} << (63 - std::countl_zero(b));
            if (v & lead) {
                v ^= b;
            }
        }
        if (v) {
            // Keep the basis in echelon form with distinct leading bits.
            uint64_t lead = uint64_t{1} << (63 - std::countl_zero(v));
            for (uint64_t &b : basis) {
                if (b & lead) {
                    b ^= v;
                }
            }
            basis.push_back(v);
        }
    }
    std::vector<uint64_t> span(size_t{1} << basis.size());
    for (size_t k = 1; k < span.size(); k++) {
        size_t bit = std::countr_zero(k);
        span[k] = span[k & (k - 1)] ^ basis[bit];
    }
    return span;
}

uint64_t rectangle_corners(const PlaquetteModel &model, size_t w, size_t h) {
    if (w == 0 || w >= model.width || h == 0 || h >= model.height) {
        throw std::invalid_argument("rectangle does not fit in the plaquette model");
    }
    return (uint64_t{1} << model.spin(0, 0)) | (uint64_t{1} << model.spin(w, 0)) |
           (uint64_t{1} << model.spin(0, h)) | (uint64_t{1} << model.spin(w, h));
}

}  // namespace mixsspt
