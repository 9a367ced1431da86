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

#include "mixsspt/gf2.h"

#include <bit>
#include <stdexcept>

namespace mixsspt {

BitVector::BitVector(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
}

void BitVector::set(size_t k, bool value) {
    uint64_t mask = uint64_t{1} << (k & 63);
    if (value) {
        words_[k >> 6] |= mask;
    } else {
        words_[k >> 6] &= ~mask;
    }
}

BitVector &BitVector::operator^=(const BitVector &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVector size mismatch");
    }
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVector BitVector::operator^(const BitVector &other) const {
    BitVector r = *this;
    r ^= other;
    return r;
}

BitVector BitVector::operator&(const BitVector &other) const {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitVector size mismatch");
    }
    BitVector r = *this;
    for (size_t w = 0; w < words_.size(); w++) {
        r.words_[w] &= other.words_[w];
    }
    return r;
}

size_t BitVector::popcount() const {
    size_t n = 0;
    for (uint64_t w : words_) {
        n += std::popcount(w);
    }
    return n;
}

bool BitVector::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

bool BitVector::dot(const BitVector &other) const {
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

size_t BitVector::first_set() const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w]) {
            return w * 64 + std::countr_zero(words_[w]);
        }
    }
    return num_bits_;
}

std::string BitVector::str() const {
    std::string s;
    s.reserve(num_bits_);
    for (size_t k = 0; k < num_bits_; k++) {
        s.push_back(get(k) ? '1' : '0');
    }
    return s;
}

size_t gf2_rank(std::vector<BitVector> rows) {
    size_t rank = 0;
    for (size_t i = 0; i < rows.size(); i++) {
        size_t pivot = rows[i].first_set();
        if (pivot == rows[i].size()) {
            continue;
        }
        rank++;
        for (size_t j = i + 1; j < rows.size(); j++) {
            if (rows[j].get(pivot)) {
                rows[j] ^= rows[i];
            }
        }
    }
    return rank;
}

namespace {

// Row-reduces the vectors while tracking which input combination produced
// each reduced row. Returns (reduced, combos, pivots).
struct Reduction {
    std::vector<BitVector> reduced;
    std::vector<BitVector> combos;
    std::vector<size_t> pivots;
};

Reduction reduce(const std::vector<BitVector> &vectors) {
    Reduction out;
    size_t m = vectors.size();
    for (size_t j = 0; j < m; j++) {
        BitVector v = vectors[j];
        BitVector c(m);
        c.set(j, true);
        for (size_t k = 0; k < out.reduced.size(); k++) {
            if (out.pivots[k] != static_cast<size_t>(-1) && v.get(out.pivots[k])) {
                v ^= out.reduced[k];
                c ^= out.combos[k];
            }
        }
        size_t pivot = v.first_set();
        if (pivot == v.size()) {
            out.reduced.push_back(std::move(v));
            out.combos.push_back(std::move(c));
            out.pivots.push_back(static_cast<size_t>(-1));
            continue;
        }
        // Keep the basis fully reduced at existing pivots.
        for (size_t k = 0; k < out.reduced.size(); k++) {
            if (out.pivots[k] != static_cast<size_t>(-1) && out.reduced[k].get(pivot)) {
                out.reduced[k] ^= v;
                out.combos[k] ^= c;
            }
        }
        out.reduced.push_back(std::move(v));
        out.combos.push_back(std::move(c));
        out.pivots.push_back(pivot);
    }
    return out;
}

}  // namespace

std::optional<BitVector> gf2_solve(const std::vector<BitVector> &vectors, const BitVector &target) {
    Reduction red = reduce(vectors);
    BitVector v = target;
    BitVector c(vectors.size());
    for (size_t k = 0; k < red.reduced.size(); k++) {
        if (red.pivots[k] != static_cast<size_t>(-1) && v.get(red.pivots[k])) {
            v ^= red.reduced[k];
            c ^= red.combos[k];
        }
    }
    if (v.any()) {
        return std::nullopt;
    }
    return c;
}

std::vector<BitVector> gf2_kernel(const std::vector<BitVector> &vectors) {
    Reduction red = reduce(vectors);
    std::vector<BitVector> kernel;
    for (size_t k = 0; k < red.reduced.size(); k++) {
        if (red.pivots[k] == static_cast<size_t>(-1)) {
            kernel.push_back(red.combos[k]);
        }
    }
    return kernel;
}

}  // namespace mixsspt
