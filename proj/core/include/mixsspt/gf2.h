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

#ifndef MIXSSPT_GF2_H
#define MIXSSPT_GF2_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixsspt {

/// Dense bit vector packed into 64-bit words.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits);

    size_t size() const {
        return num_bits_;
    }
    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value);
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }

    BitVector &operator^=(const BitVector &other);
    BitVector operator^(const BitVector &other) const;
    BitVector operator&(const BitVector &other) const;
    bool operator==(const BitVector &other) const = default;

    size_t popcount() const;
    bool any() const;
    /// Parity of popcount(*this & other).
    bool dot(const BitVector &other) const;
    /// Index of the lowest set bit, or size() if none.
    size_t first_set() const;

    const std::vector<uint64_t> &words() const {
        return words_;
    }
    std::vector<uint64_t> &words() {
        return words_;
    }

    std::string str() const;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// Rank over GF(2) of the given rows.
size_t gf2_rank(std::vector<BitVector> rows);

/// Coefficients r with XOR_j r_j * vectors[j] == target, if any exist.
std::optional<BitVector> gf2_solve(const std::vector<BitVector> &vectors, const BitVector &target);

/// Basis of the coefficient vectors r with XOR_j r_j * vectors[j] == 0.
std::vector<BitVector> gf2_kernel(const std::vector<BitVector> &vectors);

}  // namespace mixsspt

#endif
