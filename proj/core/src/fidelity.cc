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

#include "mixsspt/fidelity.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "mixsspt/cluster.h"
#include "mixsspt/log_value.h"
#include "mixsspt/statmech.h"

namespace mixsspt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_class_overlap(size_t size, size_t weight, double p) {
    require_rate(p);
    if (weight > size) {
        throw std::invalid_argument("class weight exceeds class size");
    }
    if (p == 0.5 || weight == 0 || weight == size) {
        // Flipping a whole class maps the class distribution onto itself.
        return 0.0;
    }
    double lt = std::log(p) - std::log1p(-p);
    long long n = static_cast<long long>(size);
    long long s = static_cast<long long>(weight);
    std::vector<double> terms;
    terms.reserve(static_cast<size_t>((s + 1) * (n - s + 1)));
    for (long long a = 0; a <= s; a++) {
        double lb_a = log_binomial(s, a);
        for (long long b = 0; b <= n - s; b++) {
            long long e = a + b;
            long long f = s - a + b;
            double first = log_add_exp(pow_log(n - e, lt), pow_log(e, lt));
            double second = log_add_exp(pow_log(n - f, lt), pow_log(f, lt));
            terms.push_back(lb_a + log_binomial(n - s, b) + 0.5 * (first + second));
        }
    }
    double prefactor = static_cast<double>(n) * std::log1p(-p) - std::log(2.0);
    return std::min(prefactor + log_sum_exp(terms), 0.0);
}

FidelityResult fc_1d_exact(size_t n, double p, size_t sep) {
    require_rate(p);
    if (n < 2) {
        throw std::invalid_argument("fc_1d_exact needs N >= 2");
    }
    if (sep % 2 != 0 || sep < 2 || sep > 2 * n) {
        throw std::invalid_argument("separation must be even with 2 <= sep <= 2N");
    }
    FidelityResult r{0.0, 0.0, n, p, sep};
    r.log_value = log_class_overlap(n, sep / 2, p);
    r.value = std::exp(r.log_value);
    return r;
}

double fc_decay_length(double p) {
    if (!(p > 0.0 && p < 0.5)) {
        throw std::invalid_argument("decay length needs 0 < p < 1/2");
    }
    return -1.0 / std::log(2.0 * std::sqrt(p * (1.0 - p)));
}

BitVector cluster_syndrome(const PauliOperator &p) {
    size_t n = p.n_qubits();
    BitVector s(n);
    // K_j = Z_{j-1} X_j Z_{j+1} anticommutes with P iff z_j + x_{j-1} + x_{j+1} is odd.
    for (size_t j = 0; j < n; j++) {
        bool v = p.z(j) ^ p.x((j + n - 1) % n) ^ p.x((j + 1) % n);
        s.set(j, v);
    }
    return s;
}

NoiseSpec::NoiseSpec(Kind kind, size_t two_n, std::vector<PauliOperator> kraus)
    : kind_(kind), two_n_(two_n), kraus_(std::move(kraus)) {
    if (two_n < 4 || two_n % 2 != 0) {
        throw std::invalid_argument("noise spec needs an even ring of at least 4 qubits");
    }
    for (const auto &k : kraus_) {
        if (k.n_qubits() != two_n) {
            throw std::invalid_argument("Kraus operator size does not match the ring");
        }
        if (!k.is_hermitian()) {
            throw std::invalid_argument("Kraus operator " + k.str() + " is not Hermitian");
        }
        patches_.push_back(cluster_syndrome(k));
    }
}

NoiseSpec NoiseSpec::onsite(size_t two_n, char pauli) {
    Kind kind;
    if (pauli == 'X') {
        kind = Kind::onsite_X;
    } else if (pauli == 'Z') {
        kind = Kind::onsite_Z;
    } else {
        throw std::invalid_argument("on-site noise must be X or Z");
    }
    return NoiseSpec(kind, two_n, onsite_kraus(two_n, pauli));
}

NoiseSpec NoiseSpec::general(size_t two_n, std::vector<PauliOperator> kraus) {
    NoiseSpec spec(Kind::general, two_n, std::move(kraus));
    if (!spec.symmetric()) {
        throw std::invalid_argument("general noise must commute with both sublattice symmetries");
    }
    Region a = sublattice_a(two_n);
    Region b = sublattice_b(two_n);
    for (const auto &u : spec.patches_) {
        size_t na = 0, nb = 0;
        for (size_t q : a) {
            na += u.get(q);
        }
        for (size_t q : b) {
            nb += u.get(q);
        }
        if (na % 2 || nb % 2) {
            throw std::invalid_argument("noise patch has odd weight on a sublattice");
        }
    }
    return spec;
}

bool NoiseSpec::symmetric() const {
    PauliOperator ga = symmetry_a(two_n_);
    PauliOperator gb = symmetry_b(two_n_);
    return std::all_of(kraus_.begin(), kraus_.end(),
                       [&](const PauliOperator &k) { return k.commutes_with(ga) && k.commutes_with(gb); });
}

ChargedOperatorPair ChargedOperatorPair::from_operator(PauliOperator op) {
    BitVector s = cluster_syndrome(op);
    return ChargedOperatorPair{std::move(op), std::move(s)};
}

ChargedOperatorPair ChargedOperatorPair::z_pair(size_t two_n, size_t x, size_t y) {
    if (x == y || x >= two_n || y >= two_n) {
        throw std::invalid_argument("charged pair needs two distinct sites on the ring");
    }
    PauliOperator op(two_n);
    op.set(x, 'Z');
    op.set(y, 'Z');
    return from_operator(std::move(op));
}

std::optional<BitVector> patch_decomposition(const NoiseSpec &noise, const ChargedOperatorPair &charged) {
    if (charged.op.n_qubits() != noise.two_n()) {
        throw std::invalid_argument("charged operator size does not match the noise");
    }
    return gf2_solve(noise.patches(), charged.syndrome);
}

namespace {

struct PatchClasses {
    std::vector<std::vector<size_t>> classes;
    bool factorizes = false;
};

// Groups patches by their membership pattern across a kernel basis and
// checks that each group is itself a kernel vector.
PatchClasses patch_classes(const std::vector<BitVector> &patches) {
    std::vector<BitVector> kernel = gf2_kernel(patches);
    size_t m = patches.size();
    std::map<std::vector<bool>, std::vector<size_t>> groups;
    for (size_t j = 0; j < m; j++) {
        std::vector<bool> signature(kernel.size());
        for (size_t k = 0; k < kernel.size(); k++) {
            signature[k] = kernel[k].get(j);
        }
        groups[signature].push_back(j);
    }
    PatchClasses out;
    for (auto &[sig, members] : groups) {
        out.classes.push_back(members);
    }
    std::sort(out.classes.begin(), out.classes.end());
    if (out.classes.size() != kernel.size()) {
        return out;
    }
    for (const auto &cls : out.classes) {
        BitVector acc(patches[0].size());
        for (size_t j : cls) {
            acc ^= patches[j];
        }
        if (acc.any()) {
            return out;
        }
    }
    out.factorizes = true;
    return out;
}

}  // namespace

double fc_1d_general_enum(double p, const NoiseSpec &noise, const ChargedOperatorPair &charged) {
    require_rate(p);
    size_t m = noise.patches().size();
    size_t n = noise.two_n();
    if (m > 24 || n > 64) {
        throw std::invalid_argument("error-pattern enumeration is limited to 24 noise sites");
    }
    auto word = [](const BitVector &b) { return b.words().empty() ? uint64_t{0} : b.words()[0]; };
    std::vector<uint64_t> patch_words;
    for (const auto &u : noise.patches()) {
        patch_words.push_back(word(u));
    }
    uint64_t r = word(charged.syndrome);
    std::unordered_map<uint64_t, double> pi;
    double lp = std::log(p), lq = std::log1p(-p);
    uint64_t syndrome = 0;
    size_t count = size_t{1} << m;
    for (size_t k = 0; k < count; k++) {
        if (k) {
            syndrome ^= patch_words[std::countr_zero(k)];
        }
        // Gray code: pattern k ^ (k >> 1) has the syndrome built above.
        size_t weight = std::popcount(k ^ (k >> 1));
        double lw = pow_log(static_cast<long long>(weight), lp) + pow_log(static_cast<long long>(m - weight), lq);
        pi[syndrome] += std::exp(lw);
    }
    NeumaierSum total;
    for (const auto &[s, v] : pi) {
        auto it = pi.find(s ^ r);
        if (it != pi.end()) {
            total.add(std::sqrt(v * it->second));
        }
    }
    return std::min(total.value(), 1.0);
}

FidelityResult fc_1d_general(double p, const NoiseSpec &noise, const ChargedOperatorPair &charged) {
    require_rate(p);
    if (!noise.symmetric()) {
        throw std::invalid_argument("fidelity correlator needs symmetric noise");
    }
    auto r = patch_decomposition(noise, charged);
    if (!r) {
        throw std::invalid_argument("charged syndrome is not a sum of noise patches; the correlator vanishes");
    }
    FidelityResult out{0.0, 0.0, noise.two_n() / 2, p, 0};
    if (p == 0.5) {
        out.value = 1.0;
        return out;
    }
    PatchClasses pc = patch_classes(noise.patches());
    if (pc.factorizes) {
        double total = 0.0;
        for (const auto &cls : pc.classes) {
            size_t weight = 0;
            for (size_t j : cls) {
                weight += r->get(j);
            }
            total += log_class_overlap(cls.size(), weight, p);
        }
        out.log_value = total;
        out.value = std::exp(total);
        return out;
    }
    out.value = fc_1d_general_enum(p, noise, charged);
    out.log_value = out.value > 0.0 ? std::log(out.value) : kNegInf;
    return out;
}

FidelityResult fc_2d(size_t width, size_t w, size_t h, double p, const Fc2dMode &mode) {
    require_rate(p);
    if (width < 2 || width % 2 != 0) {
        throw std::invalid_argument("cylinder circumference must be even");
    }
    if (w == 0 || w >= width || h == 0) {
        throw std::invalid_argument("rectangle must have 0 < w < width and h > 0");
    }
    FidelityResult out{1.0, 0.0, width, p, 2 * w};
    if (mode.kind == Fc2dMode::Kind::factorized) {
        if (p == 0.5) {
            return out;
        }
        double row = fc_1d_exact(width, p, 2 * w).log_value;
        double total = 0.0;
        for (size_t k = 0; k < h; k++) {
            total += row;
        }
        out.log_value = total;
        out.value = std::exp(total);
        return out;
    }
    PlaquetteModel model{width, mode.height, p == 0.5 ? 0.0 : beta_from_p(p), mode.include_boundary};
    model.validate();
    uint64_t corners = rectangle_corners(model, w, h);
    if (p == 0.5) {
        return out;
    }
    std::vector<double> table = pim_correlator_table(model);
    std::vector<uint64_t> span = plaquette_span(model);
    NeumaierSum num, den;
    for (uint64_t s : span) {
        double a = std::max(table[s], 0.0);
        double b = std::max(table[s ^ corners], 0.0);
        den.add(a);
        num.add(std::sqrt(a * b));
    }
    out.value = std::min(num.value() / den.value(), 1.0);
    out.log_value = out.value > 0.0 ? std::log(out.value) : kNegInf;
    return out;
}

}  // namespace mixsspt
