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

#include "mixsspt/negativity.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "mixsspt/cluster.h"
#include "mixsspt/log_value.h"
#include "mixsspt/pauli.h"

namespace mixsspt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;
}  // namespace

void McConfig::validate() const {
    if (n_batches < 16) {
        throw std::invalid_argument("n_batches must be at least 16");
    }
    if (n_samples < n_batches) {
        throw std::invalid_argument("n_samples must be at least n_batches");
    }
    if (proposal_rate && !(*proposal_rate > 0.0 && *proposal_rate <= 0.5)) {
        throw std::invalid_argument("proposal rate must lie in (0, 1/2]");
    }
}

BoundaryRates BoundaryRates::from_betas(double beta_x, double beta_z) {
    auto rate = [](double b) {
        if (!(b >= 0.0)) {
            throw std::invalid_argument("boundary beta must be nonnegative");
        }
        return std::isinf(b) ? 0.5 : -0.5 * std::expm1(-2.0 * b);
    };
    return BoundaryRates{rate(beta_x), rate(beta_z)};
}

void BoundaryRates::validate() const {
    require_rate(p_x, "p_x");
    require_rate(p_z, "p_z");
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv(kWorkersEnv)) {
        try {
            int v = std::stoi(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

bool all_rates(const ChainModel &model, double value) {
    return std::all_of(model.rates().begin(), model.rates().end(), [&](double p) { return p == value; });
}

ChainModel model_for(size_t two_n, double p, NoiseKind kind) {
    switch (kind) {
        case NoiseKind::X:
            return ChainModel::x_noise(two_n, p);
        case NoiseKind::Z:
            return ChainModel::z_noise(two_n, p);
        case NoiseKind::Mixed:
            return ChainModel::mixed(two_n, p, p);
    }
    throw std::invalid_argument("unknown noise kind");
}

// Per-site log rates with the error-pattern to subset map of one noise type.
class SyndromeSampler {
   public:
    SyndromeSampler(const std::vector<double> &rates, bool x_type) : x_type_(x_type) {
        for (double p : rates) {
            require_rate(p);
            log_p_.push_back(std::log(p));
            log_q_.push_back(std::log1p(-p));
            threshold_.push_back(p == 0.5 ? (uint64_t{1} << 63) : static_cast<uint64_t>(std::ldexp(p, 64)));
        }
        e_.assign(rates.size(), 0);
    }

    void draw(std::mt19937_64 &rng, SyndromeSample &out) {
        size_t n = log_p_.size();
        if (out.subset.size() != n) {
            out.subset = BitVector(n);
        }
        for (size_t i = 0; i < n; i++) {
            e_[i] = rng() < threshold_[i];
        }
        auto &words = out.subset.words();
        std::fill(words.begin(), words.end(), 0);
        if (x_type_) {
            for (size_t j = 0; j < n; j++) {
                if (e_[(j + n - 1) % n] ^ e_[(j + 1) % n]) {
                    out.subset.flip(j);
                }
            }
        } else {
            for (size_t j = 0; j < n; j++) {
                if (e_[j]) {
                    out.subset.flip(j);
                }
            }
        }
        out.log_pi = log_class_probability();
    }

    double log_probability(const BitVector &subset) {
        size_t n = log_p_.size();
        if (subset.size() != n) {
            throw std::invalid_argument("subset length must equal the chain length");
        }
        if (!x_type_) {
            for (size_t j = 0; j < n; j++) {
                e_[j] = subset.get(j);
            }
            return log_class_probability();
        }
        // Subset bit j is e_{j-1} ^ e_{j+1}: integrate each sublattice
        // around the ring starting from e = 0 on its first site.
        for (size_t start : {size_t{1}, size_t{0}}) {
            uint8_t v = 0;
            e_[start] = 0;
            for (size_t k = 0; k + 1 < n / 2; k++) {
                size_t site = (start + 2 * k) % n;
                v ^= subset.get((site + 1) % n);
                e_[(site + 2) % n] = v;
            }
            uint8_t closing = v ^ subset.get((start + n - 1) % n);
            if (closing != e_[start]) {
                return kNegInf;
            }
        }
        return log_class_probability();
    }

   private:
    double pattern_log(size_t parity, bool complement) const {
        double s = 0.0;
        for (size_t i = parity; i < log_p_.size(); i += (x_type_ ? 2 : 1)) {
            bool err = e_[i] ^ complement;
            double term = err ? log_p_[i] : log_q_[i];
            if (term == kNegInf) {
                return kNegInf;
            }
            s += term;
        }
        return s;
    }

    double log_class_probability() const {
        if (!x_type_) {
            return pattern_log(0, false);
        }
        // Flipping every error on one sublattice leaves the subset unchanged.
        double a = log_add_exp(pattern_log(0, false), pattern_log(0, true));
        double b = log_add_exp(pattern_log(1, false), pattern_log(1, true));
        return a + b;
    }

    bool x_type_;
    std::vector<double> log_p_;
    std::vector<double> log_q_;
    std::vector<uint64_t> threshold_;
    std::vector<uint8_t> e_;
};

}  // namespace

double log_syndrome_probability(const std::vector<double> &rates, bool x_type, const BitVector &subset) {
    SyndromeSampler sampler(rates, x_type);
    return sampler.log_probability(subset);
}

void sample_syndrome(const std::vector<double> &proposal, bool x_type, std::mt19937_64 &rng, SyndromeSample &out) {
    SyndromeSampler sampler(proposal, x_type);
    sampler.draw(rng, out);
}

SyndromeSample sample_syndrome(size_t two_n, double p, NoiseKind kind, std::mt19937_64 &rng) {
    SyndromeSample out;
    sample_syndrome(std::vector<double>(two_n, p), kind != NoiseKind::Z, rng, out);
    return out;
}

namespace {

size_t endpoint_rank(size_t two_n, double p, NoiseKind kind) {
    StabilizerTableau tab = build_cluster_1d(two_n);
    if (p == 0.5) {
        tab = maximal_dephase(tab, onsite_kraus(two_n, kind == NoiseKind::Z ? 'Z' : 'X'));
    } else if (p != 0.0) {
        throw std::invalid_argument("the stabilizer route only covers p = 0 and p = 1/2");
    }
    return negativity_stabilizer(tab, sublattice_a(two_n)).rank;
}

}  // namespace

double negativity_stabilizer_endpoint(size_t two_n, double p, NoiseKind kind) {
    return 0.5 * static_cast<double>(endpoint_rank(two_n, p, kind)) * kLn2;
}

double trace_norm_exact_enum(const ChainModel &model) {
    if (model.two_n() > 20) {
        throw std::invalid_argument("exact enumeration is limited to 2N <= 20");
    }
    if (all_rates(model, 0.5)) {
        return 0.0;
    }
    ChainKernel kernel(model);
    double log_sum = kernel.sum_abs_numerators().log_abs();
    return log_sum - kernel.partition().log_abs() - normalization_constant(model);
}

double trace_norm_exact_enum(size_t two_n, double p, NoiseKind kind) {
    return trace_norm_exact_enum(model_for(two_n, p, kind));
}

namespace {

struct BatchResult {
    double log_mean = kNegInf;
    uint64_t count = 0;
};

BatchResult run_batch(const ChainModel &model, const std::vector<double> &proposal, uint64_t seed, uint64_t batch,
                      uint64_t count) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(batch),
                      static_cast<uint32_t>(batch >> 32)};
    std::mt19937_64 rng(seq);
    ChainKernel kernel(model);
    SyndromeSampler sampler(proposal, model.x_type());
    double offset = static_cast<double>(model.two_n()) * kLn2 + model.log_weight_all_plus();
    std::vector<double> terms;
    terms.reserve(count);
    SyndromeSample s;
    for (uint64_t k = 0; k < count; k++) {
        sampler.draw(rng, s);
        double num = kernel.log_abs_numerator(s.subset);
        terms.push_back(num - offset - s.log_pi);
    }
    return BatchResult{log_sum_exp(terms) - std::log(static_cast<double>(count)), count};
}

std::vector<double> proposal_rates(const ChainModel &model, const McConfig &cfg) {
    if (cfg.proposal_rate) {
        return std::vector<double>(model.two_n(), *cfg.proposal_rate);
    }
    // Proposals drawn at the noise rates put almost no weight on the
    // syndromes that dominate the trace norm when p is small, so every
    // site is sampled at no less than kProposalFloor.
    std::vector<double> rates = model.rates();
    for (double &q : rates) {
        q = std::max(q, kProposalFloor);
    }
    return rates;
}

}  // namespace

McEstimate trace_norm_mc(const ChainModel &model, const McConfig &cfg) {
    cfg.validate();
    McEstimate out;
    out.n_samples = cfg.n_samples;
    out.seed = cfg.seed;
    if (all_rates(model, 0.0) || all_rates(model, 0.5)) {
        out.exact = true;
        out.log_value = all_rates(model, 0.0) ? (static_cast<double>(model.two_n() / 2) - 1.0) * kLn2 : 0.0;
        return out;
    }
    std::vector<double> proposal = proposal_rates(model, cfg);
    uint64_t k = cfg.n_batches;
    std::vector<BatchResult> batches(k);
    unsigned workers = std::min<unsigned>(resolve_workers(cfg.workers), static_cast<unsigned>(k));
    auto work = [&](unsigned w) {
        for (uint64_t b = w; b < k; b += workers) {
            uint64_t count = cfg.n_samples / k + (b < cfg.n_samples % k ? 1 : 0);
            batches[b] = run_batch(model, proposal, cfg.seed, b, count);
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    double top = kNegInf;
    for (const auto &b : batches) {
        top = std::max(top, b.log_mean);
    }
    // Ordered reduction over batches: mean of batch means and their spread.
    NeumaierSum weighted, plain;
    for (const auto &b : batches) {
        double m = std::exp(b.log_mean - top);
        weighted.add(m * static_cast<double>(b.count));
        plain.add(m);
    }
    double mean = weighted.value() / static_cast<double>(cfg.n_samples);
    double batch_avg = plain.value() / static_cast<double>(k);
    NeumaierSum sq;
    for (const auto &b : batches) {
        double d = std::exp(b.log_mean - top) - batch_avg;
        sq.add(d * d);
    }
    double sd = std::sqrt(sq.value() / static_cast<double>(k - 1));
    out.log_value = top + std::log(mean);
    out.std_err = sd / (std::sqrt(static_cast<double>(k)) * mean);
    return out;
}

McEstimate trace_norm_mc(size_t two_n, double p, NoiseKind kind, const McConfig &cfg) {
    return trace_norm_mc(model_for(two_n, p, kind), cfg);
}

McEstimate spurious_ten(size_t n, double p, NoiseKind kind, const McConfig &cfg) {
    require_rate(p);
    if (n < 2) {
        throw std::invalid_argument("spurious TEN needs N >= 2");
    }
    McEstimate out;
    out.seed = cfg.seed;
    if (p == 0.0 || p == 0.5) {
        out.exact = true;
        // Combine the ranks before scaling so the endpoint is an exact multiple of log 2.
        long long big = static_cast<long long>(endpoint_rank(4 * n, p, kind));
        long long small = static_cast<long long>(endpoint_rank(2 * n, p, kind));
        out.log_value = static_cast<double>((big - 2 * small) / 2) * kLn2;
        return out;
    }
    McEstimate small = trace_norm_mc(2 * n, p, kind, cfg);
    McConfig big_cfg = cfg;
    big_cfg.seed = cfg.seed + 1;
    McEstimate big = trace_norm_mc(4 * n, p, kind, big_cfg);
    out.log_value = big.log_value - 2.0 * small.log_value;
    out.std_err = std::sqrt(big.std_err * big.std_err + 4.0 * small.std_err * small.std_err);
    out.n_samples = small.n_samples + big.n_samples;
    return out;
}

McEstimate toric_boundary_negativity(size_t two_n, const BoundaryRates &rates, const McConfig &cfg) {
    rates.validate();
    return trace_norm_mc(ChainModel::mixed(two_n, rates.p_x, rates.p_z), cfg);
}

double toric_boundary_negativity_exact(size_t two_n, const BoundaryRates &rates) {
    rates.validate();
    return trace_norm_exact_enum(ChainModel::mixed(two_n, rates.p_x, rates.p_z));
}

}  // namespace mixsspt
