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

#ifndef MIXSSPT_STATMECH_H
#define MIXSSPT_STATMECH_H

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "mixsspt/gf2.h"
#include "mixsspt/log_value.h"

namespace mixsspt {

/// -1/2 log(1 - 2p); +infinity at p = 1/2. Throws outside [0, 1/2].
double beta_from_p(double p);

/// tanh(beta) = p / (1 - p).
double tanh_beta_from_p(double p);

void require_rate(double p, const char *what = "p");

struct IsingParams {
    double beta = 0.0;
    size_t n_sites = 0;

    static IsingParams from_p(double p, size_t n_sites);
    bool infinite() const;
};

/// Error locations e on a ring of n sites.
class ErrorPattern {
   public:
    explicit ErrorPattern(BitVector bits);
    /// The bond pattern whose domain walls produce the spin subset S.
    /// S must have even size.
    static ErrorPattern from_spin_subset(const BitVector &subset);

    const BitVector &bits() const {
        return bits_;
    }
    size_t size() const {
        return bits_.size();
    }
    size_t weight() const {
        return weight_;
    }

   private:
    BitVector bits_;
    size_t weight_;
};

/// Ferromagnetic ring correlator (t^(N-|e|) + t^|e|) / (1 + t^N), t = tanh(beta).
double ising_correlator_closed(const IsingParams &params, const ErrorPattern &e);

/// Same quantity from t and the error weight, in the log domain.
double log_ising_correlator(double tanh_beta, size_t n_sites, size_t weight);

/// Tr T^n for T = [[e^b, e^-b], [e^-b, e^b]].
LogScaled ising_partition_closed(double beta, size_t n_sites);

/// Tr[m^k] by repeated squaring with rescaling.
LogScaled log_trace_power(const Eigen::MatrixXcd &m, size_t k);

enum class TransferKind { ising, nonhermitian_X, nonhermitian_Z };

/// Small transfer matrix in the spin basis ordered (+, -) or
/// (++, +-, -+, --).
struct TransferOperator {
    TransferKind kind = TransferKind::ising;
    Eigen::MatrixXcd entries;

    static TransferOperator ising(double beta);
    /// Transfer matrix of the chain with couplings i pi/4 s_i s_(i+1),
    /// beta s_i s_(i+2) and field -i pi/2 s_i.
    static TransferOperator nonhermitian_x(double beta);
    /// Transfer matrix of the chain with couplings i pi/4 s_i s_(i+1) and
    /// field (beta - i pi/2) s_i, with the overall phase dropped.
    static TransferOperator nonhermitian_z(double beta);

    int dim() const {
        return static_cast<int>(entries.rows());
    }
    /// Tr T^k by repeated squaring with rescaling.
    LogScaled trace_power(size_t k) const;
};

/// Partition functions of the non-Hermitian chains of length 2N.
LogScaled partition_x_closed(double beta, size_t n);
LogScaled partition_z_closed(double beta, size_t n);

enum class NoiseKind { X, Z, Mixed };

std::string noise_kind_name(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string &name);

/// Non-Hermitian spin chain on 2N sites with one coupling strength per noise
/// site. X-type noise on qubit i couples spins i - 1 and i + 1; Z-type noise
/// on qubit i is a field on spin i.
///
/// Weights are W(s) = (-1)^{sum a_i a_(i+1)} exp(sum beta_i * coupling_i),
/// with a_i = (1 - s_i) / 2. They differ from exp(H) of the complex
/// Hamiltonian only by an overall constant, so every ratio agrees.
class ChainModel {
   public:
    static ChainModel x_noise(size_t two_n, double p);
    static ChainModel z_noise(size_t two_n, double p);
    /// X-type couplings with rate p_a on sublattice A qubits and p_b on B.
    static ChainModel mixed(size_t two_n, double p_a, double p_b);

    NoiseKind kind() const {
        return kind_;
    }
    bool x_type() const {
        return kind_ != NoiseKind::Z;
    }
    size_t two_n() const {
        return betas_.size();
    }
    const std::vector<double> &betas() const {
        return betas_;
    }
    const std::vector<double> &rates() const {
        return rates_;
    }
    bool uniform() const;
    /// log W(all +) = sum_i beta_i.
    double log_weight_all_plus() const;

   private:
    ChainModel(NoiseKind kind, std::vector<double> rates);

    NoiseKind kind_;
    std::vector<double> rates_;
    std::vector<double> betas_;
};

/// Evaluates sum_s s_S W(s) by a 4-state transfer product.
class ChainKernel {
   public:
    explicit ChainKernel(const ChainModel &model);

    size_t two_n() const {
        return two_n_;
    }
    /// Real signed value in log-scaled form.
    LogScaled numerator(const BitVector &subset) const;
    /// log |numerator(subset)|; -inf when it vanishes.
    double log_abs_numerator(const BitVector &subset) const;
    LogScaled partition() const;

    /// Sum over all 2^(2N) subsets of |numerator(S)|, by depth-first
    /// enumeration of the insertion choices.
    LogScaled sum_abs_numerators() const;

   private:
    using Block = std::array<double, 16>;
    // weights_[j][a | b << 1 | c << 2] for spins (s_j, s_j+1, s_j+2), bit 1 meaning s = -1.
    std::vector<std::array<double, 8>> weights_;
    size_t two_n_;

    void step(const Block &in, Block &out, size_t j, bool insert) const;
    void enumerate(size_t j, const Block &state, double log_scale, std::vector<double> &log_terms) const;
};

/// <prod_{i in S} s_i> in the non-Hermitian chain.
double nonhermitian_correlator(const ChainModel &model, const BitVector &subset);

/// log C with C = sum_S <s_S>. Closed form for uniform X or Z chains,
/// otherwise 2^(2N) W(all +) / Z from the kernel.
double normalization_constant(const ChainModel &model);

/// log C from the closed forms (uniform chains only).
double log_c_x_closed(double beta, size_t n);
double log_c_z_closed(double beta, size_t n);

/// log C computed as log sum_S <s_S> by enumeration (2N <= 20).
double normalization_constant_enum(const ChainModel &model);

}  // namespace mixsspt

#endif
