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

#ifndef MIXSSPT_MPDO_H
#define MIXSSPT_MPDO_H

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mixsspt/dense.h"
#include "mixsspt/log_value.h"
#include "mixsspt/statmech.h"

namespace mixsspt {

/// Matrix product state tensor: one D x D matrix per physical index.
struct MpsTensor {
    size_t phys_dim = 0;
    size_t bond_dim = 0;
    std::vector<Eigen::MatrixXcd> entries;

    void validate() const;
    /// Transfer matrix sum_i A^i (x) conj(A^i).
    Eigen::MatrixXcd transfer() const;
    /// Rank of the map from the D^2 virtual space to the physical space.
    size_t map_rank(double tol = 1e-10) const;
};

/// Single-site tensor of the cluster ring, C^s_{ab} = delta_{a s} (-1)^{s b}.
MpsTensor cluster_site_tensor();

/// Physical blocking: (A B)^{i1 i2} = A^{i1} B^{i2} with i = i1 * d_B + i2.
MpsTensor block_tensors(const MpsTensor &a, const MpsTensor &b);

/// Matrix product density operator tensor M^{ij}.
///
/// Each tensor covers a two-qubit unit cell; the first qubit of the cell
/// is on sublattice A and the second on B. Physical indices are
/// i = i_A * 2 + i_B.
class MpdoTensor {
   public:
    /// Builds M^{ij} = sum_k P^{(i,k)} (x) conj(P^{(j,k)}) from a purification
    /// whose physical index is i * env_dim + k.
    static MpdoTensor from_purification(const MpsTensor &purification, size_t env_dim);

    /// The same operator with indices on the first qubit of each cell swapped.
    MpdoTensor partial_transpose_a() const;

    size_t phys_dim() const {
        return phys_dim_;
    }
    size_t bond_dim() const {
        return bond_dim_;
    }
    const Eigen::MatrixXcd &at(size_t i, size_t j) const {
        return entries_[i * phys_dim_ + j];
    }
    const std::vector<Eigen::MatrixXcd> &entries() const {
        return entries_;
    }
    /// Purification the tensor was built from.
    const MpsTensor &purification() const {
        return purification_;
    }
    size_t env_dim() const {
        return env_dim_;
    }
    double p() const {
        return p_;
    }
    NoiseKind kind() const {
        return kind_;
    }

    /// Contracted density matrix on a ring of n_cells cells, normalized to unit
    /// trace. Needs 2 * n_cells <= 10 qubits.
    DenseOperator densify(size_t n_cells) const;

   private:
    friend MpdoTensor cluster_mpdo(double p, NoiseKind kind);
    MpdoTensor(size_t phys_dim, size_t bond_dim, std::vector<Eigen::MatrixXcd> entries);

    size_t phys_dim_;
    size_t bond_dim_;
    std::vector<Eigen::MatrixXcd> entries_;
    MpsTensor purification_;
    size_t env_dim_ = 1;
    double p_ = 0.0;
    NoiseKind kind_ = NoiseKind::X;
};

/// Cluster ring with single-qubit X or Z noise of rate p on every qubit,
/// blocked into two-qubit cells.
MpdoTensor cluster_mpdo(double p, NoiseKind kind);

/// Sparse ring transfer matrix sum_{i_1..i_n} (x)_l G_l^{i_l i_(l+1)}, with
/// i_(n+1) = i_1, split into decoupled blocks.
class RingTransfer {
   public:
    /// layers[l][a * d + b] is the D x D matrix G_l^{ab}.
    RingTransfer(size_t phys_dim, size_t bond_dim, const std::vector<std::vector<Eigen::MatrixXcd>> &layers);

    size_t dim() const {
        return dim_;
    }
    size_t nonzeros() const {
        return triplets_.size();
    }
    /// Sizes of the connected blocks.
    std::vector<size_t> block_sizes() const;
    /// All eigenvalues, sorted by decreasing modulus.
    Eigen::VectorXcd eigenvalues() const;
    /// Right eigenvector of the largest-modulus eigenvalue, by inverse
    /// iteration inside its block. Meaningful when that eigenvalue is simple.
    Eigen::VectorXcd top_eigenvector() const;
    /// Tr[T^k].
    LogScaled trace_power(size_t k) const;
    /// Dense copy; needs dim <= 4096.
    Eigen::MatrixXcd dense() const;
    /// y = T x.
    Eigen::VectorXcd apply(const Eigen::VectorXcd &x) const;

   private:
    struct Entry {
        uint32_t row;
        uint32_t col;
        std::complex<double> value;
    };
    size_t dim_;
    std::vector<Entry> triplets_;  // sorted by row
    std::vector<size_t> row_start_;
    std::vector<std::vector<uint32_t>> blocks_;

    Eigen::MatrixXcd block_matrix(const std::vector<uint32_t> &block) const;
};

/// Degeneracy rule: |lambda_i - lambda_1| <= tol * |lambda_1|.
inline constexpr double kDegeneracyTol = 1e-9;

struct SpectrumSummary {
    Eigen::VectorXcd eigenvalues;  // decreasing modulus
    std::complex<double> top{0.0, 0.0};
    size_t top_degeneracy = 0;
    /// Largest |Im| / |lambda_1| among eigenvalues of maximal modulus.
    double top_imag_residue = 0.0;
    /// 1 - |lambda_next| / |lambda_1| for the first eigenvalue outside the
    /// top cluster.
    double gap = 0.0;
    /// Number of eigenvalues with modulus within tol of |lambda_1|.
    size_t peripheral_count = 0;
};

SpectrumSummary summarize_spectrum(const Eigen::VectorXcd &eigenvalues, double tol = kDegeneracyTol);

/// Moment transfer matrices for Tr[rho^(2 alpha)] = Tr[T^n] and
/// Tr[(rho^T_A)^(2 alpha)] = Tr[T~^n] over n cells.
struct TransferMoment {
    int alpha = 2;
    bool tilde = false;
    RingTransfer matrix;
};

TransferMoment moment_transfer(const MpdoTensor &m, int alpha, bool tilde);

/// Transfer matrix of the MPS built from alpha physical-direction copies of
/// M, sum_{ij} M_alpha^{ij} (x) conj(M_alpha^{ij}). Shares its spectrum with
/// the plain moment transfer matrix.
RingTransfer purification_moment_transfer(const MpdoTensor &m, int alpha);

struct MomentSpectra {
    int alpha = 2;
    SpectrumSummary plain;
    SpectrumSummary tilde;
};

/// Throws std::invalid_argument when D^(2 alpha) exceeds 4096.
MomentSpectra moment_spectra(const MpdoTensor &m, int alpha, double tol = kDegeneracyTol);

struct InjectivityEntry {
    int alpha = 1;
    /// Virtual dimension D^(2 alpha) of M_alpha.
    size_t virtual_dim = 0;
    /// Cells blocked before testing the map rank; zero when the rank was
    /// not computed because the blocked map is too large.
    size_t blocked_cells = 0;
    size_t map_rank = 0;
    /// Primitivity of sum M_alpha (x) conj(M_alpha): unique peripheral
    /// eigenvalue with a full-rank fixed point.
    bool primitive = false;
    double fixed_point_min_singular = 0.0;
    /// Degeneracy and gap of the top eigenvalue of the M_alpha transfer
    /// matrix, which shares its spectrum with T_{2 alpha}.
    size_t top_degeneracy = 0;
    double gap = 0.0;
    bool passes = false;
};

struct InjectivityReport {
    bool c1 = false;
    bool c2 = false;
    bool c1_prime = false;
    double c2_gap = 0.0;
    size_t c2_top_degeneracy = 0;
    std::vector<InjectivityEntry> entries;
};

/// Checks (C1), (C2) and (C1') for alpha = 1..alpha_max.
InjectivityReport injectivity_report(const MpdoTensor &m, int alpha_max, double tol = 1e-9);

/// (2 - 2 alpha)^-1 log(Tr[(rho^T_A)^(2 alpha)] / Tr[rho^(2 alpha)]) on a ring of
/// two_n qubits.
double renyi_negativity_tm(const MpdoTensor &m, int alpha, size_t two_n);

struct SpuriousTenReport {
    /// (C1) and (C2): the value is reported when both hold.
    bool strongly_injective = false;
    /// (C1') for every alpha' <= alpha.
    bool c1_prime = false;
    size_t degeneracy = 0;
    double gap = 0.0;
    /// log(d~_1) / (2 (alpha - 1)); empty without strong injectivity.
    std::optional<double> value;
    std::string reason;
};

SpuriousTenReport spurious_ten_renyi(const MpdoTensor &m, int alpha, double tol = kDegeneracyTol);

struct VirtualAction {
    std::string label;  // "gA", "gB" with "^u" or "^d"
    Eigen::MatrixXcd v;
    std::complex<double> phase{1.0, 0.0};
    double residual = 0.0;
};

struct SymmetryReport {
    /// False when some fractionalization equation has no solution.
    bool strong = false;
    std::vector<VirtualAction> actions;
    std::complex<double> omega{0.0, 0.0};
    double omega_residual = 0.0;
    /// max ||[V_{g^u}, V_{g^d}]|| over both generators.
    double ket_bra_commutator = 0.0;
    /// Commutation phases of the layer operators that leave T~_{2 alpha}
    /// invariant, and the smallest representation they admit.
    int alpha = 2;
    double layer_invariance_residual = 0.0;
    size_t algebra_rank = 0;
    size_t minimal_representation = 0;
    std::string reason;
};

/// Solves the fractionalization identities for both sublattice symmetries on
/// ket and bra layers, reads off Omega, and checks the layer algebra of
/// T~_{2 alpha}.
SymmetryReport symmetry_algebra_check(const MpdoTensor &m, int alpha = 2, double tol = 1e-9);

}  // namespace mixsspt

#endif
