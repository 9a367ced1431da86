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

#ifndef MIXSSPT_DENSE_H
#define MIXSSPT_DENSE_H

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "mixsspt/pauli.h"

namespace mixsspt {

// Basis index bit q is the computational value of qubit q.

constexpr size_t kMaxDenseStateQubits = 12;
constexpr size_t kMaxDenseOperatorQubits = 10;

class DenseState {
   public:
    DenseState(size_t n_qubits, Eigen::VectorXcd amplitudes);

    size_t n_qubits() const {
        return n_qubits_;
    }
    const Eigen::VectorXcd &amplitudes() const {
        return amplitudes_;
    }
    std::complex<double> expectation(const PauliOperator &p) const;
    DenseState apply(const PauliOperator &p) const;

   private:
    size_t n_qubits_;
    Eigen::VectorXcd amplitudes_;
};

class DenseOperator {
   public:
    DenseOperator(size_t n_qubits, Eigen::MatrixXcd entries);

    static DenseOperator pure(const DenseState &state);
    /// Product state with every qubit in |0>.
    static DenseOperator zero_state(size_t n_qubits);

    size_t n_qubits() const {
        return n_qubits_;
    }
    const Eigen::MatrixXcd &entries() const {
        return entries_;
    }

    /// Checks Hermiticity (1e-12), unit trace (1e-12) and eigenvalues
    /// above -1e-10; throws std::domain_error on failure.
    void require_density_matrix() const;
    bool is_density_matrix() const;

    /// Conjugation P rho P^dagger.
    DenseOperator conjugated(const PauliOperator &p) const;

   private:
    size_t n_qubits_;
    Eigen::MatrixXcd entries_;
};

/// Stabilizer state of a full-rank tableau, built by projecting a basis state.
DenseState densify(const StabilizerTableau &tab);

/// (1 - p) rho + p P rho P, Hermitian-symmetrized.
DenseOperator apply_pauli_channel(const DenseOperator &rho, double p, const PauliOperator &kraus);

/// Applies the channel for each Kraus operator in turn.
DenseOperator apply_pauli_channels(DenseOperator rho, const std::vector<std::pair<PauliOperator, double>> &channels);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity(const DenseOperator &rho, const DenseOperator &sigma);

/// Fidelity between rho and O rho O^dagger.
double fidelity_correlator_dense(const DenseOperator &rho, const PauliOperator &charged);

DenseOperator partial_transpose(const DenseOperator &rho, const Region &region);

/// log of the trace norm of the partial transpose, in nats.
double negativity_dense(const DenseOperator &rho, const Region &region);

struct RenyiMoments {
    double transposed = 0.0;  // Tr[(rho^T_R)^(2 alpha)]
    double plain = 0.0;       // Tr[rho^(2 alpha)]
    double imag_residue = 0.0;

    /// (2 - 2 alpha)^-1 log(transposed / plain).
    double negativity(int alpha) const;
};

RenyiMoments renyi_moments(const DenseOperator &rho, const Region &region, int alpha);

}  // namespace mixsspt

#endif
