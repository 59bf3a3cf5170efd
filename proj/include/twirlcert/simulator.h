// Copyright 2026 The twirlcert Authors
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

#ifndef TWIRLCERT_SIMULATOR_H
#define TWIRLCERT_SIMULATOR_H

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twirlcert/circuit.h"
#include "twirlcert/pauli.h"
#include "twirlcert/rng.h"
#include "twirlcert/tableau.h"

namespace twirlcert {

// Dense simulation. Basis index bit (n - 1 - q) holds qubit q, so qubit 0 is the
// leftmost Kronecker factor.

using Matrix = Eigen::MatrixXcd;

inline constexpr size_t kDefaultMaxDenseQubits = 6;

/// Thrown when a request needs more qubits than the dense simulator is configured for.
class CapacityError : public std::runtime_error {
   public:
    CapacityError(size_t requested, size_t cap)
        : std::runtime_error("dense simulation of " + std::to_string(requested) +
                             " qubits exceeds the configured cap of " + std::to_string(cap) +
                             " qubits (raise it with --max-dense-qubits)"),
          requested_(requested),
          cap_(cap) {}
    size_t requested() const { return requested_; }
    size_t cap() const { return cap_; }

   private:
    size_t requested_;
    size_t cap_;
};

void require_dense_capacity(size_t num_qubits, size_t cap = kDefaultMaxDenseQubits);

class DensityMatrix {
   public:
    /// Throws std::invalid_argument if `rho` is not 2^n x 2^n.
    DensityMatrix(size_t num_qubits, Matrix rho);

    static DensityMatrix zero_state(size_t num_qubits);

    size_t num_qubits() const { return num_qubits_; }
    const Matrix &matrix() const { return rho_; }

    /// Hermitian within 1e-10, unit trace within 1e-10, smallest eigenvalue >= -1e-9.
    bool satisfies_invariants() const;

    /// Throws std::logic_error describing the first violated invariant.
    void check_invariants() const;

   private:
    size_t num_qubits_;
    Matrix rho_;
};

/// Which side of the ideal gate the noise acts on. The certification model is
/// BeforeGate (noisy gate = U after E); AfterGate is an experimental alternative.
enum class NoiseOrder { BeforeGate, AfterGate };

class NoiseModel {
   public:
    enum class Kind { PauliChannel, KrausChannel, Depolarizing };

    /// Pauli channel with identity probability 1.
    static NoiseModel noiseless(size_t num_qubits);

    /// rho -> sum_Q p_Q Q rho Q. Paulis must be unsigned (phase +1) and distinct,
    /// probabilities non-negative summing to 1 within 1e-12.
    static NoiseModel pauli_channel(size_t num_qubits, std::vector<std::pair<SignedPauli, double>> probabilities);

    /// rho -> sum_j A_j rho A_j^dagger. Completeness within 1e-10.
    static NoiseModel kraus_channel(std::vector<Matrix> operators);

    /// rho -> (1 - p) rho + p I / 2^n.
    static NoiseModel depolarizing(size_t num_qubits, double p);

    /// Pauli channel applying the identity with probability 1 - q and each of the
    /// 4^n - 1 non-identity Paulis with probability q / (4^n - 1).
    static NoiseModel uniform_pauli(size_t num_qubits, double q);

    Kind kind() const { return kind_; }
    size_t num_qubits() const { return num_qubits_; }
    NoiseOrder order() const { return order_; }
    NoiseModel with_order(NoiseOrder order) const;

    const std::vector<std::pair<SignedPauli, double>> &pauli_probabilities() const { return pauli_probs_; }
    double depolarizing_strength() const { return depolarizing_p_; }

    /// Kraus operators for any kind (Pauli channels expand to sqrt(p_Q) Q).
    std::vector<Matrix> kraus_operators() const;

    Matrix apply(const Matrix &rho) const;

    /// Probability of no error: the identity component chi_00 of the channel's
    /// process matrix, sum_j |tr A_j|^2 / 4^n.
    double entanglement_fidelity() const;

   private:
    Kind kind_ = Kind::PauliChannel;
    size_t num_qubits_ = 0;
    NoiseOrder order_ = NoiseOrder::BeforeGate;
    std::vector<std::pair<SignedPauli, double>> pauli_probs_;
    std::vector<Matrix> kraus_;
    double depolarizing_p_ = 0;
};

/// Dense matrix of a Pauli, phase included.
Matrix pauli_matrix(const SignedPauli &p);

/// Left-multiplies `m` (2^n rows) by the gate's unitary.
void apply_gate_left(Matrix &m, size_t num_qubits, const Gate &gate);

Matrix circuit_unitary(const Circuit &circuit);

/// A unitary realizing the tableau, unique up to global phase.
Matrix tableau_unitary(const CliffordTableau &tableau);

/// C |0...0><0...0| C^dagger.
DensityMatrix prepare(const Circuit &prep, size_t num_qubits);

/// U E(rho) U^dagger (or E(U rho U^dagger) for NoiseOrder::AfterGate).
DensityMatrix apply_noisy_gate(const DensityMatrix &rho, const Matrix &unitary, const NoiseModel &noise);
DensityMatrix apply_noisy_gate(const DensityMatrix &rho, const Circuit &gate, const NoiseModel &noise);
DensityMatrix apply_noisy_gate(const DensityMatrix &rho, const CliffordTableau &gate, const NoiseModel &noise);

/// tr(rho p), clamped to [-1, 1]. Throws std::invalid_argument for non-Hermitian p and
/// std::logic_error if the imaginary part exceeds 1e-10.
double expectation(const DensityMatrix &rho, const SignedPauli &p);

struct ParityCounts {
    uint64_t plus = 0;
    uint64_t minus = 0;
};

/// Applies meas^dagger, draws `shots` computational-basis outcomes from the exact
/// distribution and tallies the parity over `support` multiplied by `sign`.
ParityCounts sample_parity_shots(const DensityMatrix &rho, const Circuit &meas, std::span<const size_t> support,
                                 int sign, uint64_t shots, Rng &rng);

/// (2^n F_e + 1) / (2^n + 1).
double average_fidelity_from_entanglement_fidelity(double entanglement_fidelity, size_t num_qubits);

/// Exact average fidelity between U and the noisy implementation, via the
/// entanglement fidelity of U^dagger composed with the noisy gate.
double exact_average_fidelity(const Matrix &unitary, const NoiseModel &noise);
double exact_average_fidelity(const Circuit &u, const NoiseModel &noise);
double exact_average_fidelity(const CliffordTableau &u, const NoiseModel &noise);

}  // namespace twirlcert

#endif
