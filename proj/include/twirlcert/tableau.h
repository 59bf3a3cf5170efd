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

#ifndef TWIRLCERT_TABLEAU_H
#define TWIRLCERT_TABLEAU_H

#include <vector>

#include "twirlcert/circuit.h"
#include "twirlcert/pauli.h"

namespace twirlcert {

/// Conjugates `p` in place by a single gate: p <- G p G^dagger.
void conjugate_by_gate(SignedPauli &p, const Gate &gate);

/// A Clifford unitary U stored as the images U X_q U^dagger and U Z_q U^dagger of the
/// single-qubit generators. Arbitrary Paulis are conjugated by multiplying generator
/// images, so conjugation costs O(n * weight) word operations.
class CliffordTableau {
   public:
    CliffordTableau() = default;

    /// Identity on `num_qubits` qubits.
    explicit CliffordTableau(size_t num_qubits);

    static CliffordTableau from_circuit(const Circuit &circuit);

    /// Builds from explicit generator images. Throws std::invalid_argument unless the
    /// images are Hermitian, of matching width and satisfy the symplectic condition.
    static CliffordTableau from_images(std::vector<SignedPauli> x_images, std::vector<SignedPauli> z_images);

    size_t num_qubits() const { return num_qubits_; }
    const SignedPauli &x_image(size_t q) const { return x_images_[q]; }
    const SignedPauli &z_image(size_t q) const { return z_images_[q]; }

    /// U p U^dagger with exact phase.
    SignedPauli conjugate(const SignedPauli &p) const;

    /// Post-composes a gate: the tableau becomes G U.
    void append(const Gate &gate);

    /// image(X_q) anticommutes with image(Z_q); every other generator pair commutes;
    /// all images Hermitian.
    bool is_symplectic() const;

    bool is_identity() const;

    bool operator==(const CliffordTableau &) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<SignedPauli> x_images_;
    std::vector<SignedPauli> z_images_;
};

SignedPauli conjugate(const CliffordTableau &t, const SignedPauli &p);

/// The tableau of A B, i.e. conjugate(compose(a, b), p) == conjugate(a, conjugate(b, p)).
CliffordTableau compose(const CliffordTableau &a, const CliffordTableau &b);

/// compose(inverse(t), t) is the identity, signs included.
CliffordTableau inverse(const CliffordTableau &t);

/// Local circuit C whose output C|0...0> is the +1 eigenstate of the unsigned
/// Pauli |m|. Per qubit: Z -> nothing, X -> H, Y -> H then P (the operator PH).
/// The sign of m is carried separately as r = m.sign().
/// Throws std::invalid_argument for non-Hermitian or weight-0 input.
Circuit prep_clifford_for(const SignedPauli &m);

/// Local circuit C' with C'^dagger p C' = sign(p) * Z on supp(p): apply
/// C'^dagger, then measure the support qubits in the Z basis. Uses the same
/// per-qubit table as prep_clifford_for.
Circuit meas_basis_change(const SignedPauli &p);

}  // namespace twirlcert

#endif
