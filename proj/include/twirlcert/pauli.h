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

#ifndef TWIRLCERT_PAULI_H
#define TWIRLCERT_PAULI_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twirlcert/rng.h"

namespace twirlcert {

/// An n-qubit Pauli operator with an exact phase.
///
/// The operator is i^phase * (s_0 ⊗ s_1 ⊗ ... ⊗ s_{n-1}) where s_q is chosen by the
/// bit pair (x_q, z_q): (0,0) = I, (1,0) = X, (0,1) = Z, (1,1) = Y. Y is the Hermitian
/// Pauli Y = iXZ, so the unsigned letters are always Hermitian and the operator is
/// Hermitian exactly when the phase exponent is even.
///
/// Qubit 0 is the leftmost tensor factor. Bits are packed 64 per word.
class SignedPauli {
   public:
    SignedPauli() = default;

    /// The n-qubit identity with phase +1.
    explicit SignedPauli(size_t num_qubits);

    /// Parses an optional sign prefix ("+", "-", "+i", "-i", "i") followed by one letter
    /// per qubit from "IXYZ" ('_' is accepted for I). Throws std::invalid_argument.
    static SignedPauli from_str(std::string_view text);

    /// Renders as sign prefix plus letters, e.g. "-IYIXZ". Round-trips through from_str.
    std::string str() const;

    size_t num_qubits() const { return num_qubits_; }

    /// Exponent k of the i^k prefactor, in [0, 4).
    uint8_t phase() const { return phase_; }
    void set_phase(uint8_t k) { phase_ = k & 3; }

    bool is_hermitian() const { return (phase_ & 1) == 0; }

    /// +1 or -1. Throws std::logic_error for non-Hermitian operators.
    int sign() const;

    bool x(size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
    bool z(size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
    void set(size_t q, bool x_bit, bool z_bit);

    /// 'I', 'X', 'Y' or 'Z' for qubit q.
    char letter(size_t q) const;
    void set_letter(size_t q, char letter);

    std::span<const uint64_t> x_words() const { return xs_; }
    std::span<const uint64_t> z_words() const { return zs_; }

    size_t weight() const;

    /// Qubits with a non-identity factor, ascending.
    std::vector<size_t> support() const;

    bool is_identity_up_to_phase() const;

    /// True when every factor is I or Z.
    bool is_z_type() const;

    SignedPauli operator-() const;

    /// In-place right multiplication: *this = (*this) * rhs, exact phase.
    SignedPauli &operator*=(const SignedPauli &rhs);

    bool operator==(const SignedPauli &other) const = default;

   private:
    size_t num_qubits_ = 0;
    uint8_t phase_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

size_t weight(const SignedPauli &p);

/// The operator product pq with exact phase. Throws std::invalid_argument on a qubit
/// count mismatch.
SignedPauli multiply(const SignedPauli &p, const SignedPauli &q);

inline SignedPauli operator*(const SignedPauli &p, const SignedPauli &q) { return multiply(p, q); }

/// True iff the symplectic inner product of p and q is even.
bool commutes(const SignedPauli &p, const SignedPauli &q);

/// Draws uniformly from the 2 * 3^w * C(n, w) Hermitian weight-w Paulis on n qubits.
SignedPauli sample_random_pauli(size_t num_qubits, size_t w, Rng &rng);

/// The Z-type Pauli with Z on every qubit in `support` and the given sign.
SignedPauli z_parity(size_t num_qubits, std::span<const size_t> support, int sign = +1);

}  // namespace twirlcert

#endif
