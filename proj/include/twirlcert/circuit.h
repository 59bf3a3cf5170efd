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

#ifndef TWIRLCERT_CIRCUIT_H
#define TWIRLCERT_CIRCUIT_H

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twirlcert {

/// P is the phase gate diag(1, i); PDG is its adjoint.
enum class GateKind { H, P, PDG, X, Y, Z, CNOT, CZ, SWAP };

std::string_view gate_name(GateKind kind);
size_t gate_arity(GateKind kind);

/// Throws std::invalid_argument for unknown names.
GateKind gate_kind_from_name(std::string_view name);

struct Gate {
    GateKind kind;
    std::array<size_t, 2> targets{};

    size_t arity() const { return gate_arity(kind); }
    bool operator==(const Gate &) const = default;
};

/// Raised by the circuit text parser; carries the 1-based line number of the bad line.
class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    size_t line() const { return line_; }

   private:
    size_t line_;
};

/// An ordered list of Clifford gates on a fixed number of qubits. Gates are applied
/// in list order, so the circuit unitary is gates[k-1] ... gates[1] gates[0].
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(size_t num_qubits) : num_qubits_(num_qubits) {}

    size_t num_qubits() const { return num_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    bool empty() const { return gates_.empty(); }
    size_t size() const { return gates_.size(); }

    /// Validates indices and appends. Throws std::invalid_argument.
    void append(GateKind kind, size_t q0, size_t q1 = 0);
    void append(const Gate &gate);
    void append(const Circuit &other);

    /// The circuit implementing the adjoint unitary.
    Circuit inverse() const;

    /// Parses the file format: a `QUBITS n` header line, then one gate per line such as
    /// `H 0` or `CNOT 0 1`. `#` starts a comment. Throws ParseError.
    static Circuit from_text(std::string_view text);

    /// Renders the file format accepted by from_text.
    std::string to_text() const;

    /// Single-line form used inside plan files: gates joined by ';' (e.g. "H 1;P 1"),
    /// or "-" for the empty circuit.
    std::string to_compact() const;
    static Circuit from_compact(size_t num_qubits, std::string_view text);

    bool operator==(const Circuit &) const = default;

   private:
    size_t num_qubits_ = 0;
    std::vector<Gate> gates_;
};

/// Circuits shipped with the library, by name: "encoder_3q_phase", "encoder_513".
/// Throws std::invalid_argument for unknown names.
Circuit bundled_circuit(std::string_view name);
std::string_view bundled_circuit_text(std::string_view name);
std::vector<std::string> bundled_circuit_names();

}  // namespace twirlcert

#endif
