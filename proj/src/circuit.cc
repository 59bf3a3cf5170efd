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

#include "twirlcert/circuit.h"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

namespace twirlcert {

namespace {

struct GateInfo {
    GateKind kind;
    std::string_view name;
    size_t arity;
};

constexpr GateInfo kGates[] = {
    {GateKind::H, "H", 1},       {GateKind::P, "P", 1},       {GateKind::PDG, "PDG", 1},
    {GateKind::X, "X", 1},       {GateKind::Y, "Y", 1},       {GateKind::Z, "Z", 1},
    {GateKind::CNOT, "CNOT", 2}, {GateKind::CZ, "CZ", 2},     {GateKind::SWAP, "SWAP", 2},
};

const GateInfo &info(GateKind kind) { return kGates[static_cast<size_t>(kind)]; }

std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            i++;
        }
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            j++;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

size_t parse_index(std::string_view token) {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return value;
}

Gate parse_gate(size_t num_qubits, std::string_view line) {
    auto tokens = split_ws(line);
    GateKind kind = gate_kind_from_name(tokens.at(0));
    size_t arity = gate_arity(kind);
    if (tokens.size() != arity + 1) {
        throw std::invalid_argument(
            "gate " + std::string(tokens[0]) + " takes " + std::to_string(arity) + " qubit index(es)");
    }
    Gate g{kind, {parse_index(tokens[1]), arity == 2 ? parse_index(tokens[2]) : 0}};
    Circuit probe(num_qubits);
    probe.append(g);
    return g;
}

constexpr std::string_view kEncoder3qPhase = R"(# Encoder for the 3-qubit phase-flip code.
# Qubit 0 carries the input state; qubits 1 and 2 start in |0>.
# Two CNOTs followed by transversal Hadamards.
QUBITS 3
CNOT 0 1
CNOT 0 2
H 0
H 1
H 2
)";

constexpr std::string_view kEncoder513 = R"(# Encoder for the [[5,1,3]] code, built from the standard-form generators
#   YZIZY, IXZZX, ZZXIX, ZIZYY   with logical X = ZIIZX, logical Z = ZZZZZ.
# Qubit 4 carries the input state; qubits 0-3 start in |0>.
# Each ancilla gets H (and P when its generator has Y on the diagonal), then
# controls the remainder of its generator. Controlled-Y is PDG; CNOT; P on the target.
QUBITS 5
# controlled logical X from the input
CZ 4 0
CZ 4 3
# YZIZY
H 0
P 0
CZ 0 1
CZ 0 3
PDG 4
CNOT 0 4
P 4
# IXZZX
H 1
CZ 1 2
CZ 1 3
CNOT 1 4
# ZZXIX
H 2
CZ 2 0
CZ 2 1
CNOT 2 4
# ZIZYY
H 3
P 3
CZ 3 0
CZ 3 2
PDG 4
CNOT 3 4
P 4
)";

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

size_t gate_arity(GateKind kind) { return info(kind).arity; }

GateKind gate_kind_from_name(std::string_view name) {
    for (const auto &g : kGates) {
        if (g.name == name) {
            return g.kind;
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

void Circuit::append(GateKind kind, size_t q0, size_t q1) { append(Gate{kind, {q0, q1}}); }

void Circuit::append(const Gate &gate) {
    size_t arity = gate.arity();
    for (size_t k = 0; k < arity; k++) {
        if (gate.targets[k] >= num_qubits_) {
            throw std::invalid_argument(
                "qubit index " + std::to_string(gate.targets[k]) + " out of range for " +
                std::to_string(num_qubits_) + " qubit(s)");
        }
    }
    if (arity == 2 && gate.targets[0] == gate.targets[1]) {
        throw std::invalid_argument("two-qubit gate " + std::string(gate_name(gate.kind)) +
                                    " needs distinct qubits");
    }
    Gate stored = gate;
    if (arity == 1) {
        stored.targets[1] = 0;
    }
    gates_.push_back(stored);
}

void Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("cannot append circuits of different widths");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::P) {
            g.kind = GateKind::PDG;
        } else if (g.kind == GateKind::PDG) {
            g.kind = GateKind::P;
        }
        out.gates_.push_back(g);
    }
    return out;
}

Circuit Circuit::from_text(std::string_view text) {
    std::optional<Circuit> circuit;
    size_t line_no = 0;
    while (!text.empty()) {
        line_no++;
        size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        try {
            auto tokens = split_ws(line);
            if (!circuit.has_value()) {
                if (tokens.size() != 2 || tokens[0] != "QUBITS") {
                    throw std::invalid_argument("expected 'QUBITS n' header before any gate");
                }
                size_t n = parse_index(tokens[1]);
                if (n == 0) {
                    throw std::invalid_argument("circuit needs at least one qubit");
                }
                circuit.emplace(n);
                continue;
            }
            if (tokens[0] == "QUBITS") {
                throw std::invalid_argument("duplicate QUBITS header");
            }
            circuit->append(parse_gate(circuit->num_qubits(), line));
        } catch (const std::invalid_argument &e) {
            throw ParseError(line_no, e.what());
        } catch (const std::out_of_range &e) {
            throw ParseError(line_no, "malformed gate line");
        }
    }
    if (!circuit.has_value()) {
        throw ParseError(line_no, "missing 'QUBITS n' header");
    }
    return std::move(*circuit);
}

std::string Circuit::to_text() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits_ << "\n";
    for (const auto &g : gates_) {
        out << gate_name(g.kind) << " " << g.targets[0];
        if (g.arity() == 2) {
            out << " " << g.targets[1];
        }
        out << "\n";
    }
    return out.str();
}

std::string Circuit::to_compact() const {
    if (gates_.empty()) {
        return "-";
    }
    std::string out;
    for (size_t k = 0; k < gates_.size(); k++) {
        const Gate &g = gates_[k];
        if (k) {
            out += ';';
        }
        out += gate_name(g.kind);
        out += ' ';
        out += std::to_string(g.targets[0]);
        if (g.arity() == 2) {
            out += ' ';
            out += std::to_string(g.targets[1]);
        }
    }
    return out;
}

Circuit Circuit::from_compact(size_t num_qubits, std::string_view text) {
    Circuit out(num_qubits);
    text = trim(text);
    if (text == "-") {
        return out;
    }
    while (!text.empty()) {
        size_t semi = text.find(';');
        std::string_view part = trim(text.substr(0, semi));
        text.remove_prefix(semi == std::string_view::npos ? text.size() : semi + 1);
        if (part.empty()) {
            throw std::invalid_argument("empty gate in compact circuit");
        }
        out.append(parse_gate(num_qubits, part));
    }
    return out;
}

std::string_view bundled_circuit_text(std::string_view name) {
    if (name == "encoder_3q_phase") {
        return kEncoder3qPhase;
    }
    if (name == "encoder_513") {
        return kEncoder513;
    }
    throw std::invalid_argument("no bundled circuit named '" + std::string(name) + "'");
}

Circuit bundled_circuit(std::string_view name) { return Circuit::from_text(bundled_circuit_text(name)); }

std::vector<std::string> bundled_circuit_names() { return {"encoder_3q_phase", "encoder_513"}; }

}  // namespace twirlcert
