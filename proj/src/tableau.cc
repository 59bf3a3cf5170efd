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

#include "twirlcert/tableau.h"

#include <stdexcept>

namespace twirlcert {

namespace {

void flip_sign_if(SignedPauli &p, bool condition) {
    if (condition) {
        p.set_phase(p.phase() + 2);
    }
}

void require_local_observable(const SignedPauli &p, const char *what) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument(std::string(what) + ": observable " + p.str() + " is not Hermitian");
    }
    if (p.weight() == 0) {
        throw std::invalid_argument(std::string(what) + ": the identity has no informative basis");
    }
}

}  // namespace

void conjugate_by_gate(SignedPauli &p, const Gate &gate) {
    size_t a = gate.targets[0];
    size_t b = gate.targets[1];
    bool x = p.x(a), z = p.z(a);
    switch (gate.kind) {
        case GateKind::H:
            // X <-> Z, Y -> -Y
            flip_sign_if(p, x && z);
            p.set(a, z, x);
            break;
        case GateKind::P:
            // X -> Y, Y -> -X
            flip_sign_if(p, x && z);
            p.set(a, x, z ^ x);
            break;
        case GateKind::PDG:
            // X -> -Y, Y -> X
            flip_sign_if(p, x && !z);
            p.set(a, x, z ^ x);
            break;
        case GateKind::X:
            flip_sign_if(p, z);
            break;
        case GateKind::Y:
            flip_sign_if(p, x != z);
            break;
        case GateKind::Z:
            flip_sign_if(p, x);
            break;
        case GateKind::CNOT: {
            bool xt = p.x(b), zt = p.z(b);
            flip_sign_if(p, x && zt && !(xt ^ z));
            p.set(b, xt ^ x, zt);
            p.set(a, x, z ^ zt);
            break;
        }
        case GateKind::CZ: {
            Gate h{GateKind::H, {b, 0}};
            conjugate_by_gate(p, h);
            conjugate_by_gate(p, Gate{GateKind::CNOT, {a, b}});
            conjugate_by_gate(p, h);
            break;
        }
        case GateKind::SWAP: {
            bool xb = p.x(b), zb = p.z(b);
            p.set(b, x, z);
            p.set(a, xb, zb);
            break;
        }
    }
}

CliffordTableau::CliffordTableau(size_t num_qubits) : num_qubits_(num_qubits) {
    x_images_.reserve(num_qubits);
    z_images_.reserve(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        SignedPauli xq(num_qubits), zq(num_qubits);
        xq.set(q, true, false);
        zq.set(q, false, true);
        x_images_.push_back(std::move(xq));
        z_images_.push_back(std::move(zq));
    }
}

CliffordTableau CliffordTableau::from_circuit(const Circuit &circuit) {
    CliffordTableau t(circuit.num_qubits());
    for (const Gate &g : circuit.gates()) {
        t.append(g);
    }
    return t;
}

CliffordTableau CliffordTableau::from_images(std::vector<SignedPauli> x_images,
                                             std::vector<SignedPauli> z_images) {
    size_t n = x_images.size();
    if (z_images.size() != n) {
        throw std::invalid_argument("tableau needs as many Z images as X images");
    }
    for (size_t q = 0; q < n; q++) {
        if (x_images[q].num_qubits() != n || z_images[q].num_qubits() != n) {
            throw std::invalid_argument("tableau image width does not match qubit count");
        }
    }
    CliffordTableau t;
    t.num_qubits_ = n;
    t.x_images_ = std::move(x_images);
    t.z_images_ = std::move(z_images);
    if (!t.is_symplectic()) {
        throw std::invalid_argument("tableau images are not Hermitian or violate the symplectic condition");
    }
    return t;
}

SignedPauli CliffordTableau::conjugate(const SignedPauli &p) const {
    if (p.num_qubits() != num_qubits_) {
        throw std::invalid_argument(
            "cannot conjugate a " + std::to_string(p.num_qubits()) + "-qubit Pauli by a " +
            std::to_string(num_qubits_) + "-qubit tableau");
    }
    // p = i^k prod_q s_q with Y_q = i X_q Z_q; map each X_q and Z_q factor in order.
    SignedPauli out(num_qubits_);
    uint32_t log_i = p.phase();
    for (size_t q : p.support()) {
        bool x = p.x(q), z = p.z(q);
        if (x) {
            out *= x_images_[q];
        }
        if (z) {
            out *= z_images_[q];
        }
        if (x && z) {
            log_i += 1;
        }
    }
    out.set_phase(out.phase() + log_i);
    return out;
}

void CliffordTableau::append(const Gate &gate) {
    if (gate.targets[0] >= num_qubits_ || (gate.arity() == 2 && gate.targets[1] >= num_qubits_)) {
        throw std::invalid_argument("gate target out of range for tableau");
    }
    for (auto &img : x_images_) {
        conjugate_by_gate(img, gate);
    }
    for (auto &img : z_images_) {
        conjugate_by_gate(img, gate);
    }
}

bool CliffordTableau::is_symplectic() const {
    for (size_t i = 0; i < num_qubits_; i++) {
        if (!x_images_[i].is_hermitian() || !z_images_[i].is_hermitian()) {
            return false;
        }
        for (size_t j = 0; j < num_qubits_; j++) {
            if (commutes(x_images_[i], z_images_[j]) != (i != j)) {
                return false;
            }
            if (j > i && (!commutes(x_images_[i], x_images_[j]) || !commutes(z_images_[i], z_images_[j]))) {
                return false;
            }
        }
    }
    return true;
}

bool CliffordTableau::is_identity() const { return *this == CliffordTableau(num_qubits_); }

SignedPauli conjugate(const CliffordTableau &t, const SignedPauli &p) { return t.conjugate(p); }

CliffordTableau compose(const CliffordTableau &a, const CliffordTableau &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("cannot compose tableaus of different widths");
    }
    size_t n = a.num_qubits();
    std::vector<SignedPauli> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    for (size_t q = 0; q < n; q++) {
        xs.push_back(a.conjugate(b.x_image(q)));
        zs.push_back(a.conjugate(b.z_image(q)));
    }
    return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

CliffordTableau inverse(const CliffordTableau &t) {
    // Q = U^dagger G U has x_j = [G anticommutes with U Z_j U^dagger] and
    // z_j = [G anticommutes with U X_j U^dagger]; the sign is fixed by mapping Q back.
    size_t n = t.num_qubits();
    std::vector<SignedPauli> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    for (size_t i = 0; i < n; i++) {
        SignedPauli qx(n), qz(n);
        for (size_t j = 0; j < n; j++) {
            qx.set(j, t.z_image(j).z(i), t.x_image(j).z(i));
            qz.set(j, t.z_image(j).x(i), t.x_image(j).x(i));
        }
        if (t.conjugate(qx).phase() != 0) {
            qx = -qx;
        }
        if (t.conjugate(qz).phase() != 0) {
            qz = -qz;
        }
        xs.push_back(std::move(qx));
        zs.push_back(std::move(qz));
    }
    return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

Circuit prep_clifford_for(const SignedPauli &m) {
    require_local_observable(m, "prep_clifford_for");
    Circuit c(m.num_qubits());
    for (size_t q : m.support()) {
        switch (m.letter(q)) {
            case 'X':
                c.append(GateKind::H, q);
                break;
            case 'Y':
                c.append(GateKind::H, q);
                c.append(GateKind::P, q);
                break;
            default:
                break;
        }
    }
    return c;
}

Circuit meas_basis_change(const SignedPauli &p) {
    require_local_observable(p, "meas_basis_change");
    return prep_clifford_for(p);
}

}  // namespace twirlcert
