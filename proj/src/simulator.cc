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

#include "twirlcert/simulator.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>

namespace twirlcert {

namespace {

using cd = std::complex<double>;

// Beyond this the 4^n-sized matrices stop being a desk-scale computation at all.
constexpr size_t kHardDenseLimit = 12;

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr double kPauliSumTol = 1e-12;
constexpr double kKrausTol = 1e-10;

size_t dim_of(size_t num_qubits) { return size_t{1} << num_qubits; }

uint64_t bit_of(size_t num_qubits, size_t q) { return uint64_t{1} << (num_qubits - 1 - q); }

struct PauliMasks {
    uint64_t x = 0;
    uint64_t z = 0;
    // Exponent of i multiplying the bare X^x Z^z action on basis states.
    uint32_t log_i = 0;
};

// p |k> = i^log_i (-1)^{popcount(k & z)} |k ^ x>.
PauliMasks masks_of(const SignedPauli &p) {
    PauliMasks m;
    size_t n = p.num_qubits();
    m.log_i = p.phase();
    for (size_t q : p.support()) {
        if (p.x(q)) {
            m.x |= bit_of(n, q);
        }
        if (p.z(q)) {
            m.z |= bit_of(n, q);
        }
        if (p.x(q) && p.z(q)) {
            m.log_i += 1;
        }
    }
    m.log_i &= 3;
    return m;
}

cd i_pow(uint32_t k) {
    static const cd kTable[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    return kTable[k & 3];
}

double parity_sign(uint64_t v) { return std::popcount(v) & 1 ? -1.0 : 1.0; }

void require_square(const Matrix &m, size_t num_qubits, const char *what) {
    size_t d = dim_of(num_qubits);
    if (static_cast<size_t>(m.rows()) != d || static_cast<size_t>(m.cols()) != d) {
        std::ostringstream msg;
        msg << what << ": expected a " << d << "x" << d << " matrix, got " << m.rows() << "x" << m.cols();
        throw std::invalid_argument(msg.str());
    }
}

// rho -> Q rho Q^dagger for an unsigned Pauli given by masks.
void accumulate_pauli_conjugation(Matrix &out, const Matrix &rho, const PauliMasks &m, double weight) {
    const Eigen::Index d = rho.rows();
    for (Eigen::Index b = 0; b < d; b++) {
        uint64_t bs = static_cast<uint64_t>(b) ^ m.x;
        double sb = parity_sign(bs & m.z);
        for (Eigen::Index a = 0; a < d; a++) {
            uint64_t as = static_cast<uint64_t>(a) ^ m.x;
            out(a, b) += weight * parity_sign(as & m.z) * sb * rho(as, bs);
        }
    }
}

Matrix single_qubit_matrix(GateKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix g(2, 2);
    switch (kind) {
        case GateKind::H:
            g << s, s, s, -s;
            break;
        case GateKind::P:
            g << 1, 0, 0, cd(0, 1);
            break;
        case GateKind::PDG:
            g << 1, 0, 0, cd(0, -1);
            break;
        case GateKind::X:
            g << 0, 1, 1, 0;
            break;
        case GateKind::Y:
            g << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case GateKind::Z:
            g << 1, 0, 0, -1;
            break;
        default:
            throw std::logic_error("not a single-qubit gate");
    }
    return g;
}

}  // namespace

void require_dense_capacity(size_t num_qubits, size_t cap) {
    if (num_qubits > cap || num_qubits > kHardDenseLimit) {
        throw CapacityError(num_qubits, std::min(cap, kHardDenseLimit));
    }
}

DensityMatrix::DensityMatrix(size_t num_qubits, Matrix rho) : num_qubits_(num_qubits), rho_(std::move(rho)) {
    require_dense_capacity(num_qubits, kHardDenseLimit);
    require_square(rho_, num_qubits, "DensityMatrix");
}

DensityMatrix DensityMatrix::zero_state(size_t num_qubits) {
    size_t d = dim_of(num_qubits);
    Matrix rho = Matrix::Zero(d, d);
    rho(0, 0) = 1;
    return DensityMatrix(num_qubits, std::move(rho));
}

bool DensityMatrix::satisfies_invariants() const {
    try {
        check_invariants();
        return true;
    } catch (const std::logic_error &) {
        return false;
    }
}

void DensityMatrix::check_invariants() const {
    double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw std::logic_error("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    cd tr = rho_.trace();
    if (std::abs(tr - cd(1, 0)) > kTraceTol) {
        throw std::logic_error("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    Matrix h = (rho_ + rho_.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kPsdTol) {
        throw std::logic_error("density matrix has negative eigenvalue " + std::to_string(min_eig));
    }
}

NoiseModel NoiseModel::noiseless(size_t num_qubits) {
    return pauli_channel(num_qubits, {{SignedPauli(num_qubits), 1.0}});
}

NoiseModel NoiseModel::pauli_channel(size_t num_qubits, std::vector<std::pair<SignedPauli, double>> probabilities) {
    if (num_qubits == 0) {
        throw std::invalid_argument("noise model needs at least one qubit");
    }
    double total = 0;
    std::set<std::string> seen;
    for (const auto &[p, prob] : probabilities) {
        if (p.num_qubits() != num_qubits) {
            throw std::invalid_argument("Pauli channel entry " + p.str() + " has the wrong qubit count");
        }
        if (p.phase() != 0) {
            throw std::invalid_argument("Pauli channel entry " + p.str() + " must have phase +1");
        }
        if (!(prob >= 0)) {
            throw std::invalid_argument("Pauli channel probability for " + p.str() + " is negative");
        }
        if (!seen.insert(p.str()).second) {
            throw std::invalid_argument("Pauli channel lists " + p.str() + " twice");
        }
        total += prob;
    }
    if (std::abs(total - 1.0) > kPauliSumTol) {
        throw std::invalid_argument("Pauli channel probabilities sum to " + std::to_string(total) + ", not 1");
    }
    NoiseModel m;
    m.kind_ = Kind::PauliChannel;
    m.num_qubits_ = num_qubits;
    m.pauli_probs_ = std::move(probabilities);
    return m;
}

NoiseModel NoiseModel::kraus_channel(std::vector<Matrix> operators) {
    if (operators.empty()) {
        throw std::invalid_argument("Kraus channel needs at least one operator");
    }
    Eigen::Index d = operators[0].rows();
    size_t n = std::countr_zero(static_cast<uint64_t>(d));
    if (d < 2 || std::popcount(static_cast<uint64_t>(d)) != 1) {
        throw std::invalid_argument("Kraus operator dimension must be a power of two");
    }
    Matrix sum = Matrix::Zero(d, d);
    for (const auto &a : operators) {
        require_square(a, n, "Kraus operator");
        sum += a.adjoint() * a;
    }
    double dev = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kKrausTol) {
        throw std::invalid_argument("Kraus operators are not complete (deviation " + std::to_string(dev) + ")");
    }
    NoiseModel m;
    m.kind_ = Kind::KrausChannel;
    m.num_qubits_ = n;
    m.kraus_ = std::move(operators);
    return m;
}

NoiseModel NoiseModel::depolarizing(size_t num_qubits, double p) {
    if (num_qubits == 0) {
        throw std::invalid_argument("noise model needs at least one qubit");
    }
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
    }
    NoiseModel m;
    m.kind_ = Kind::Depolarizing;
    m.num_qubits_ = num_qubits;
    m.depolarizing_p_ = p;
    return m;
}

NoiseModel NoiseModel::uniform_pauli(size_t num_qubits, double q) {
    if (!(q >= 0 && q <= 1)) {
        throw std::invalid_argument("error probability must lie in [0, 1]");
    }
    if (num_qubits > 8) {
        throw std::invalid_argument("uniform Pauli channel enumerates 4^n terms; n is too large");
    }
    uint64_t count = uint64_t{1} << (2 * num_qubits);
    std::vector<std::pair<SignedPauli, double>> probs;
    probs.reserve(count);
    for (uint64_t code = 0; code < count; code++) {
        SignedPauli p(num_qubits);
        for (size_t q2 = 0; q2 < num_qubits; q2++) {
            p.set_letter(q2, "IXYZ"[(code >> (2 * q2)) & 3]);
        }
        probs.emplace_back(std::move(p), code == 0 ? 1.0 - q : q / static_cast<double>(count - 1));
    }
    return pauli_channel(num_qubits, std::move(probs));
}

NoiseModel NoiseModel::with_order(NoiseOrder order) const {
    NoiseModel m = *this;
    m.order_ = order;
    return m;
}

std::vector<Matrix> NoiseModel::kraus_operators() const {
    std::vector<Matrix> out;
    size_t d = dim_of(num_qubits_);
    switch (kind_) {
        case Kind::KrausChannel:
            return kraus_;
        case Kind::PauliChannel:
            for (const auto &[p, prob] : pauli_probs_) {
                if (prob > 0) {
                    out.push_back(std::sqrt(prob) * pauli_matrix(p));
                }
            }
            return out;
        case Kind::Depolarizing: {
            // (1 - p) rho + p I/d  =  (1 - p + p/d^2) rho + (p/d^2) sum_{Q != I} Q rho Q
            double dd = static_cast<double>(d) * static_cast<double>(d);
            uint64_t count = uint64_t{1} << (2 * num_qubits_);
            for (uint64_t code = 0; code < count; code++) {
                SignedPauli p(num_qubits_);
                for (size_t q = 0; q < num_qubits_; q++) {
                    p.set_letter(q, "IXYZ"[(code >> (2 * q)) & 3]);
                }
                double prob = code == 0 ? 1 - depolarizing_p_ + depolarizing_p_ / dd : depolarizing_p_ / dd;
                if (prob > 0) {
                    out.push_back(std::sqrt(prob) * pauli_matrix(p));
                }
            }
            return out;
        }
    }
    return out;
}

Matrix NoiseModel::apply(const Matrix &rho) const {
    require_square(rho, num_qubits_, "noise channel input");
    Eigen::Index d = rho.rows();
    switch (kind_) {
        case Kind::Depolarizing:
            return (1 - depolarizing_p_) * rho +
                   (depolarizing_p_ * rho.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
        case Kind::KrausChannel: {
            Matrix out = Matrix::Zero(d, d);
            for (const auto &a : kraus_) {
                out.noalias() += a * rho * a.adjoint();
            }
            return out;
        }
        case Kind::PauliChannel: {
            Matrix out = Matrix::Zero(d, d);
            for (const auto &[p, prob] : pauli_probs_) {
                if (prob != 0) {
                    accumulate_pauli_conjugation(out, rho, masks_of(p), prob);
                }
            }
            return out;
        }
    }
    return rho;
}

double NoiseModel::entanglement_fidelity() const {
    switch (kind_) {
        case Kind::PauliChannel:
            for (const auto &[p, prob] : pauli_probs_) {
                if (p.weight() == 0) {
                    return prob;
                }
            }
            return 0.0;
        case Kind::Depolarizing: {
            double dd = std::ldexp(1.0, static_cast<int>(2 * num_qubits_));
            return 1 - depolarizing_p_ + depolarizing_p_ / dd;
        }
        case Kind::KrausChannel: {
            double total = 0;
            for (const auto &a : kraus_) {
                total += std::norm(a.trace());
            }
            return total / std::ldexp(1.0, static_cast<int>(2 * num_qubits_));
        }
    }
    return 0.0;
}

Matrix pauli_matrix(const SignedPauli &p) {
    size_t n = p.num_qubits();
    require_dense_capacity(n, kHardDenseLimit);
    size_t d = dim_of(n);
    PauliMasks m = masks_of(p);
    Matrix out = Matrix::Zero(d, d);
    cd global = i_pow(m.log_i);
    for (uint64_t k = 0; k < d; k++) {
        out(k ^ m.x, k) = global * parity_sign(k & m.z);
    }
    return out;
}

void apply_gate_left(Matrix &m, size_t num_qubits, const Gate &gate) {
    if (static_cast<size_t>(m.rows()) != dim_of(num_qubits)) {
        throw std::invalid_argument("apply_gate_left: row count does not match qubit count");
    }
    const uint64_t d = dim_of(num_qubits);
    const uint64_t ba = bit_of(num_qubits, gate.targets[0]);
    switch (gate.kind) {
        case GateKind::CNOT: {
            const uint64_t bt = bit_of(num_qubits, gate.targets[1]);
            for (uint64_t i = 0; i < d; i++) {
                if ((i & ba) && !(i & bt)) {
                    m.row(i).swap(m.row(i | bt));
                }
            }
            return;
        }
        case GateKind::CZ: {
            const uint64_t bt = bit_of(num_qubits, gate.targets[1]);
            for (uint64_t i = 0; i < d; i++) {
                if ((i & ba) && (i & bt)) {
                    m.row(i) *= -1.0;
                }
            }
            return;
        }
        case GateKind::SWAP: {
            const uint64_t bt = bit_of(num_qubits, gate.targets[1]);
            for (uint64_t i = 0; i < d; i++) {
                if ((i & ba) && !(i & bt)) {
                    m.row(i).swap(m.row((i ^ ba) | bt));
                }
            }
            return;
        }
        default:
            break;
    }
    Matrix g = single_qubit_matrix(gate.kind);
    for (uint64_t i = 0; i < d; i++) {
        if (i & ba) {
            continue;
        }
        uint64_t j = i | ba;
        Eigen::RowVectorXcd r0 = m.row(i);
        Eigen::RowVectorXcd r1 = m.row(j);
        m.row(i) = g(0, 0) * r0 + g(0, 1) * r1;
        m.row(j) = g(1, 0) * r0 + g(1, 1) * r1;
    }
}

Matrix circuit_unitary(const Circuit &circuit) {
    size_t n = circuit.num_qubits();
    require_dense_capacity(n, kHardDenseLimit);
    size_t d = dim_of(n);
    Matrix u = Matrix::Identity(d, d);
    for (const Gate &g : circuit.gates()) {
        apply_gate_left(u, n, g);
    }
    return u;
}

Matrix tableau_unitary(const CliffordTableau &tableau) {
    // U|0...0> is the joint +1 eigenvector of the Z images; U|x> follows by applying
    // the X images, which fixes every column relative to the first.
    size_t n = tableau.num_qubits();
    require_dense_capacity(n, kHardDenseLimit);
    size_t d = dim_of(n);
    Matrix projector = Matrix::Identity(d, d);
    for (size_t q = 0; q < n; q++) {
        projector = 0.5 * (Matrix::Identity(d, d) + pauli_matrix(tableau.z_image(q))) * projector;
    }
    Eigen::VectorXcd root;
    for (size_t k = 0; k < d; k++) {
        Eigen::VectorXcd v = projector.col(k);
        if (v.norm() > 1e-6) {
            root = v / v.norm();
            break;
        }
    }
    Matrix u(d, d);
    for (uint64_t x = 0; x < d; x++) {
        Eigen::VectorXcd col = root;
        for (size_t q = 0; q < n; q++) {
            if (x & bit_of(n, q)) {
                col = pauli_matrix(tableau.x_image(q)) * col;
            }
        }
        u.col(x) = col;
    }
    return u;
}

DensityMatrix prepare(const Circuit &prep, size_t num_qubits) {
    if (prep.num_qubits() != num_qubits) {
        throw std::invalid_argument("preparation circuit width does not match qubit count");
    }
    require_dense_capacity(num_qubits, kHardDenseLimit);
    size_t d = dim_of(num_qubits);
    Matrix psi = Matrix::Zero(d, 1);
    psi(0, 0) = 1;
    for (const Gate &g : prep.gates()) {
        apply_gate_left(psi, num_qubits, g);
    }
    return DensityMatrix(num_qubits, psi * psi.adjoint());
}

DensityMatrix apply_noisy_gate(const DensityMatrix &rho, const Matrix &unitary, const NoiseModel &noise) {
    size_t n = rho.num_qubits();
    require_square(unitary, n, "apply_noisy_gate unitary");
    if (noise.num_qubits() != n) {
        throw std::invalid_argument("noise model acts on " + std::to_string(noise.num_qubits()) +
                                    " qubits but the state has " + std::to_string(n));
    }
    if (noise.order() == NoiseOrder::BeforeGate) {
        Matrix noisy = noise.apply(rho.matrix());
        return DensityMatrix(n, unitary * noisy * unitary.adjoint());
    }
    Matrix ideal = unitary * rho.matrix() * unitary.adjoint();
    return DensityMatrix(n, noise.apply(ideal));
}

DensityMatrix apply_noisy_gate(const DensityMatrix &rho, const Circuit &gate, const NoiseModel &noise) {
    return apply_noisy_gate(rho, circuit_unitary(gate), noise);
}

DensityMatrix apply_noisy_gate(const DensityMatrix &rho, const CliffordTableau &gate, const NoiseModel &noise) {
    return apply_noisy_gate(rho, tableau_unitary(gate), noise);
}

double expectation(const DensityMatrix &rho, const SignedPauli &p) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("expectation of non-Hermitian observable " + p.str());
    }
    if (p.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("observable width does not match the state");
    }
    PauliMasks m = masks_of(p);
    const Matrix &r = rho.matrix();
    cd total = 0;
    for (Eigen::Index k = 0; k < r.rows(); k++) {
        total += parity_sign(static_cast<uint64_t>(k) & m.z) * r(k, static_cast<uint64_t>(k) ^ m.x);
    }
    total *= i_pow(m.log_i);
    if (std::abs(total.imag()) > 1e-10) {
        throw std::logic_error("expectation value has imaginary part " + std::to_string(total.imag()));
    }
    return std::clamp(total.real(), -1.0, 1.0);
}

ParityCounts sample_parity_shots(const DensityMatrix &rho, const Circuit &meas, std::span<const size_t> support,
                                 int sign, uint64_t shots, Rng &rng) {
    if (support.empty()) {
        throw std::invalid_argument("parity measurement needs a non-empty support");
    }
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    size_t n = rho.num_qubits();
    if (meas.num_qubits() != n) {
        throw std::invalid_argument("measurement circuit width does not match the state");
    }
    uint64_t support_mask = 0;
    for (size_t q : support) {
        if (q >= n) {
            throw std::invalid_argument("support qubit " + std::to_string(q) + " out of range");
        }
        support_mask |= bit_of(n, q);
    }
    Matrix v = circuit_unitary(meas.inverse());
    Matrix rotated = v * rho.matrix() * v.adjoint();

    // Multinomial draw over basis states as a chain of conditional binomials.
    ParityCounts counts;
    uint64_t remaining = shots;
    double remaining_mass = 0;
    Eigen::Index d = rotated.rows();
    std::vector<double> probs(d);
    for (Eigen::Index k = 0; k < d; k++) {
        probs[k] = std::max(0.0, rotated(k, k).real());
        remaining_mass += probs[k];
    }
    for (Eigen::Index k = 0; k < d && remaining > 0; k++) {
        uint64_t hits = remaining;
        if (k + 1 < d) {
            double cond = remaining_mass > 0 ? std::clamp(probs[k] / remaining_mass, 0.0, 1.0) : 1.0;
            std::binomial_distribution<uint64_t> draw(remaining, cond);
            hits = draw(rng);
        }
        remaining -= hits;
        remaining_mass -= probs[k];
        bool odd = std::popcount(static_cast<uint64_t>(k) & support_mask) & 1;
        (odd ? counts.minus : counts.plus) += hits;
    }
    if (sign < 0) {
        std::swap(counts.plus, counts.minus);
    }
    return counts;
}

double average_fidelity_from_entanglement_fidelity(double entanglement_fidelity, size_t num_qubits) {
    double d = std::ldexp(1.0, static_cast<int>(num_qubits));
    return (d * entanglement_fidelity + 1) / (d + 1);
}

double exact_average_fidelity(const Matrix &unitary, const NoiseModel &noise) {
    size_t n = noise.num_qubits();
    require_square(unitary, n, "exact_average_fidelity unitary");
    double fe = 0;
    if (noise.kind() == NoiseModel::Kind::KrausChannel) {
        // Kraus operators of U^dagger o (noisy gate).
        for (const auto &a : noise.kraus_operators()) {
            Matrix e = noise.order() == NoiseOrder::BeforeGate ? Matrix(unitary.adjoint() * unitary * a)
                                                               : Matrix(unitary.adjoint() * a * unitary);
            fe += std::norm(e.trace());
        }
        fe /= std::ldexp(1.0, static_cast<int>(2 * n));
    } else {
        // Pauli-diagonal channels: conjugating by U permutes the non-identity Paulis
        // and leaves the identity probability fixed.
        fe = noise.entanglement_fidelity();
    }
    return average_fidelity_from_entanglement_fidelity(fe, n);
}

double exact_average_fidelity(const Circuit &u, const NoiseModel &noise) {
    if (u.num_qubits() != noise.num_qubits()) {
        throw std::invalid_argument("gate and noise model widths differ");
    }
    return exact_average_fidelity(circuit_unitary(u), noise);
}

double exact_average_fidelity(const CliffordTableau &u, const NoiseModel &noise) {
    if (u.num_qubits() != noise.num_qubits()) {
        throw std::invalid_argument("gate and noise model widths differ");
    }
    return exact_average_fidelity(tableau_unitary(u), noise);
}

}  // namespace twirlcert
