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

#include "twirlcert/pauli.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace twirlcert {

namespace {

size_t num_words(size_t num_qubits) { return (num_qubits + 63) / 64; }

void require_same_size(const SignedPauli &p, const SignedPauli &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw std::invalid_argument(
            "Pauli qubit count mismatch: " + std::to_string(p.num_qubits()) + " vs " +
            std::to_string(q.num_qubits()));
    }
}

}  // namespace

SignedPauli::SignedPauli(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(num_words(num_qubits), 0), zs_(num_words(num_qubits), 0) {}

SignedPauli SignedPauli::from_str(std::string_view text) {
    uint8_t phase = 0;
    if (text.starts_with("+i")) {
        phase = 1;
        text.remove_prefix(2);
    } else if (text.starts_with("-i")) {
        phase = 3;
        text.remove_prefix(2);
    } else if (text.starts_with("i")) {
        phase = 1;
        text.remove_prefix(1);
    } else if (text.starts_with("+")) {
        text.remove_prefix(1);
    } else if (text.starts_with("-")) {
        phase = 2;
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("Pauli string has no qubits.");
    }
    SignedPauli result(text.size());
    result.phase_ = phase;
    for (size_t q = 0; q < text.size(); q++) {
        result.set_letter(q, text[q]);
    }
    return result;
}

std::string SignedPauli::str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_];
    out.reserve(out.size() + num_qubits_);
    for (size_t q = 0; q < num_qubits_; q++) {
        out.push_back(letter(q));
    }
    return out;
}

int SignedPauli::sign() const {
    if (!is_hermitian()) {
        throw std::logic_error("Pauli " + str() + " is not Hermitian; it has no real sign.");
    }
    return phase_ == 0 ? +1 : -1;
}

void SignedPauli::set(size_t q, bool x_bit, bool z_bit) {
    uint64_t mask = uint64_t{1} << (q & 63);
    size_t k = q >> 6;
    xs_[k] = x_bit ? (xs_[k] | mask) : (xs_[k] & ~mask);
    zs_[k] = z_bit ? (zs_[k] | mask) : (zs_[k] & ~mask);
}

char SignedPauli::letter(size_t q) const { return "IXZY"[x(q) | (z(q) << 1)]; }

void SignedPauli::set_letter(size_t q, char c) {
    switch (c) {
        case 'I':
        case '_':
            set(q, false, false);
            break;
        case 'X':
            set(q, true, false);
            break;
        case 'Y':
            set(q, true, true);
            break;
        case 'Z':
            set(q, false, true);
            break;
        default:
            throw std::invalid_argument(std::string("Not a Pauli letter: '") + c + "'.");
    }
}

size_t SignedPauli::weight() const {
    size_t total = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        total += std::popcount(xs_[k] | zs_[k]);
    }
    return total;
}

std::vector<size_t> SignedPauli::support() const {
    std::vector<size_t> out;
    for (size_t k = 0; k < xs_.size(); k++) {
        uint64_t w = xs_[k] | zs_[k];
        while (w) {
            out.push_back(k * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

bool SignedPauli::is_identity_up_to_phase() const { return weight() == 0; }

bool SignedPauli::is_z_type() const {
    return std::all_of(xs_.begin(), xs_.end(), [](uint64_t w) { return w == 0; });
}

SignedPauli SignedPauli::operator-() const {
    SignedPauli out = *this;
    out.phase_ = (phase_ + 2) & 3;
    return out;
}

SignedPauli &SignedPauli::operator*=(const SignedPauli &rhs) {
    require_same_size(*this, rhs);
    // Per qubit, s(a) s(b) = i^g s(a xor b) with g in {-1, 0, +1}.
    // g = +1 for XY, YZ, ZX and g = -1 for XZ, YX, ZY.
    int64_t log_i = int64_t{phase_} + rhs.phase_;
    for (size_t k = 0; k < xs_.size(); k++) {
        uint64_t x1 = xs_[k], z1 = zs_[k], x2 = rhs.xs_[k], z2 = rhs.zs_[k];
        uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
        uint64_t minus = (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2);
        log_i += std::popcount(plus);
        log_i -= std::popcount(minus);
        xs_[k] = x1 ^ x2;
        zs_[k] = z1 ^ z2;
    }
    phase_ = static_cast<uint8_t>(((log_i % 4) + 4) % 4);
    return *this;
}

size_t weight(const SignedPauli &p) { return p.weight(); }

SignedPauli multiply(const SignedPauli &p, const SignedPauli &q) {
    SignedPauli out = p;
    out *= q;
    return out;
}

bool commutes(const SignedPauli &p, const SignedPauli &q) {
    require_same_size(p, q);
    auto px = p.x_words(), pz = p.z_words(), qx = q.x_words(), qz = q.z_words();
    uint64_t acc = 0;
    for (size_t k = 0; k < px.size(); k++) {
        acc ^= (px[k] & qz[k]) ^ (pz[k] & qx[k]);
    }
    return std::popcount(acc) % 2 == 0;
}

SignedPauli sample_random_pauli(size_t num_qubits, size_t w, Rng &rng) {
    if (w < 1 || w > num_qubits) {
        throw std::invalid_argument(
            "Pauli weight " + std::to_string(w) + " outside [1, " + std::to_string(num_qubits) + "].");
    }
    // Partial Fisher-Yates: the first w entries form a uniform w-subset.
    std::vector<size_t> qubits(num_qubits);
    std::iota(qubits.begin(), qubits.end(), 0);
    for (size_t i = 0; i < w; i++) {
        size_t j = i + uniform_below(rng, num_qubits - i);
        std::swap(qubits[i], qubits[j]);
    }
    SignedPauli result(num_qubits);
    for (size_t i = 0; i < w; i++) {
        result.set_letter(qubits[i], "XYZ"[uniform_below(rng, 3)]);
    }
    result.set_phase(uniform_below(rng, 2) ? 2 : 0);
    return result;
}

SignedPauli z_parity(size_t num_qubits, std::span<const size_t> support, int sign) {
    SignedPauli result(num_qubits);
    for (size_t q : support) {
        if (q >= num_qubits) {
            throw std::out_of_range("Support qubit " + std::to_string(q) + " out of range.");
        }
        result.set(q, false, true);
    }
    result.set_phase(sign < 0 ? 2 : 0);
    return result;
}

}  // namespace twirlcert
