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

// Single-qubit randomized benchmarking over the 24-element Clifford group.
//
// A length-m sequence is m uniformly random Cliffords followed by the one Clifford
// that inverts their product. Every one of the m + 1 elements is noisy. The survival
// probability averaged over sequences decays as F = A0 p^m + B0 and the error per
// gate is r = (1 - p) / 2.

#ifndef TWIRLCERT_RB_H
#define TWIRLCERT_RB_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twirlcert/circuit.h"
#include "twirlcert/rng.h"
#include "twirlcert/simulator.h"
#include "twirlcert/tableau.h"

namespace twirlcert {

struct SingleQubitClifford {
    /// Shortest H/P word realizing the element.
    Circuit circuit;
    CliffordTableau tableau;
    Matrix unitary;
};

/// The 24 single-qubit Cliffords (up to phase), element 0 being the identity.
const std::vector<SingleQubitClifford> &single_qubit_cliffords();

/// Index of the element with the given tableau. Throws std::invalid_argument if the
/// tableau is not a single-qubit Clifford.
size_t single_qubit_clifford_index(const CliffordTableau &t);

struct RBSequence {
    /// Indices into single_qubit_cliffords(); the last one is the inversion element.
    std::vector<size_t> elements;

    /// Random length m (excluding the inversion element).
    size_t length() const { return elements.empty() ? 0 : elements.size() - 1; }
    Circuit circuit() const;
    CliffordTableau tableau() const;
};

/// Throws std::invalid_argument for m = 0.
RBSequence generate_rb_sequence(size_t m, Rng &rng);

struct RBConfig {
    std::vector<size_t> lengths;
    size_t sequences_per_length = 24;
    /// One-qubit channel applied with every Clifford element, inversion included.
    NoiseModel noise_per_gate = NoiseModel::noiseless(1);
    /// 0 selects the exact survival probability.
    uint64_t shots = 0;

    /// Throws std::invalid_argument unless lengths are >= 1 and strictly increasing,
    /// there is at least one sequence, and the noise acts on one qubit.
    void validate() const;
};

struct RBPoint {
    size_t m = 0;
    /// Mean survival probability over the sequences of this length.
    double fidelity = 0;
};

/// Sequence j of length index i uses the stream derive_seed(seed, i * S + j).
std::vector<RBPoint> run_rb(const RBConfig &config, uint64_t seed);

/// Survival probability of one sequence, exactly.
double rb_sequence_survival(const RBSequence &sequence, const NoiseModel &noise_per_gate);

struct RBDecayFit {
    double a0 = 0;
    double p = 0;
    double b0 = 0;
    double r = 0;
    double a0_std_error = 0;
    double p_std_error = 0;
    double b0_std_error = 0;
    double r_std_error = 0;
    bool b0_fixed = false;
    /// "log-linear" or "levenberg-marquardt".
    std::string method;
};

/// With fix_b0, ordinary least squares of log(F - b0) on m; otherwise nonlinear least
/// squares of F = a0 p^m + b0. Standard errors come from the residual covariance and
/// reach r by the delta method (se_r = se_p / 2). Throws std::invalid_argument for
/// fewer than three points, fewer than two distinct lengths, or (log mode) any
/// F <= b0.
RBDecayFit fit_decay(std::span<const RBPoint> points, std::optional<double> fix_b0 = std::nullopt);

}  // namespace twirlcert

#endif
