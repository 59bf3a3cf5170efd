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

// Fidelity certification of a Clifford gate by twirling.
//
// For each weight w a set of random signed Paulis M_k is drawn. Each M_k is prepared
// as the +1 eigenstate of its unsigned part by a layer of single-qubit Cliffords C
// (so r_k = sign(M_k)), the noisy gate is applied, and the Pauli U M_k U^dagger is
// measured through a second single-qubit layer C'. The ratios t_k / r_k average to
// the per-weight survival lambda_w of the noise E in (noisy gate) = U o E, from which
//
//     Pr(no error) = sum_w 3^w C(n, w) / 4^n * lambda_w,   lambda_0 = 1,
//     F_avg        = (2^n Pr(no error) + 1) / (2^n + 1).
//
// Planning touches only Paulis and tableaus; nothing here scales as 2^n except the
// optional simulated execution.

#ifndef TWIRLCERT_CERTIFY_H
#define TWIRLCERT_CERTIFY_H

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "twirlcert/circuit.h"
#include "twirlcert/pauli.h"
#include "twirlcert/simulator.h"
#include "twirlcert/tableau.h"

namespace twirlcert {

/// Repetitions k_w per Pauli weight w.
using WeightCounts = std::map<size_t, size_t>;

/// k repetitions for every weight 1..n.
WeightCounts uniform_weight_counts(size_t num_qubits, size_t k);

/// ceil(1 / epsilon^2) repetitions for every weight 1..n.
WeightCounts weight_counts_for_epsilon(size_t num_qubits, double epsilon);

struct PlanEntry {
    SignedPauli m_k;
    size_t w = 0;
    Circuit prep;
    int r_k = 1;
    /// U M_k U^dagger, the Pauli measured after the noisy gate.
    SignedPauli observable;
    Circuit meas;
    std::vector<size_t> support;
    int meas_sign = 1;

    bool operator==(const PlanEntry &) const = default;
};

struct ExperimentPlan {
    size_t num_qubits = 0;
    CliffordTableau target;
    std::vector<PlanEntry> entries;
    uint64_t seed = 0;
    WeightCounts k_w;

    /// Recomputes every derived field from m_k and the target and checks the per-weight
    /// entry counts. Throws std::logic_error on the first inconsistency.
    void check_invariants() const;

    bool operator==(const ExperimentPlan &) const = default;
};

/// One plan entry for a given M_k. The observable is computed as
/// conjugate(u, conjugate(C, r_k Z_supp)), where C is the preparation layer and
/// r_k Z_supp is the parity C maps onto M_k.
PlanEntry make_plan_entry(const CliffordTableau &u, const SignedPauli &m_k);

struct PlanOptions {
    /// Forced M_k draws. Each replaces the next random draw of its weight.
    std::vector<SignedPauli> injected;
};

/// Draws k_w[w] random signed weight-w Paulis for each listed weight and builds the
/// entries. Deterministic given the seed; polynomial in n and the total count.
ExperimentPlan build_plan(const CliffordTableau &u, const WeightCounts &k_w, uint64_t seed,
                          const PlanOptions &options = {});

/// Every non-identity unsigned Pauli exactly once, with a random sign. Averages over
/// these give lambda_w exactly in shots=0 mode. Enumerates 4^n - 1 Paulis, so only
/// for small n.
ExperimentPlan build_exhaustive_plan(const CliffordTableau &u, uint64_t seed);

struct ExperimentRecord {
    size_t entry_index = 0;
    size_t w = 0;
    int r_k = 1;
    /// Zero-qubit Paulis when the record was ingested without them.
    SignedPauli m_k;
    SignedPauli observable;
    /// 0 means the value is exact (no sampling) or was supplied directly.
    uint64_t shots = 0;
    uint64_t plus_count = 0;
    uint64_t minus_count = 0;
    double t_k = 0;
    double ratio = 0;

    /// Throws std::invalid_argument unless the counts are consistent and t_k lies in [-1, 1].
    void validate() const;
};

/// Record from +1/-1 counts; t_k = (plus - minus) / (plus + minus).
ExperimentRecord record_from_counts(size_t w, int r_k, uint64_t plus, uint64_t minus);

/// Record from a directly measured expectation value.
ExperimentRecord record_from_value(size_t w, int r_k, double t_k);

struct SimulationOptions {
    size_t max_dense_qubits = kDefaultMaxDenseQubits;
};

/// Executes every entry on the dense simulator: prepare, apply the noisy target, then
/// measure. shots == 0 selects exact expectation values. Entry k draws from its own
/// stream derived from `seed`, so results do not depend on execution order.
std::vector<ExperimentRecord> run_plan_simulated(const ExperimentPlan &plan, const NoiseModel &noise,
                                                 uint64_t shots, uint64_t seed,
                                                 const SimulationOptions &options = {});

struct LambdaStat {
    size_t w = 0;
    double mean = 0;
    double std_error = 0;
    size_t count = 0;
    /// Filled from a prior because no records of this weight were supplied.
    bool imputed = false;
};

/// Density of Pr(no error) on a grid of `values` (cell midpoints on [0, 1]).
struct Posterior {
    std::vector<double> values;
    std::vector<double> density;
    double cell_width = 0;
    /// Parameters of the untruncated Gaussian.
    double center = 0;
    double sigma = 0;
    double mode = 0;
    double lo = 0;
    double hi = 0;
    double level = 0;

    double integral() const;
};

/// Exact weight coefficients 3^w C(n, w) over 4^n. Throws for n > 31.
struct ExactWeightCoefficients {
    std::vector<uint64_t> numerators;
    uint64_t denominator = 0;
};
ExactWeightCoefficients exact_weight_coefficients(size_t num_qubits);

/// 3^w C(n, w) / 4^n for w = 0..n, i.e. the Binomial(n, 3/4) pmf.
std::vector<double> weight_coefficients(size_t num_qubits);

/// Pr(no error) from lambda_0..lambda_n.
double pr_no_error_from_lambdas(std::span<const double> lambdas);

struct PosteriorOptions {
    size_t grid_points = 2000;
    double level = 0.95;
    /// Variance used for the mean of any lambda_w estimated from fewer than two samples.
    std::optional<double> variance_override;
};

/// Gaussian likelihood for each lambda_w mean, propagated linearly to Pr(no error),
/// uniform prior on [0, 1]: a Gaussian truncated to [0, 1]. Reports the central
/// credible interval at the requested level. Throws std::invalid_argument when a
/// sampled weight has fewer than two records and no variance override is given.
Posterior posterior(std::span<const LambdaStat> lambdas, size_t num_qubits, const PosteriorOptions &options = {});

struct MissingWeightPrior {
    double value = 0.0;
    /// Uniform on [-1, 1].
    double variance = 1.0 / 3.0;
};

struct EstimateOptions {
    /// Allow weights with no records; their lambda comes from `missing` and is flagged.
    bool permissive_weights = false;
    MissingWeightPrior missing;
    PosteriorOptions posterior;
};

struct FidelityEstimate {
    size_t num_qubits = 0;
    /// Entries for w = 0..n; lambda_0 = 1 with zero error.
    std::vector<LambdaStat> lambda;
    double pr_no_error = 0;
    double pr_no_error_std_error = 0;
    double f_bar = 0;
    double f_bar_std_error = 0;
    Posterior posterior;
    bool has_imputed_weights = false;
};

/// Throws std::invalid_argument on an empty record set, weights outside 1..n, or
/// (unless permissive) weights with no records.
FidelityEstimate estimate(std::span<const ExperimentRecord> records, size_t num_qubits,
                          const EstimateOptions &options = {});

/// Ratio of a target's average fidelity to a reference run's, under the assumption
/// that preparation and measurement errors factor out.
double factor_out_reference(double f_bar_target, double f_bar_reference);

}  // namespace twirlcert

#endif
