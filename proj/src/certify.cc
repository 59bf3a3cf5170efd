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

#include "twirlcert/certify.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

namespace twirlcert {

namespace {

void check(bool condition, const std::string &message) {
    if (!condition) {
        throw std::logic_error("plan invariant violated: " + message);
    }
}

void validate_weight_counts(size_t n, const WeightCounts &k_w) {
    if (k_w.empty()) {
        throw std::invalid_argument("no weights requested");
    }
    for (const auto &[w, k] : k_w) {
        if (w < 1 || w > n) {
            throw std::invalid_argument("weight " + std::to_string(w) + " outside [1, " + std::to_string(n) + "]");
        }
        if (k < 1) {
            throw std::invalid_argument("weight " + std::to_string(w) + " needs at least one repetition");
        }
    }
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double std_normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

/// P(a < X < b) for X ~ N(center, sigma), evaluated on whichever tail keeps precision.
double normal_mass(double a, double b, double center, double sigma) {
    double za = (a - center) / sigma;
    double zb = (b - center) / sigma;
    if (za >= 0) {
        return std::max(0.0, std_normal_sf(za) - std_normal_sf(zb));
    }
    if (zb <= 0) {
        return std::max(0.0, std_normal_cdf(zb) - std_normal_cdf(za));
    }
    return std::max(0.0, 1.0 - std_normal_sf(zb) - std_normal_cdf(za));
}

}  // namespace

WeightCounts uniform_weight_counts(size_t num_qubits, size_t k) {
    WeightCounts out;
    for (size_t w = 1; w <= num_qubits; w++) {
        out[w] = k;
    }
    return out;
}

WeightCounts weight_counts_for_epsilon(size_t num_qubits, double epsilon) {
    if (!(epsilon > 0 && epsilon <= 1)) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    return uniform_weight_counts(num_qubits, static_cast<size_t>(std::ceil(1.0 / (epsilon * epsilon) - 1e-9)));
}

void ExperimentPlan::check_invariants() const {
    check(target.num_qubits() == num_qubits, "target width differs from plan width");
    check(target.is_symplectic(), "target tableau is not symplectic");
    WeightCounts seen;
    for (size_t k = 0; k < entries.size(); k++) {
        const PlanEntry &e = entries[k];
        std::string where = "entry " + std::to_string(k) + ": ";
        check(e.m_k.num_qubits() == num_qubits, where + "M_k has wrong width");
        check(e.m_k.is_hermitian(), where + "M_k is not Hermitian");
        check(e.m_k.weight() == e.w, where + "weight field disagrees with M_k");
        check(e.r_k == e.m_k.sign(), where + "r_k is not the sign of M_k");
        check(e.prep == prep_clifford_for(e.m_k), where + "preparation circuit is not the canonical one");
        auto parity = z_parity(num_qubits, e.m_k.support(), e.r_k);
        auto prep = CliffordTableau::from_circuit(e.prep);
        check(prep.conjugate(parity) == e.m_k, where + "preparation does not map the parity onto M_k");
        check(target.conjugate(prep.conjugate(parity)) == e.observable, where + "observable is not U M_k U^dagger");
        check(e.observable.is_hermitian(), where + "observable is not Hermitian");
        check(e.meas == meas_basis_change(e.observable), where + "measurement circuit mismatch");
        check(e.support == e.observable.support(), where + "support mismatch");
        check(e.meas_sign == e.observable.sign(), where + "measurement sign mismatch");
        seen[e.w]++;
    }
    check(seen == k_w, "entry counts per weight differ from k_w");
}

PlanEntry make_plan_entry(const CliffordTableau &u, const SignedPauli &m_k) {
    if (m_k.num_qubits() != u.num_qubits()) {
        throw std::invalid_argument("M_k " + m_k.str() + " does not match the target width");
    }
    PlanEntry e;
    e.m_k = m_k;
    e.w = m_k.weight();
    e.prep = prep_clifford_for(m_k);
    e.r_k = m_k.sign();
    auto parity = z_parity(u.num_qubits(), m_k.support(), e.r_k);
    e.observable = u.conjugate(CliffordTableau::from_circuit(e.prep).conjugate(parity));
    e.meas = meas_basis_change(e.observable);
    e.support = e.observable.support();
    e.meas_sign = e.observable.sign();
    return e;
}

ExperimentPlan build_plan(const CliffordTableau &u, const WeightCounts &k_w, uint64_t seed,
                          const PlanOptions &options) {
    size_t n = u.num_qubits();
    validate_weight_counts(n, k_w);
    std::map<size_t, std::deque<SignedPauli>> injected;
    for (const auto &p : options.injected) {
        if (p.num_qubits() != n || !p.is_hermitian() || p.weight() == 0) {
            throw std::invalid_argument("injected Pauli " + p.str() + " is not a Hermitian non-identity " +
                                        std::to_string(n) + "-qubit Pauli");
        }
        if (!k_w.contains(p.weight())) {
            throw std::invalid_argument("injected Pauli " + p.str() + " has a weight the plan does not sample");
        }
        injected[p.weight()].push_back(p);
    }
    for (const auto &[w, queue] : injected) {
        if (queue.size() > k_w.at(w)) {
            throw std::invalid_argument("more injected Paulis of weight " + std::to_string(w) + " than k_w allows");
        }
    }

    ExperimentPlan plan;
    plan.num_qubits = n;
    plan.target = u;
    plan.seed = seed;
    plan.k_w = k_w;
    Rng rng(seed);
    for (const auto &[w, count] : k_w) {
        auto &queue = injected[w];
        for (size_t i = 0; i < count; i++) {
            SignedPauli m = sample_random_pauli(n, w, rng);
            if (!queue.empty()) {
                m = queue.front();
                queue.pop_front();
            }
            plan.entries.push_back(make_plan_entry(u, m));
        }
    }
    return plan;
}

ExperimentPlan build_exhaustive_plan(const CliffordTableau &u, uint64_t seed) {
    size_t n = u.num_qubits();
    if (n > 8) {
        throw std::invalid_argument("exhaustive plans enumerate 4^n Paulis; n = " + std::to_string(n) + " is too large");
    }
    ExperimentPlan plan;
    plan.num_qubits = n;
    plan.target = u;
    plan.seed = seed;
    Rng rng(seed);
    std::vector<SignedPauli> paulis;
    uint64_t total = uint64_t{1} << (2 * n);
    for (uint64_t code = 1; code < total; code++) {
        SignedPauli p(n);
        for (size_t q = 0; q < n; q++) {
            p.set_letter(q, "IXYZ"[(code >> (2 * q)) & 3]);
        }
        p.set_phase(uniform_below(rng, 2) ? 2 : 0);
        paulis.push_back(std::move(p));
    }
    std::stable_sort(paulis.begin(), paulis.end(),
                     [](const SignedPauli &a, const SignedPauli &b) { return a.weight() < b.weight(); });
    for (const auto &p : paulis) {
        plan.k_w[p.weight()]++;
        plan.entries.push_back(make_plan_entry(u, p));
    }
    return plan;
}

void ExperimentRecord::validate() const {
    if (r_k != 1 && r_k != -1) {
        throw std::invalid_argument("r_k must be +1 or -1");
    }
    if (shots > 0 && plus_count + minus_count != shots) {
        throw std::invalid_argument("plus and minus counts do not add up to the shot count");
    }
    if (!(t_k >= -1 && t_k <= 1)) {
        throw std::invalid_argument("t_k = " + std::to_string(t_k) + " lies outside [-1, 1]");
    }
}

ExperimentRecord record_from_counts(size_t w, int r_k, uint64_t plus, uint64_t minus) {
    if (plus + minus == 0) {
        throw std::invalid_argument("a counted record needs at least one shot");
    }
    ExperimentRecord rec;
    rec.w = w;
    rec.r_k = r_k;
    rec.shots = plus + minus;
    rec.plus_count = plus;
    rec.minus_count = minus;
    rec.t_k = (static_cast<double>(plus) - static_cast<double>(minus)) / static_cast<double>(rec.shots);
    rec.ratio = rec.t_k / r_k;
    rec.validate();
    return rec;
}

ExperimentRecord record_from_value(size_t w, int r_k, double t_k) {
    ExperimentRecord rec;
    rec.w = w;
    rec.r_k = r_k;
    rec.t_k = t_k;
    rec.ratio = t_k / r_k;
    rec.validate();
    return rec;
}

std::vector<ExperimentRecord> run_plan_simulated(const ExperimentPlan &plan, const NoiseModel &noise,
                                                 uint64_t shots, uint64_t seed, const SimulationOptions &options) {
    size_t n = plan.num_qubits;
    require_dense_capacity(n, options.max_dense_qubits);
    if (noise.num_qubits() != n) {
        throw std::invalid_argument("noise model acts on " + std::to_string(noise.num_qubits()) +
                                    " qubits but the plan has " + std::to_string(n));
    }
    Matrix unitary = tableau_unitary(plan.target);
    std::vector<ExperimentRecord> records;
    records.reserve(plan.entries.size());
    for (size_t k = 0; k < plan.entries.size(); k++) {
        const PlanEntry &e = plan.entries[k];
        DensityMatrix out = apply_noisy_gate(prepare(e.prep, n), unitary, noise);
        ExperimentRecord rec;
        if (shots == 0) {
            rec = record_from_value(e.w, e.r_k, expectation(out, e.observable));
        } else {
            Rng rng(derive_seed(seed, k));
            auto counts = sample_parity_shots(out, e.meas, e.support, e.meas_sign, shots, rng);
            rec = record_from_counts(e.w, e.r_k, counts.plus, counts.minus);
        }
        rec.entry_index = k;
        rec.m_k = e.m_k;
        rec.observable = e.observable;
        records.push_back(std::move(rec));
    }
    return records;
}

double Posterior::integral() const {
    double total = 0;
    for (double d : density) {
        total += d * cell_width;
    }
    return total;
}

ExactWeightCoefficients exact_weight_coefficients(size_t num_qubits) {
    if (num_qubits > 31) {
        throw std::invalid_argument("exact coefficients overflow 64 bits beyond 31 qubits");
    }
    ExactWeightCoefficients out;
    out.denominator = uint64_t{1} << (2 * num_qubits);
    uint64_t binom = 1;
    uint64_t pow3 = 1;
    for (size_t w = 0; w <= num_qubits; w++) {
        out.numerators.push_back(binom * pow3);
        // C(n, w+1) = C(n, w) (n - w) / (w + 1); exact since C(n,w)(n-w) is divisible by w+1.
        binom = binom * (num_qubits - w) / (w + 1);
        pow3 *= 3;
    }
    return out;
}

std::vector<double> weight_coefficients(size_t num_qubits) {
    std::vector<double> out(num_qubits + 1);
    if (num_qubits <= 31) {
        auto exact = exact_weight_coefficients(num_qubits);
        for (size_t w = 0; w <= num_qubits; w++) {
            out[w] = static_cast<double>(exact.numerators[w]) / static_cast<double>(exact.denominator);
        }
        return out;
    }
    double n = static_cast<double>(num_qubits);
    for (size_t w = 0; w <= num_qubits; w++) {
        double k = static_cast<double>(w);
        double log_c = std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1) + k * std::log(3.0) -
                       n * std::log(4.0);
        out[w] = std::exp(log_c);
    }
    return out;
}

double pr_no_error_from_lambdas(std::span<const double> lambdas) {
    if (lambdas.empty()) {
        throw std::invalid_argument("need lambda_0 .. lambda_n");
    }
    auto c = weight_coefficients(lambdas.size() - 1);
    double total = 0;
    for (size_t w = 0; w < lambdas.size(); w++) {
        total += c[w] * lambdas[w];
    }
    return total;
}

Posterior posterior(std::span<const LambdaStat> lambdas, size_t num_qubits, const PosteriorOptions &options) {
    if (options.grid_points < 2) {
        throw std::invalid_argument("posterior grid needs at least two points");
    }
    if (!(options.level > 0 && options.level < 1)) {
        throw std::invalid_argument("credible level must lie in (0, 1)");
    }
    auto c = weight_coefficients(num_qubits);
    double center = 0;
    double variance = 0;
    std::vector<bool> present(num_qubits + 1, false);
    for (const LambdaStat &s : lambdas) {
        if (s.w > num_qubits) {
            throw std::invalid_argument("lambda for weight " + std::to_string(s.w) + " exceeds n");
        }
        present[s.w] = true;
        double var = s.std_error * s.std_error;
        if (s.w == 0) {
            var = 0;
        } else if (!s.imputed && s.count < 2) {
            if (!options.variance_override.has_value()) {
                throw std::invalid_argument("lambda_" + std::to_string(s.w) + " rests on " + std::to_string(s.count) +
                                            " sample(s); collect at least two or supply a variance override");
            }
            var = *options.variance_override;
        }
        center += c[s.w] * s.mean;
        variance += c[s.w] * c[s.w] * var;
    }
    if (!present[0]) {
        center += c[0];
    }
    for (size_t w = 1; w <= num_qubits; w++) {
        if (!present[w]) {
            throw std::invalid_argument("posterior needs a lambda for weight " + std::to_string(w));
        }
    }

    Posterior post;
    const size_t g = options.grid_points;
    post.cell_width = 1.0 / static_cast<double>(g);
    post.center = center;
    post.sigma = std::sqrt(variance);
    post.level = options.level;
    post.mode = std::clamp(center, 0.0, 1.0);
    post.values.resize(g);
    post.density.assign(g, 0.0);
    for (size_t i = 0; i < g; i++) {
        post.values[i] = (static_cast<double>(i) + 0.5) * post.cell_width;
    }

    double total = post.sigma > 0 ? normal_mass(0.0, 1.0, center, post.sigma) : 0.0;
    if (!(total > 1e-300)) {
        // Point mass, or all likelihood mass far outside [0, 1]: collapse onto the
        // nearest admissible value.
        size_t cell = std::min(g - 1, static_cast<size_t>(post.mode * static_cast<double>(g)));
        post.density[cell] = 1.0 / post.cell_width;
        post.lo = post.hi = post.mode;
        return post;
    }
    for (size_t i = 0; i < g; i++) {
        double a = static_cast<double>(i) * post.cell_width;
        double b = static_cast<double>(i + 1) * post.cell_width;
        post.density[i] = normal_mass(a, b, center, post.sigma) / total / post.cell_width;
    }
    auto quantile = [&](double target) {
        double lo = 0, hi = 1;
        for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
            double mid = 0.5 * (lo + hi);
            if (normal_mass(0.0, mid, center, post.sigma) / total < target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    double tail = (1 - options.level) / 2;
    post.lo = quantile(tail);
    post.hi = quantile(1 - tail);
    return post;
}

FidelityEstimate estimate(std::span<const ExperimentRecord> records, size_t num_qubits,
                          const EstimateOptions &options) {
    if (records.empty()) {
        throw std::invalid_argument("cannot estimate from an empty record set");
    }
    if (num_qubits == 0) {
        throw std::invalid_argument("qubit count must be positive");
    }
    std::vector<std::vector<double>> ratios(num_qubits + 1);
    for (const auto &rec : records) {
        rec.validate();
        if (rec.w < 1 || rec.w > num_qubits) {
            throw std::invalid_argument("record weight " + std::to_string(rec.w) + " outside [1, " +
                                        std::to_string(num_qubits) + "]");
        }
        ratios[rec.w].push_back(rec.ratio);
    }

    FidelityEstimate est;
    est.num_qubits = num_qubits;
    est.lambda.push_back(LambdaStat{0, 1.0, 0.0, 0, false});
    for (size_t w = 1; w <= num_qubits; w++) {
        const auto &xs = ratios[w];
        LambdaStat s;
        s.w = w;
        s.count = xs.size();
        if (xs.empty()) {
            if (!options.permissive_weights) {
                throw std::invalid_argument("no records of weight " + std::to_string(w) +
                                            "; every weight 1..n must be sampled (or run in permissive mode)");
            }
            s.mean = options.missing.value;
            s.std_error = std::sqrt(options.missing.variance);
            s.imputed = true;
            est.has_imputed_weights = true;
        } else {
            double sum = 0;
            for (double x : xs) {
                sum += x;
            }
            s.mean = sum / static_cast<double>(xs.size());
            if (xs.size() >= 2) {
                double ss = 0;
                for (double x : xs) {
                    ss += (x - s.mean) * (x - s.mean);
                }
                s.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
            } else {
                s.std_error = std::numeric_limits<double>::quiet_NaN();
            }
        }
        est.lambda.push_back(s);
    }

    auto c = weight_coefficients(num_qubits);
    double variance = 0;
    for (const auto &s : est.lambda) {
        est.pr_no_error += c[s.w] * s.mean;
        if (s.w > 0) {
            double se = s.std_error;
            if (std::isnan(se) && options.posterior.variance_override.has_value()) {
                se = std::sqrt(*options.posterior.variance_override);
            }
            variance += c[s.w] * c[s.w] * se * se;
        }
    }
    est.pr_no_error_std_error = std::sqrt(variance);
    est.f_bar = average_fidelity_from_entanglement_fidelity(est.pr_no_error, num_qubits);
    double d = std::ldexp(1.0, static_cast<int>(num_qubits));
    est.f_bar_std_error = d / (d + 1) * est.pr_no_error_std_error;
    est.posterior = posterior(est.lambda, num_qubits, options.posterior);
    return est;
}

double factor_out_reference(double f_bar_target, double f_bar_reference) {
    if (!(f_bar_reference > 0)) {
        throw std::invalid_argument("reference fidelity must be positive");
    }
    return f_bar_target / f_bar_reference;
}

}  // namespace twirlcert
