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

#include <gtest/gtest.h>

#include <Eigen/QR>
#include <bit>

#include "dense_oracle.h"

namespace twirlcert {
namespace {

using oracle::cd;

Circuit sample_circuit() {
    Circuit c(3);
    c.append(GateKind::H, 0);
    c.append(GateKind::CNOT, 0, 2);
    c.append(GateKind::P, 1);
    c.append(GateKind::CZ, 1, 2);
    c.append(GateKind::SWAP, 0, 1);
    c.append(GateKind::Y, 2);
    c.append(GateKind::PDG, 0);
    return c;
}

/// Random Kraus set on n qubits from a random isometry into system (x) environment.
std::vector<Matrix> random_kraus(size_t n, size_t env, unsigned seed) {
    Eigen::Index d = Eigen::Index{1} << n;
    std::srand(seed);
    Matrix g = Matrix::Random(d * env, d);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix iso = qr.householderQ() * Matrix::Identity(d * env, d);
    std::vector<Matrix> out;
    for (size_t j = 0; j < env; j++) {
        out.push_back(iso.block(j * d, 0, d, d));
    }
    return out;
}

TEST(DenseCapacityTest, ErrorNamesTheCap) {
    EXPECT_NO_THROW(require_dense_capacity(6));
    try {
        require_dense_capacity(7);
        FAIL() << "expected CapacityError";
    } catch (const CapacityError &e) {
        EXPECT_EQ(e.cap(), 6u);
        EXPECT_NE(std::string(e.what()).find("cap of 6"), std::string::npos);
    }
    EXPECT_NO_THROW(require_dense_capacity(8, 8));
}

TEST(DensityMatrixTest, ZeroStateAndInvariants) {
    auto rho = DensityMatrix::zero_state(2);
    EXPECT_TRUE(rho.satisfies_invariants());
    EXPECT_EQ(rho.matrix()(0, 0), cd(1, 0));
    Matrix bad = Matrix::Identity(4, 4);
    EXPECT_FALSE(DensityMatrix(2, bad).satisfies_invariants());
    EXPECT_THROW(DensityMatrix(2, bad).check_invariants(), std::logic_error);
    EXPECT_THROW(DensityMatrix(2, Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST(DenseMatricesTest, PauliMatricesMatchKroneckerOracle) {
    for (const auto &s : oracle::all_pauli_strings(3)) {
        for (const char *sign : {"+", "-", "+i"}) {
            auto p = SignedPauli::from_str(sign + s);
            EXPECT_LT((pauli_matrix(p) - oracle::pauli(p.str())).norm(), 1e-14) << p.str();
        }
    }
}

TEST(DenseMatricesTest, CircuitUnitaryMatchesKroneckerOracle) {
    Circuit c = sample_circuit();
    EXPECT_LT((circuit_unitary(c) - oracle::unitary(c)).norm(), 1e-12);
}

TEST(DenseMatricesTest, TableauUnitaryEqualsCircuitUpToPhase) {
    Circuit c = sample_circuit();
    Matrix u = tableau_unitary(CliffordTableau::from_circuit(c));
    Matrix v = oracle::unitary(c);
    // u = e^{i phi} v  <=>  |tr(v^dagger u)| = d.
    EXPECT_NEAR(std::abs((v.adjoint() * u).trace()), 8.0, 1e-10);
    EXPECT_LT((u.adjoint() * u - Matrix::Identity(8, 8)).norm(), 1e-10);
    Circuit enc = bundled_circuit("encoder_513");
    EXPECT_NEAR(std::abs((oracle::unitary(enc).adjoint() * tableau_unitary(CliffordTableau::from_circuit(enc))).trace()),
                32.0, 1e-9);
}

TEST(NoiseModelTest, ValidatesPauliChannels) {
    auto xi = SignedPauli::from_str("XI");
    auto ii = SignedPauli(2);
    EXPECT_NO_THROW(NoiseModel::pauli_channel(2, {{ii, 0.9}, {xi, 0.1}}));
    EXPECT_THROW(NoiseModel::pauli_channel(2, {{ii, 0.9}, {xi, 0.2}}), std::invalid_argument);
    EXPECT_THROW(NoiseModel::pauli_channel(2, {{ii, 1.1}, {xi, -0.1}}), std::invalid_argument);
    EXPECT_THROW(NoiseModel::pauli_channel(2, {{ii, 0.5}, {ii, 0.5}}), std::invalid_argument);
    EXPECT_THROW(NoiseModel::pauli_channel(2, {{ii, 0.9}, {-xi, 0.1}}), std::invalid_argument);
    EXPECT_THROW(NoiseModel::pauli_channel(2, {{SignedPauli(3), 1.0}}), std::invalid_argument);
    EXPECT_THROW(NoiseModel::depolarizing(1, 1.5), std::invalid_argument);
}

TEST(NoiseModelTest, ValidatesKrausCompleteness) {
    Matrix a = Matrix::Identity(2, 2) * 0.9;
    EXPECT_THROW(NoiseModel::kraus_channel({a}), std::invalid_argument);
    EXPECT_NO_THROW(NoiseModel::kraus_channel(random_kraus(2, 3, 4)));
}

TEST(NoiseModelTest, FullDepolarizingGivesMaximallyMixedState) {
    Circuit x(1);
    x.append(GateKind::X, 0);
    auto out = apply_noisy_gate(DensityMatrix::zero_state(1), x, NoiseModel::depolarizing(1, 1.0));
    EXPECT_LT((out.matrix() - Matrix::Identity(2, 2) / 2.0).norm(), 1e-14);
}

TEST(NoiseModelTest, ApplyMatchesKrausExpansion) {
    std::vector<NoiseModel> models = {
        NoiseModel::depolarizing(2, 0.3),
        NoiseModel::uniform_pauli(2, 0.2),
        NoiseModel::pauli_channel(2, {{SignedPauli(2), 0.7}, {SignedPauli::from_str("XY"), 0.2},
                                      {SignedPauli::from_str("ZI"), 0.1}}),
        NoiseModel::kraus_channel(random_kraus(2, 2, 9)),
    };
    auto kraus = random_kraus(2, 4, 10);
    Matrix rho = Matrix::Zero(4, 4);
    for (const auto &a : kraus) {
        rho += a * Matrix::Identity(4, 4) * a.adjoint() / 4.0;
    }
    for (const auto &m : models) {
        Matrix expected = Matrix::Zero(4, 4);
        for (const auto &a : m.kraus_operators()) {
            expected += a * rho * a.adjoint();
        }
        EXPECT_LT((m.apply(rho) - expected).norm(), 1e-12);
        EXPECT_TRUE(DensityMatrix(2, m.apply(rho)).satisfies_invariants());
    }
}

TEST(NoiseModelTest, EntanglementFidelityMatchesChiAndChoi) {
    std::vector<NoiseModel> models = {
        NoiseModel::depolarizing(2, 0.3),
        NoiseModel::uniform_pauli(2, 0.2),
        NoiseModel::kraus_channel(random_kraus(2, 3, 12)),
        NoiseModel::kraus_channel(random_kraus(1, 2, 13)),
    };
    for (const auto &m : models) {
        auto kraus = m.kraus_operators();
        EXPECT_NEAR(m.entanglement_fidelity(), oracle::chi00(kraus), 1e-12);
        EXPECT_NEAR(m.entanglement_fidelity(), oracle::choi_entanglement_fidelity(kraus), 1e-12);
    }
    // Pr(no error) of the glossary-style uniform channel is its identity weight.
    EXPECT_NEAR(NoiseModel::uniform_pauli(3, 0.1).entanglement_fidelity(), 0.9, 1e-15);
    // Mixing with I/d leaves an identity weight of 1 - p + p/d^2.
    EXPECT_NEAR(NoiseModel::depolarizing(3, 0.1).entanglement_fidelity(), 1 - 0.1 + 0.1 / 64, 1e-15);
}

TEST(ExactAverageFidelityTest, MatchesChoiOracleForBothOrders) {
    Circuit c = sample_circuit();
    Matrix u = oracle::unitary(c);
    auto kraus = random_kraus(3, 2, 21);
    for (NoiseOrder order : {NoiseOrder::BeforeGate, NoiseOrder::AfterGate}) {
        auto noise = NoiseModel::kraus_channel(kraus).with_order(order);
        std::vector<Matrix> composed;
        for (const auto &a : kraus) {
            composed.push_back(order == NoiseOrder::BeforeGate ? Matrix(u.adjoint() * (u * a))
                                                               : Matrix(u.adjoint() * a * u));
        }
        double fe = oracle::choi_entanglement_fidelity(composed);
        EXPECT_NEAR(exact_average_fidelity(c, noise), (8 * fe + 1) / 9, 1e-12);
    }
}

TEST(ExactAverageFidelityTest, PauliChannelsUseIdentityProbability) {
    auto noise = NoiseModel::pauli_channel(
        3, {{SignedPauli(3), 0.85}, {SignedPauli::from_str("XIZ"), 0.1}, {SignedPauli::from_str("YYY"), 0.05}});
    Circuit c = bundled_circuit("encoder_3q_phase");
    EXPECT_NEAR(exact_average_fidelity(c, noise), (8 * 0.85 + 1) / 9, 1e-12);
    auto kraus = NoiseModel::kraus_channel(noise.kraus_operators());
    EXPECT_NEAR(exact_average_fidelity(c, kraus), (8 * 0.85 + 1) / 9, 1e-12);
    EXPECT_NEAR(exact_average_fidelity(CliffordTableau::from_circuit(c), noise), (8 * 0.85 + 1) / 9, 1e-12);
}

TEST(ExactAverageFidelityTest, HaarAverageFormulaOnOneQubit) {
    // Amplitude damping: F_avg = 1/2 + sqrt(1-g)/3 + (1-g)/6.
    double g = 0.3;
    Matrix a0(2, 2), a1(2, 2);
    a0 << 1, 0, 0, std::sqrt(1 - g);
    a1 << 0, std::sqrt(g), 0, 0;
    Circuit id(1);
    double expected = 0.5 + std::sqrt(1 - g) / 3 + (1 - g) / 6;
    EXPECT_NEAR(exact_average_fidelity(id, NoiseModel::kraus_channel({a0, a1})), expected, 1e-12);
}

TEST(ExpectationTest, MatchesTraceFormula) {
    Circuit c = sample_circuit();
    auto rho = prepare(c, 3);
    EXPECT_TRUE(rho.satisfies_invariants());
    for (const auto &s : oracle::all_pauli_strings(3)) {
        auto p = SignedPauli::from_str("-" + s);
        double dense = (rho.matrix() * oracle::pauli(p.str())).trace().real();
        EXPECT_NEAR(expectation(rho, p), dense, 1e-12) << s;
    }
    EXPECT_THROW(expectation(rho, SignedPauli::from_str("iXXX")), std::invalid_argument);
}

TEST(PrepareTest, PreparesStabilizerState) {
    auto m = SignedPauli::from_str("YXZ");
    auto rho = prepare(prep_clifford_for(m), 3);
    EXPECT_NEAR(expectation(rho, m), 1.0, 1e-12);
}

TEST(SampleParityShotsTest, DeterministicForSeed) {
    auto rho = prepare(prep_clifford_for(SignedPauli::from_str("XY")), 2);
    auto noisy = apply_noisy_gate(rho, Matrix(Matrix::Identity(4, 4)), NoiseModel::depolarizing(2, 0.4));
    auto meas = meas_basis_change(SignedPauli::from_str("XY"));
    std::vector<size_t> support{0, 1};
    Rng a(5), b(5);
    auto ca = sample_parity_shots(noisy, meas, support, 1, 100, a);
    auto cb = sample_parity_shots(noisy, meas, support, 1, 100, b);
    EXPECT_EQ(ca.plus, cb.plus);
    EXPECT_EQ(ca.plus + ca.minus, 100u);
}

TEST(SampleParityShotsTest, RejectsBadArguments) {
    auto rho = DensityMatrix::zero_state(2);
    Rng rng(1);
    std::vector<size_t> none;
    std::vector<size_t> one{0};
    EXPECT_THROW(sample_parity_shots(rho, Circuit(2), none, 1, 10, rng), std::invalid_argument);
    EXPECT_THROW(sample_parity_shots(rho, Circuit(2), one, 1, 0, rng), std::invalid_argument);
}

// 10^6 shots per trial: the sample mean stays within 5/sqrt(shots) of the exact value.
TEST(SampleParityShotsTest, MeanConvergesInAlmostEveryTrial) {
    Circuit c = sample_circuit();
    auto rho = apply_noisy_gate(prepare(prep_clifford_for(SignedPauli::from_str("XXZ")), 3), c,
                                NoiseModel::depolarizing(3, 0.25));
    auto obs = CliffordTableau::from_circuit(c).conjugate(SignedPauli::from_str("XXZ"));
    double exact = expectation(rho, obs);
    ASSERT_GT(std::abs(exact), 0.5);
    auto meas = meas_basis_change(obs);
    auto support = obs.support();
    const uint64_t shots = 1000000;
    int within = 0;
    for (uint64_t trial = 0; trial < 1000; trial++) {
        Rng rng(derive_seed(314, trial));
        auto counts = sample_parity_shots(rho, meas, support, obs.sign(), shots, rng);
        double mean = (static_cast<double>(counts.plus) - static_cast<double>(counts.minus)) / shots;
        within += std::abs(mean - exact) < 5.0 / std::sqrt(static_cast<double>(shots));
    }
    EXPECT_GE(within, 999);
}

// Sampled parities against the exact basis-state distribution, within 5 sigma.
TEST(SampleParityShotsTest, BasisHistogramMatchesDistribution) {
    Circuit c = sample_circuit();
    auto rho = apply_noisy_gate(DensityMatrix::zero_state(3), c, NoiseModel::depolarizing(3, 0.3));
    std::vector<double> probs(8);
    for (int k = 0; k < 8; k++) {
        probs[k] = rho.matrix()(k, k).real();
    }
    // The parities of all seven non-empty subsets determine the distribution.
    Rng rng(99);
    const uint64_t shots = 200000;
    for (uint64_t mask = 1; mask < 8; mask++) {
        std::vector<size_t> support;
        for (size_t q = 0; q < 3; q++) {
            if (mask & (uint64_t{1} << (2 - q))) {
                support.push_back(q);
            }
        }
        double p_plus = 0;
        for (int k = 0; k < 8; k++) {
            if (!(std::popcount(static_cast<uint64_t>(k) & mask) & 1)) {
                p_plus += probs[k];
            }
        }
        auto counts = sample_parity_shots(rho, Circuit(3), support, 1, shots, rng);
        double expected = p_plus * shots;
        double sd = std::sqrt(shots * p_plus * (1 - p_plus));
        EXPECT_LT(std::abs(static_cast<double>(counts.plus) - expected), 5 * sd + 1) << mask;
    }
}

TEST(AverageFidelityFormulaTest, ClosedForm) {
    EXPECT_DOUBLE_EQ(average_fidelity_from_entanglement_fidelity(1.0, 3), 1.0);
    EXPECT_DOUBLE_EQ(average_fidelity_from_entanglement_fidelity(1.0 / 64, 3), 0.125);
}

}  // namespace
}  // namespace twirlcert
