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

#include "twirlcert/rb.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace twirlcert {

namespace {

std::vector<SingleQubitClifford> enumerate_cliffords() {
    // Breadth-first search over words in H and P gives each element its shortest word.
    std::vector<SingleQubitClifford> out;
    std::deque<Circuit> frontier{Circuit(1)};
    while (!frontier.empty()) {
        Circuit c = std::move(frontier.front());
        frontier.pop_front();
        CliffordTableau t = CliffordTableau::from_circuit(c);
        bool seen = std::any_of(out.begin(), out.end(), [&](const auto &e) { return e.tableau == t; });
        if (seen) {
            continue;
        }
        out.push_back(SingleQubitClifford{c, t, circuit_unitary(c)});
        for (GateKind k : {GateKind::H, GateKind::P}) {
            Circuit next = c;
            next.append(k, 0);
            frontier.push_back(std::move(next));
        }
    }
    if (out.size() != 24) {
        throw std::logic_error("single-qubit Clifford enumeration found " + std::to_string(out.size()) + " elements");
    }
    return out;
}

struct LineFit {
    double intercept = 0;
    double slope = 0;
    double intercept_se = 0;
    double slope_se = 0;
};

LineFit ordinary_least_squares(const std::vector<double> &x, const std::vector<double> &y) {
    double nn = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= nn;
    my /= nn;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (size_t i = 0; i < x.size(); i++) {
        double e = y[i] - f.intercept - f.slope * x[i];
        ssr += e * e;
    }
    double s2 = ssr / (nn - 2);
    f.slope_se = std::sqrt(s2 / sxx);
    f.intercept_se = std::sqrt(s2 * (1 / nn + mx * mx / sxx));
    return f;
}

}  // namespace

const std::vector<SingleQubitClifford> &single_qubit_cliffords() {
    static const std::vector<SingleQubitClifford> group = enumerate_cliffords();
    return group;
}

size_t single_qubit_clifford_index(const CliffordTableau &t) {
    const auto &group = single_qubit_cliffords();
    for (size_t i = 0; i < group.size(); i++) {
        if (group[i].tableau == t) {
            return i;
        }
    }
    throw std::invalid_argument("tableau is not a single-qubit Clifford");
}

Circuit RBSequence::circuit() const {
    Circuit c(1);
    for (size_t e : elements) {
        c.append(single_qubit_cliffords().at(e).circuit);
    }
    return c;
}

CliffordTableau RBSequence::tableau() const { return CliffordTableau::from_circuit(circuit()); }

RBSequence generate_rb_sequence(size_t m, Rng &rng) {
    if (m == 0) {
        throw std::invalid_argument("RB sequence length must be at least 1");
    }
    const auto &group = single_qubit_cliffords();
    RBSequence seq;
    CliffordTableau total(1);
    for (size_t i = 0; i < m; i++) {
        size_t e = uniform_below(rng, group.size());
        seq.elements.push_back(e);
        // Later gates act after earlier ones: total <- g o total.
        total = compose(group[e].tableau, total);
    }
    seq.elements.push_back(single_qubit_clifford_index(inverse(total)));
    return seq;
}

void RBConfig::validate() const {
    if (lengths.empty()) {
        throw std::invalid_argument("RB needs at least one sequence length");
    }
    for (size_t i = 0; i < lengths.size(); i++) {
        if (lengths[i] < 1) {
            throw std::invalid_argument("RB sequence lengths must be >= 1");
        }
        if (i > 0 && lengths[i] <= lengths[i - 1]) {
            throw std::invalid_argument("RB sequence lengths must be strictly increasing");
        }
    }
    if (sequences_per_length < 1) {
        throw std::invalid_argument("RB needs at least one sequence per length");
    }
    if (noise_per_gate.num_qubits() != 1) {
        throw std::invalid_argument("RB per-gate noise must act on one qubit");
    }
}

double rb_sequence_survival(const RBSequence &sequence, const NoiseModel &noise_per_gate) {
    const auto &group = single_qubit_cliffords();
    DensityMatrix rho = DensityMatrix::zero_state(1);
    for (size_t e : sequence.elements) {
        rho = apply_noisy_gate(rho, group.at(e).unitary, noise_per_gate);
    }
    return std::clamp(rho.matrix()(0, 0).real(), 0.0, 1.0);
}

std::vector<RBPoint> run_rb(const RBConfig &config, uint64_t seed) {
    config.validate();
    std::vector<RBPoint> points;
    const size_t s = config.sequences_per_length;
    for (size_t i = 0; i < config.lengths.size(); i++) {
        double total = 0;
        for (size_t j = 0; j < s; j++) {
            Rng rng(derive_seed(seed, i * s + j));
            RBSequence seq = generate_rb_sequence(config.lengths[i], rng);
            double survival = rb_sequence_survival(seq, config.noise_per_gate);
            if (config.shots > 0) {
                std::binomial_distribution<uint64_t> draw(config.shots, survival);
                survival = static_cast<double>(draw(rng)) / static_cast<double>(config.shots);
            }
            total += survival;
        }
        points.push_back(RBPoint{config.lengths[i], total / static_cast<double>(s)});
    }
    return points;
}

RBDecayFit fit_decay(std::span<const RBPoint> input, std::optional<double> fix_b0) {
    if (input.size() < 3) {
        throw std::invalid_argument("decay fit needs at least three (m, F) points");
    }
    std::vector<RBPoint> points(input.begin(), input.end());
    std::sort(points.begin(), points.end(), [](const RBPoint &a, const RBPoint &b) {
        return a.m != b.m ? a.m < b.m : a.fidelity < b.fidelity;
    });
    std::set<size_t> distinct;
    for (const auto &pt : points) {
        if (!std::isfinite(pt.fidelity)) {
            throw std::invalid_argument("non-finite fidelity at m = " + std::to_string(pt.m));
        }
        distinct.insert(pt.m);
    }
    if (distinct.size() < 2) {
        throw std::invalid_argument("decay fit is degenerate: all points share one sequence length");
    }

    std::vector<double> xs, ys;
    for (const auto &pt : points) {
        xs.push_back(static_cast<double>(pt.m));
        ys.push_back(pt.fidelity);
    }

    RBDecayFit fit;
    if (fix_b0.has_value()) {
        std::vector<double> logs;
        for (const auto &pt : points) {
            if (!(pt.fidelity > *fix_b0)) {
                throw std::invalid_argument("cannot take log(F - b0) at m = " + std::to_string(pt.m) + ": F = " +
                                            std::to_string(pt.fidelity) + " <= b0 = " + std::to_string(*fix_b0));
            }
            logs.push_back(std::log(pt.fidelity - *fix_b0));
        }
        LineFit line = ordinary_least_squares(xs, logs);
        fit.method = "log-linear";
        fit.b0_fixed = true;
        fit.b0 = *fix_b0;
        fit.p = std::exp(line.slope);
        fit.a0 = std::exp(line.intercept);
        fit.p_std_error = fit.p * line.slope_se;
        fit.a0_std_error = fit.a0 * line.intercept_se;
        fit.r = (1 - fit.p) / 2;
        fit.r_std_error = fit.p_std_error / 2;
        return fit;
    }

    if (distinct.size() < 3) {
        throw std::invalid_argument("three-parameter decay fit needs at least three distinct lengths");
    }
    double f_min = *std::min_element(ys.begin(), ys.end());
    double f_max = *std::max_element(ys.begin(), ys.end());
    if (f_max == f_min) {
        throw std::invalid_argument("decay fit is degenerate: all fidelities are equal");
    }

    // Start from the log-linear fit with a guessed asymptote, then Levenberg-Marquardt.
    Eigen::Vector3d theta;  // a0, p, b0
    {
        double b_guess = f_min > 0.5 ? 0.5 : f_min - 0.05 * (f_max - f_min);
        std::vector<double> logs;
        for (double y : ys) {
            logs.push_back(std::log(std::max(y - b_guess, 1e-12)));
        }
        LineFit line = ordinary_least_squares(xs, logs);
        theta << std::exp(line.intercept), std::exp(line.slope), b_guess;
    }
    const size_t count = xs.size();
    auto residuals = [&](const Eigen::Vector3d &t) {
        Eigen::VectorXd r(count);
        for (size_t i = 0; i < count; i++) {
            r(i) = ys[i] - (t(0) * std::pow(t(1), xs[i]) + t(2));
        }
        return r;
    };
    auto jacobian = [&](const Eigen::Vector3d &t) {
        Eigen::MatrixXd j(count, 3);
        for (size_t i = 0; i < count; i++) {
            j(i, 0) = std::pow(t(1), xs[i]);
            j(i, 1) = t(0) * xs[i] * std::pow(t(1), xs[i] - 1);
            j(i, 2) = 1;
        }
        return j;
    };
    double lambda = 1e-3;
    double cost = residuals(theta).squaredNorm();
    for (int iter = 0; iter < 500; iter++) {
        Eigen::MatrixXd j = jacobian(theta);
        Eigen::VectorXd r = residuals(theta);
        Eigen::Matrix3d jtj = j.transpose() * j;
        Eigen::Vector3d g = j.transpose() * r;
        Eigen::Matrix3d damped = jtj;
        damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
        Eigen::Vector3d step = damped.ldlt().solve(g);
        Eigen::Vector3d trial = theta + step;
        double trial_cost = trial(1) > 0 ? residuals(trial).squaredNorm() : std::numeric_limits<double>::infinity();
        if (trial_cost < cost) {
            bool converged = cost - trial_cost <= 1e-15 * std::max(cost, 1e-300) ||
                             step.norm() <= 1e-14 * (theta.norm() + 1e-14);
            theta = trial;
            cost = trial_cost;
            lambda = std::max(lambda / 10, 1e-12);
            if (converged) {
                break;
            }
        } else {
            lambda *= 10;
            if (lambda > 1e12) {
                break;
            }
        }
    }

    fit.method = "levenberg-marquardt";
    fit.a0 = theta(0);
    fit.p = theta(1);
    fit.b0 = theta(2);
    fit.r = (1 - fit.p) / 2;
    if (count > 3) {
        Eigen::MatrixXd j = jacobian(theta);
        Eigen::Matrix3d cov = (j.transpose() * j).inverse() * (cost / static_cast<double>(count - 3));
        fit.a0_std_error = std::sqrt(std::max(cov(0, 0), 0.0));
        fit.p_std_error = std::sqrt(std::max(cov(1, 1), 0.0));
        fit.b0_std_error = std::sqrt(std::max(cov(2, 2), 0.0));
    } else {
        double nan = std::numeric_limits<double>::quiet_NaN();
        fit.a0_std_error = fit.p_std_error = fit.b0_std_error = nan;
    }
    fit.r_std_error = fit.p_std_error / 2;
    return fit;
}

}  // namespace twirlcert
