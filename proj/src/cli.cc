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

#include "twirlcert/cli.h"

#include <filesystem>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "twirlcert/certify.h"
#include "twirlcert/circuit.h"
#include "twirlcert/plan_io.h"
#include "twirlcert/rb.h"
#include "twirlcert/simulator.h"
#include "twirlcert/tableau.h"

namespace twirlcert {

namespace {

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<uint64_t> seed;
    std::string out;
    bool no_timestamp = false;
    size_t max_dense_qubits = kDefaultMaxDenseQubits;

    // plan
    std::string circuit;
    std::string kw;
    std::optional<double> epsilon;
    std::optional<size_t> k;
    std::vector<std::string> inject;
    bool exhaustive = false;

    // simulate
    std::string plan_path;
    std::string noise_path;
    uint64_t shots = 512;

    // estimate
    std::string records_path;
    std::optional<size_t> qubits;
    double level = 0.95;
    bool permissive = false;
    std::string posterior_out;
    size_t grid_points = 2000;
    std::optional<double> variance_override;

    // rb
    std::string config_path;
    std::string table_path;
    std::optional<double> fix_b0;
    bool nonlinear = false;
};

Circuit load_circuit(const std::string &source) {
    if (std::filesystem::is_regular_file(source)) {
        return Circuit::from_text(read_text_file(source));
    }
    auto names = bundled_circuit_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) {
        return bundled_circuit(source);
    }
    std::string known;
    for (const auto &n : names) {
        known += " " + n;
    }
    throw UsageError("circuit '" + source + "' is neither a file nor a bundled circuit (bundled:" + known + ")");
}

WeightCounts parse_kw(const std::string &text) {
    WeightCounts out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        try {
            if (eq == std::string::npos) {
                throw std::invalid_argument("");
            }
            size_t used = 0;
            unsigned long w = std::stoul(item.substr(0, eq), &used);
            if (used != eq) {
                throw std::invalid_argument("");
            }
            std::string rest = item.substr(eq + 1);
            unsigned long k = std::stoul(rest, &used);
            if (used != rest.size()) {
                throw std::invalid_argument("");
            }
            out[w] = k;
        } catch (const std::exception &) {
            throw UsageError("bad --kw item '" + item + "' (expected w=count)");
        }
    }
    if (out.empty()) {
        throw UsageError("--kw needs at least one w=count item");
    }
    return out;
}

uint64_t effective_seed(const Options &o, std::ostream &out) {
    uint64_t seed = o.seed ? *o.seed : (uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
    out << "seed: " << seed << "\n";
    return seed;
}

RunManifest manifest_for(const std::string &command, std::vector<std::string> inputs, std::optional<uint64_t> seed,
                         const Options &o) {
    RunManifest m;
    m.command = command;
    m.inputs = std::move(inputs);
    m.seed = seed;
    if (!o.no_timestamp) {
        m.timestamp = current_timestamp();
    }
    return m;
}

void emit(const Options &o, const std::string &contents, std::ostream &out) {
    if (o.out.empty()) {
        out << contents;
    } else {
        write_text_file(o.out, contents);
        out << "wrote " << o.out << "\n";
    }
}

int cmd_plan(const Options &o, const std::string &command, std::ostream &out) {
    Circuit circuit = load_circuit(o.circuit);
    CliffordTableau u = CliffordTableau::from_circuit(circuit);
    size_t n = circuit.num_qubits();
    int chosen = !o.kw.empty() + o.epsilon.has_value() + o.k.has_value() + o.exhaustive;
    if (chosen != 1) {
        throw UsageError("choose exactly one of --kw, --epsilon, --k, --exhaustive");
    }
    uint64_t seed = effective_seed(o, out);
    ExperimentPlan plan;
    if (o.exhaustive) {
        if (!o.inject.empty()) {
            throw UsageError("--inject-pauli cannot be combined with --exhaustive");
        }
        plan = build_exhaustive_plan(u, seed);
    } else {
        WeightCounts k_w;
        if (!o.kw.empty()) {
            k_w = parse_kw(o.kw);
        } else if (o.epsilon) {
            k_w = weight_counts_for_epsilon(n, *o.epsilon);
        } else {
            k_w = uniform_weight_counts(n, *o.k);
        }
        PlanOptions options;
        for (const auto &text : o.inject) {
            options.injected.push_back(SignedPauli::from_str(text));
        }
        plan = build_plan(u, k_w, seed, options);
    }
    out << render_plan_summary(plan);
    RunManifest m = manifest_for(command, {o.circuit}, seed, o);
    emit(o, write_plan(plan, &m), out);
    return kExitOk;
}

int cmd_simulate(const Options &o, const std::string &command, std::ostream &out) {
    ExperimentPlan plan = read_plan(read_text_file(o.plan_path));
    require_dense_capacity(plan.num_qubits, o.max_dense_qubits);
    NoiseModel noise = parse_noise_config(read_text_file(o.noise_path), plan.num_qubits);
    uint64_t seed = effective_seed(o, out);
    SimulationOptions sim;
    sim.max_dense_qubits = o.max_dense_qubits;
    auto records = run_plan_simulated(plan, noise, o.shots, seed, sim);
    out << "simulated " << records.size() << " experiments ("
        << (o.shots == 0 ? std::string("exact expectation values") : std::to_string(o.shots) + " shots each")
        << ")\n";
    RunManifest m = manifest_for(command, {o.plan_path, o.noise_path}, seed, o);
    emit(o, write_records(records, plan.num_qubits, &m), out);
    return kExitOk;
}

int cmd_estimate(const Options &o, std::ostream &out) {
    RecordSet set = read_records(read_text_file(o.records_path));
    size_t n = o.qubits.value_or(set.num_qubits);
    EstimateOptions options;
    options.permissive_weights = o.permissive;
    options.posterior.level = o.level;
    options.posterior.grid_points = o.grid_points;
    options.posterior.variance_override = o.variance_override;
    FidelityEstimate est = estimate(set.records, n, options);
    out << render_estimate_report(est);
    if (!o.posterior_out.empty()) {
        write_text_file(o.posterior_out, write_posterior_grid(est.posterior));
        out << "wrote posterior grid to " << o.posterior_out << "\n";
    }
    return kExitOk;
}

int cmd_oracle(const Options &o, std::ostream &out) {
    Circuit circuit = load_circuit(o.circuit);
    require_dense_capacity(circuit.num_qubits(), o.max_dense_qubits);
    NoiseModel noise = parse_noise_config(read_text_file(o.noise_path), circuit.num_qubits());
    double f = exact_average_fidelity(circuit, noise);
    double d = std::ldexp(1.0, static_cast<int>(circuit.num_qubits()));
    out << "Pr(no error): " << format_double(((d + 1) * f - 1) / d) << "\n";
    out << "F_avg: " << format_double(f) << "\n";
    return kExitOk;
}

int cmd_rb(const Options &o, const std::string &command, std::ostream &out) {
    if (o.config_path.empty() == o.table_path.empty()) {
        throw UsageError("rb needs exactly one of --config or --table");
    }
    if (o.fix_b0 && o.nonlinear) {
        throw UsageError("--fix-b0 and --nonlinear are mutually exclusive");
    }
    std::vector<RBPoint> points;
    std::optional<double> fix_b0 = 0.5;
    if (!o.config_path.empty()) {
        RBRunConfig run = parse_rb_config(read_text_file(o.config_path));
        fix_b0 = run.fix_b0;
        uint64_t seed = effective_seed(o, out);
        points = run_rb(run.config, seed);
        RunManifest m = manifest_for(command, {o.config_path}, seed, o);
        emit(o, write_rb_table(points, &m), out);
    } else {
        points = read_rb_table(read_text_file(o.table_path));
    }
    if (o.fix_b0) {
        fix_b0 = o.fix_b0;
    } else if (o.nonlinear) {
        fix_b0.reset();
    }
    out << render_rb_report(fit_decay(points, fix_b0));
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Certify Clifford gates by twirling, and benchmark single-qubit gates."};
    app.require_subcommand(1);
    Options o;

    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", o.seed, "RNG seed (random and printed when omitted)");
    };
    auto add_out = [&](CLI::App *sub) {
        sub->add_option("--out", o.out, "Output file (stdout when omitted)");
        sub->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp from the output manifest");
    };

    auto *plan = app.add_subcommand("plan", "Draw random Paulis and write an experiment plan");
    plan->add_option("circuit", o.circuit, "Circuit file or bundled circuit name")->required();
    plan->add_option("--kw", o.kw, "Repetitions per weight, e.g. 1=30,2=30,3=30");
    plan->add_option("--epsilon", o.epsilon, "Target precision; k = ceil(1/epsilon^2) per weight");
    plan->add_option("--k", o.k, "Same repetition count for every weight");
    plan->add_flag("--exhaustive", o.exhaustive, "Use every non-identity Pauli once (small n only)");
    plan->add_option("--inject-pauli", o.inject)->group("");
    add_seed(plan);
    add_out(plan);

    auto *simulate = app.add_subcommand("simulate", "Run a plan on the dense simulator");
    simulate->add_option("--plan", o.plan_path, "Plan file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--noise", o.noise_path, "Noise config (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--shots", o.shots, "Shots per experiment; 0 gives exact expectation values");
    simulate->add_option("--max-dense-qubits", o.max_dense_qubits, "Dense simulation cap");
    add_seed(simulate);
    add_out(simulate);

    auto *est = app.add_subcommand("estimate", "Estimate the fidelity from experiment records");
    est->add_option("--records", o.records_path, "Records file")->required()->check(CLI::ExistingFile);
    est->add_option("--qubits", o.qubits, "Qubit count (defaults to the records file)");
    est->add_option("--level", o.level, "Credible level")->check(CLI::Range(0.0, 1.0));
    est->add_flag("--permissive-weights", o.permissive, "Impute weights that have no records");
    est->add_option("--posterior-out", o.posterior_out, "Write the posterior density grid here");
    est->add_option("--grid-points", o.grid_points, "Posterior grid resolution");
    est->add_option("--variance-override", o.variance_override,
                    "Variance for lambda_w means backed by a single record");

    auto *oracle = app.add_subcommand("oracle", "Exact average fidelity of a noisy circuit");
    oracle->add_option("circuit", o.circuit, "Circuit file or bundled circuit name")->required();
    oracle->add_option("--noise", o.noise_path, "Noise config (JSON)")->required()->check(CLI::ExistingFile);
    oracle->add_option("--max-dense-qubits", o.max_dense_qubits, "Dense simulation cap");

    auto *rb = app.add_subcommand("rb", "Single-qubit randomized benchmarking and decay fit");
    rb->add_option("--config", o.config_path, "RB config (JSON)")->check(CLI::ExistingFile);
    rb->add_option("--table", o.table_path, "Fit an existing (m, F) table instead")->check(CLI::ExistingFile);
    rb->add_option("--fix-b0", o.fix_b0, "Asymptote for the log-linear fit");
    rb->add_flag("--nonlinear", o.nonlinear, "Fit A0, p and B0 jointly");
    add_seed(rb);
    add_out(rb);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    // Only the subcommand goes into manifests, so a rerun that adds the printed seed
    // still reproduces the same bytes.
    std::string command = "twirlcert " + app.get_subcommands().front()->get_name();
    try {
        if (plan->parsed()) {
            return cmd_plan(o, command, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(o, command, out);
        }
        if (est->parsed()) {
            return cmd_estimate(o, out);
        }
        if (oracle->parsed()) {
            return cmd_oracle(o, out);
        }
        return cmd_rb(o, command, out);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapacityError &e) {
        err << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"twirlcert"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace twirlcert
