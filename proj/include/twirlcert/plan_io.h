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

// Text file formats: plans, records, noise and RB configs, reports.
//
// Plans and records are line-oriented with a versioned first line. Lines starting
// with '#' are comments; the run manifest is written as a comment block. Noise and
// RB configs are JSON. Every reader reports failures as ParseError with a line number.

#ifndef TWIRLCERT_PLAN_IO_H
#define TWIRLCERT_PLAN_IO_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twirlcert/certify.h"
#include "twirlcert/rb.h"
#include "twirlcert/simulator.h"

namespace twirlcert {

inline constexpr std::string_view kPlanHeader = "TWIRLCERT-PLAN v1";
inline constexpr std::string_view kRecordsHeader = "TWIRLCERT-RECORDS v1";
inline constexpr std::string_view kRBTableHeader = "TWIRLCERT-RB v1";
inline constexpr std::string_view kVersion = "twirlcert 1.0.0";

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<uint64_t> seed;
    std::string version = std::string(kVersion);
    /// Empty means no timestamp line, which keeps reruns byte-identical.
    std::string timestamp;

    /// "# key: value" lines, timestamp last.
    std::string render() const;
};

/// ISO-8601 UTC time of the call.
std::string current_timestamp();

std::string write_plan(const ExperimentPlan &plan, const RunManifest *manifest = nullptr);

/// Parses and then checks every plan invariant; inconsistent files are rejected.
ExperimentPlan read_plan(std::string_view text);

std::string write_records(std::span<const ExperimentRecord> records, size_t num_qubits,
                          const RunManifest *manifest = nullptr);

struct RecordSet {
    size_t num_qubits = 0;
    std::vector<ExperimentRecord> records;
};

/// Each record line needs w and r_k plus either the counts or t_k; '-' marks a
/// missing field.
RecordSet read_records(std::string_view text);

/// JSON noise config. "kind" is one of noiseless, pauli, depolarizing,
/// uniform_pauli, kraus; "order" is "before" (default) or "after". "qubits" may be
/// omitted when `default_qubits` is given or can be read off Pauli keys.
NoiseModel parse_noise_config(std::string_view json, std::optional<size_t> default_qubits = std::nullopt);

struct RBRunConfig {
    RBConfig config;
    /// Asymptote for the log-linear fit; nullopt selects the three-parameter fit.
    std::optional<double> fix_b0 = 0.5;
};

/// JSON RB config: "lengths" (list or {start, stop, step}), "sequences_per_length",
/// "shots", "noise" (a one-qubit noise config) and "fix_b0" (number or null).
RBRunConfig parse_rb_config(std::string_view json);

/// Whitespace-separated "m F" lines, optional header and comments.
std::vector<RBPoint> read_rb_table(std::string_view text);
std::string write_rb_table(std::span<const RBPoint> points, const RunManifest *manifest = nullptr);

/// Human-readable tables.
std::string render_plan_summary(const ExperimentPlan &plan);
std::string render_estimate_report(const FidelityEstimate &estimate);
std::string render_rb_report(const RBDecayFit &fit);

/// "value density" lines for plotting.
std::string write_posterior_grid(const Posterior &posterior);

/// Whole-file helpers; throw std::runtime_error naming the path on failure.
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, std::string_view contents);

}  // namespace twirlcert

#endif
