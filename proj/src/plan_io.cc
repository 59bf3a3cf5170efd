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

#include "twirlcert/plan_io.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace twirlcert {

namespace {

using Json = nlohmann::json;

struct Line {
    size_t number;
    std::string_view text;
};

/// Non-blank, non-comment lines with their 1-based numbers.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    size_t number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        number++;
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        size_t first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos && line[first] != '#') {
            out.push_back(Line{number, line});
        }
        pos = end + 1;
    }
    return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    size_t pos = 0;
    while (true) {
        size_t end = text.find(sep, pos);
        out.push_back(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
        if (end == std::string_view::npos) {
            return out;
        }
        pos = end + 1;
    }
}

std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> out;
    size_t pos = 0;
    while (true) {
        size_t start = text.find_first_not_of(" \t", pos);
        if (start == std::string_view::npos) {
            return out;
        }
        size_t end = text.find_first_of(" \t", start);
        out.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            return out;
        }
        pos = end;
    }
}

uint64_t parse_uint(std::string_view token, const char *what) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

double parse_double(std::string_view token, const char *what) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty() || !std::isfinite(value)) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

int parse_sign(std::string_view token) {
    if (token == "+1" || token == "1" || token == "+") {
        return 1;
    }
    if (token == "-1" || token == "-") {
        return -1;
    }
    throw std::invalid_argument("bad sign '" + std::string(token) + "' (expected +1 or -1)");
}

std::string sign_str(int s) { return s > 0 ? "+1" : "-1"; }

/// Runs `body` and rethrows anything but ParseError as a ParseError at `line`.
template <typename F>
auto at_line(size_t line, F &&body) -> decltype(body()) {
    try {
        return body();
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        throw ParseError(line, e.what());
    }
}

void expect_header(const std::vector<Line> &lines, std::string_view header, const char *what) {
    if (lines.empty() || lines[0].text != header) {
        throw ParseError(lines.empty() ? 1 : lines[0].number,
                         std::string("not a ") + what + " file (expected first line '" + std::string(header) + "')");
    }
}

/// Splits "key value" and checks the key.
std::string_view keyed_value(const Line &line, std::string_view key) {
    auto tokens = split_ws(line.text);
    if (tokens.size() != 2 || tokens[0] != key) {
        throw ParseError(line.number, "expected '" + std::string(key) + " <value>'");
    }
    return tokens[1];
}

size_t json_line_of(std::string_view text, size_t byte) {
    size_t line = 1;
    for (size_t i = 0; i < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
        }
    }
    return line;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        throw ParseError(json_line_of(text, e.byte), std::string("invalid JSON: ") + e.what());
    }
}

/// Config errors are semantic, not positional; they are reported against line 1.
[[noreturn]] void config_error(const std::string &message) { throw ParseError(1, message); }

std::complex<double> json_complex(const Json &v) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    config_error("Kraus entries must be numbers or [re, im] pairs");
}

NoiseModel noise_from_json(const Json &cfg, std::optional<size_t> default_qubits) {
    if (!cfg.is_object()) {
        config_error("noise config must be a JSON object");
    }
    std::string kind = cfg.value("kind", "");
    std::optional<size_t> qubits = default_qubits;
    if (cfg.contains("qubits")) {
        if (!cfg["qubits"].is_number_unsigned() || cfg["qubits"].get<size_t>() == 0) {
            config_error("'qubits' must be a positive integer");
        }
        qubits = cfg["qubits"].get<size_t>();
    }
    NoiseOrder order = NoiseOrder::BeforeGate;
    if (cfg.contains("order")) {
        std::string o = cfg["order"].is_string() ? cfg["order"].get<std::string>() : "";
        if (o == "after") {
            order = NoiseOrder::AfterGate;
        } else if (o != "before") {
            config_error("'order' must be \"before\" or \"after\"");
        }
    }
    auto need_qubits = [&]() {
        if (!qubits) {
            config_error("noise config of kind '" + kind + "' needs 'qubits'");
        }
        return *qubits;
    };
    auto number = [&](const char *key) {
        if (!cfg.contains(key) || !cfg[key].is_number()) {
            config_error("noise config of kind '" + kind + "' needs numeric '" + key + "'");
        }
        return cfg[key].get<double>();
    };

    try {
        if (kind == "noiseless") {
            return NoiseModel::noiseless(need_qubits()).with_order(order);
        }
        if (kind == "depolarizing") {
            return NoiseModel::depolarizing(need_qubits(), number("p")).with_order(order);
        }
        if (kind == "uniform_pauli") {
            return NoiseModel::uniform_pauli(need_qubits(), number("q")).with_order(order);
        }
        if (kind == "pauli") {
            if (!cfg.contains("probabilities") || !cfg["probabilities"].is_object() || cfg["probabilities"].empty()) {
                config_error("pauli noise needs a non-empty 'probabilities' object");
            }
            std::vector<std::pair<SignedPauli, double>> probs;
            double total = 0;
            bool has_identity = false;
            for (const auto &[key, value] : cfg["probabilities"].items()) {
                if (!value.is_number()) {
                    config_error("probability for '" + key + "' is not a number");
                }
                SignedPauli p = SignedPauli::from_str(key);
                if (!qubits) {
                    qubits = p.num_qubits();
                }
                has_identity = has_identity || p.weight() == 0;
                total += value.get<double>();
                probs.emplace_back(std::move(p), value.get<double>());
            }
            if (!has_identity) {
                // The identity takes whatever probability is left.
                probs.emplace_back(SignedPauli(*qubits), 1.0 - total);
            }
            return NoiseModel::pauli_channel(*qubits, std::move(probs)).with_order(order);
        }
        if (kind == "kraus") {
            if (!cfg.contains("operators") || !cfg["operators"].is_array() || cfg["operators"].empty()) {
                config_error("kraus noise needs a non-empty 'operators' array");
            }
            std::vector<Matrix> ops;
            for (const Json &op : cfg["operators"]) {
                if (!op.is_array() || op.empty()) {
                    config_error("each Kraus operator must be a list of rows");
                }
                size_t d = op.size();
                Matrix m(d, d);
                for (size_t i = 0; i < d; i++) {
                    if (!op[i].is_array() || op[i].size() != d) {
                        config_error("Kraus operator rows must form a square matrix");
                    }
                    for (size_t j = 0; j < d; j++) {
                        m(i, j) = json_complex(op[i][j]);
                    }
                }
                ops.push_back(std::move(m));
            }
            NoiseModel model = NoiseModel::kraus_channel(std::move(ops)).with_order(order);
            if (qubits && model.num_qubits() != *qubits) {
                config_error("Kraus operators act on " + std::to_string(model.num_qubits()) + " qubits, expected " +
                             std::to_string(*qubits));
            }
            return model;
        }
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        config_error(e.what());
    }
    config_error("unknown noise kind '" + kind + "' (expected noiseless, pauli, depolarizing, uniform_pauli, kraus)");
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string RunManifest::render() const {
    std::string out;
    out += "# command: " + command + "\n";
    for (const auto &in : inputs) {
        out += "# input: " + in + "\n";
    }
    if (seed) {
        out += "# seed: " + std::to_string(*seed) + "\n";
    }
    out += "# version: " + version + "\n";
    if (!timestamp.empty()) {
        out += "# timestamp: " + timestamp + "\n";
    }
    return out;
}

std::string current_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string write_plan(const ExperimentPlan &plan, const RunManifest *manifest) {
    std::ostringstream os;
    os << kPlanHeader << "\n";
    if (manifest) {
        os << manifest->render();
    }
    os << "qubits " << plan.num_qubits << "\n";
    os << "seed " << plan.seed << "\n";
    os << "kw";
    for (const auto &[w, k] : plan.k_w) {
        os << " " << w << "=" << k;
    }
    os << "\n";
    for (size_t q = 0; q < plan.num_qubits; q++) {
        os << "ximage " << q << " " << plan.target.x_image(q).str() << "\n";
        os << "zimage " << q << " " << plan.target.z_image(q).str() << "\n";
    }
    os << "entries " << plan.entries.size() << "\n";
    os << "# w\tm_k\tprep\tr_k\tobservable\tmeas\tsupport\tmeas_sign\n";
    for (const auto &e : plan.entries) {
        std::string support;
        for (size_t i = 0; i < e.support.size(); i++) {
            support += (i ? "," : "") + std::to_string(e.support[i]);
        }
        os << "entry\t" << e.w << "\t" << e.m_k.str() << "\t" << e.prep.to_compact() << "\t" << sign_str(e.r_k)
           << "\t" << e.observable.str() << "\t" << e.meas.to_compact() << "\t" << (support.empty() ? "-" : support)
           << "\t" << sign_str(e.meas_sign) << "\n";
    }
    return os.str();
}

ExperimentPlan read_plan(std::string_view text) {
    auto lines = content_lines(text);
    expect_header(lines, kPlanHeader, "plan");
    size_t i = 1;
    auto next = [&](const char *what) -> const Line & {
        if (i >= lines.size()) {
            throw ParseError(lines.back().number, std::string("plan ends before ") + what);
        }
        return lines[i++];
    };

    ExperimentPlan plan;
    {
        const Line &l = next("'qubits'");
        plan.num_qubits = at_line(l.number, [&] { return parse_uint(keyed_value(l, "qubits"), "qubit count"); });
        if (plan.num_qubits == 0) {
            throw ParseError(l.number, "qubit count must be positive");
        }
    }
    {
        const Line &l = next("'seed'");
        plan.seed = at_line(l.number, [&] { return parse_uint(keyed_value(l, "seed"), "seed"); });
    }
    {
        const Line &l = next("'kw'");
        auto tokens = split_ws(l.text);
        if (tokens.empty() || tokens[0] != "kw") {
            throw ParseError(l.number, "expected 'kw w=count ...'");
        }
        at_line(l.number, [&] {
            for (size_t t = 1; t < tokens.size(); t++) {
                auto parts = split(tokens[t], '=');
                if (parts.size() != 2) {
                    throw std::invalid_argument("bad k_w item '" + std::string(tokens[t]) + "'");
                }
                plan.k_w[parse_uint(parts[0], "weight")] = parse_uint(parts[1], "count");
            }
        });
    }
    std::vector<SignedPauli> xs, zs;
    for (size_t q = 0; q < plan.num_qubits; q++) {
        for (const char *key : {"ximage", "zimage"}) {
            const Line &l = next("the target tableau");
            at_line(l.number, [&] {
                auto tokens = split_ws(l.text);
                if (tokens.size() != 3 || tokens[0] != key || parse_uint(tokens[1], "qubit") != q) {
                    throw std::invalid_argument(std::string("expected '") + key + " " + std::to_string(q) +
                                                " <pauli>'");
                }
                SignedPauli p = SignedPauli::from_str(tokens[2]);
                if (p.num_qubits() != plan.num_qubits) {
                    throw std::invalid_argument("tableau image has the wrong width");
                }
                (key[0] == 'x' ? xs : zs).push_back(std::move(p));
            });
        }
    }
    {
        const Line &l = lines[i - 1];
        plan.target = at_line(l.number, [&] { return CliffordTableau::from_images(xs, zs); });
    }
    size_t count = 0;
    {
        const Line &l = next("'entries'");
        count = at_line(l.number, [&] { return parse_uint(keyed_value(l, "entries"), "entry count"); });
    }
    for (size_t k = 0; k < count; k++) {
        const Line &l = next("all entries are listed");
        plan.entries.push_back(at_line(l.number, [&] {
            auto f = split(l.text, '\t');
            if (f.size() != 9 || f[0] != "entry") {
                throw std::invalid_argument("entry line needs 9 tab-separated fields");
            }
            PlanEntry e;
            e.w = parse_uint(f[1], "weight");
            e.m_k = SignedPauli::from_str(f[2]);
            e.prep = Circuit::from_compact(plan.num_qubits, f[3]);
            e.r_k = parse_sign(f[4]);
            e.observable = SignedPauli::from_str(f[5]);
            e.meas = Circuit::from_compact(plan.num_qubits, f[6]);
            if (f[7] != "-") {
                for (auto s : split(f[7], ',')) {
                    e.support.push_back(parse_uint(s, "support qubit"));
                }
            }
            e.meas_sign = parse_sign(f[8]);
            return e;
        }));
        try {
            // Validate each entry against the target as soon as it is read.
            ExperimentPlan single;
            single.num_qubits = plan.num_qubits;
            single.target = plan.target;
            single.entries = {plan.entries.back()};
            single.k_w = {{plan.entries.back().w, 1}};
            single.check_invariants();
        } catch (const std::exception &e) {
            throw ParseError(l.number, e.what());
        }
    }
    if (i != lines.size()) {
        throw ParseError(lines[i].number, "unexpected content after the last entry");
    }
    try {
        plan.check_invariants();
    } catch (const std::exception &e) {
        throw ParseError(lines.back().number, e.what());
    }
    return plan;
}

std::string write_records(std::span<const ExperimentRecord> records, size_t num_qubits, const RunManifest *manifest) {
    std::ostringstream os;
    os << kRecordsHeader << "\n";
    if (manifest) {
        os << manifest->render();
    }
    os << "qubits " << num_qubits << "\n";
    os << "# index\tw\tr_k\tm_k\tobservable\tshots\tplus\tminus\tt_k\n";
    for (const auto &r : records) {
        auto pauli_or_dash = [](const SignedPauli &p) { return p.num_qubits() == 0 ? std::string("-") : p.str(); };
        os << "record\t" << r.entry_index << "\t" << r.w << "\t" << sign_str(r.r_k) << "\t" << pauli_or_dash(r.m_k)
           << "\t" << pauli_or_dash(r.observable) << "\t";
        if (r.shots > 0) {
            os << r.shots << "\t" << r.plus_count << "\t" << r.minus_count;
        } else {
            os << "-\t-\t-";
        }
        os << "\t" << format_double(r.t_k) << "\n";
    }
    return os.str();
}

RecordSet read_records(std::string_view text) {
    auto lines = content_lines(text);
    expect_header(lines, kRecordsHeader, "records");
    if (lines.size() < 2) {
        throw ParseError(lines[0].number, "records file ends before 'qubits'");
    }
    RecordSet set;
    set.num_qubits = at_line(lines[1].number, [&] { return parse_uint(keyed_value(lines[1], "qubits"), "qubit count"); });
    if (set.num_qubits == 0) {
        throw ParseError(lines[1].number, "qubit count must be positive");
    }
    for (size_t i = 2; i < lines.size(); i++) {
        const Line &l = lines[i];
        set.records.push_back(at_line(l.number, [&] {
            auto f = split(l.text, '\t');
            if (f.size() != 10 || f[0] != "record") {
                throw std::invalid_argument("record line needs 10 tab-separated fields");
            }
            size_t index = f[1] == "-" ? set.records.size() : parse_uint(f[1], "index");
            size_t w = parse_uint(f[2], "weight");
            int r = parse_sign(f[3]);
            bool has_counts = f[6] != "-" || f[7] != "-" || f[8] != "-";
            ExperimentRecord rec;
            if (has_counts) {
                uint64_t shots = parse_uint(f[6], "shot count");
                uint64_t plus = parse_uint(f[7], "plus count");
                uint64_t minus = parse_uint(f[8], "minus count");
                if (plus + minus != shots) {
                    throw std::invalid_argument("plus + minus = " + std::to_string(plus + minus) + " but shots = " +
                                                std::to_string(shots));
                }
                rec = record_from_counts(w, r, plus, minus);
                if (f[9] != "-" && std::abs(parse_double(f[9], "t_k") - rec.t_k) > 1e-12) {
                    throw std::invalid_argument("t_k disagrees with the counts");
                }
            } else {
                if (f[9] == "-") {
                    throw std::invalid_argument("record needs either counts or t_k");
                }
                rec = record_from_value(w, r, parse_double(f[9], "t_k"));
            }
            rec.entry_index = index;
            if (f[4] != "-") {
                rec.m_k = SignedPauli::from_str(f[4]);
            }
            if (f[5] != "-") {
                rec.observable = SignedPauli::from_str(f[5]);
            }
            return rec;
        }));
    }
    return set;
}

NoiseModel parse_noise_config(std::string_view json, std::optional<size_t> default_qubits) {
    return noise_from_json(parse_json(json), default_qubits);
}

RBRunConfig parse_rb_config(std::string_view json) {
    Json cfg = parse_json(json);
    if (!cfg.is_object()) {
        config_error("RB config must be a JSON object");
    }
    RBRunConfig run;
    if (!cfg.contains("lengths")) {
        config_error("RB config needs 'lengths'");
    }
    const Json &lengths = cfg["lengths"];
    if (lengths.is_array()) {
        for (const Json &m : lengths) {
            if (!m.is_number_unsigned()) {
                config_error("RB lengths must be positive integers");
            }
            run.config.lengths.push_back(m.get<size_t>());
        }
    } else if (lengths.is_object()) {
        for (const char *key : {"start", "stop", "step"}) {
            if (!lengths.contains(key) || !lengths[key].is_number_unsigned()) {
                config_error(std::string("RB length range needs integer '") + key + "'");
            }
        }
        size_t start = lengths["start"], stop = lengths["stop"], step = lengths["step"];
        if (step == 0) {
            config_error("RB length step must be positive");
        }
        for (size_t m = start; m <= stop; m += step) {
            run.config.lengths.push_back(m);
        }
    } else {
        config_error("'lengths' must be a list or a {start, stop, step} object");
    }
    if (cfg.contains("sequences_per_length")) {
        if (!cfg["sequences_per_length"].is_number_unsigned()) {
            config_error("'sequences_per_length' must be a positive integer");
        }
        run.config.sequences_per_length = cfg["sequences_per_length"];
    }
    if (cfg.contains("shots")) {
        if (!cfg["shots"].is_number_unsigned()) {
            config_error("'shots' must be a non-negative integer");
        }
        run.config.shots = cfg["shots"];
    }
    if (cfg.contains("noise")) {
        run.config.noise_per_gate = noise_from_json(cfg["noise"], 1);
    }
    if (cfg.contains("fix_b0")) {
        if (cfg["fix_b0"].is_null()) {
            run.fix_b0.reset();
        } else if (cfg["fix_b0"].is_number()) {
            run.fix_b0 = cfg["fix_b0"].get<double>();
        } else {
            config_error("'fix_b0' must be a number or null");
        }
    }
    try {
        run.config.validate();
    } catch (const std::exception &e) {
        config_error(e.what());
    }
    return run;
}

std::vector<RBPoint> read_rb_table(std::string_view text) {
    std::vector<RBPoint> out;
    for (const Line &l : content_lines(text)) {
        if (l.text == kRBTableHeader) {
            continue;
        }
        out.push_back(at_line(l.number, [&] {
            auto tokens = split_ws(l.text);
            if (tokens.size() != 2) {
                throw std::invalid_argument("expected 'm F'");
            }
            return RBPoint{parse_uint(tokens[0], "sequence length"), parse_double(tokens[1], "fidelity")};
        }));
    }
    if (out.empty()) {
        throw ParseError(1, "RB table has no data lines");
    }
    return out;
}

std::string write_rb_table(std::span<const RBPoint> points, const RunManifest *manifest) {
    std::string out = std::string(kRBTableHeader) + "\n";
    if (manifest) {
        out += manifest->render();
    }
    out += "# m\tF\n";
    for (const auto &pt : points) {
        out += std::to_string(pt.m) + "\t" + format_double(pt.fidelity) + "\n";
    }
    return out;
}

std::string render_plan_summary(const ExperimentPlan &plan) {
    std::ostringstream os;
    os << "plan: " << plan.num_qubits << " qubits, " << plan.entries.size() << " experiments, seed " << plan.seed
       << "\n";
    os << "  w     k_w\n";
    char buf[64];
    for (const auto &[w, k] : plan.k_w) {
        std::snprintf(buf, sizeof(buf), "  %-4zu %5zu\n", w, k);
        os << buf;
    }
    return os.str();
}

std::string render_estimate_report(const FidelityEstimate &est) {
    std::ostringstream os;
    char buf[160];
    os << "certification estimate, " << est.num_qubits << " qubits\n";
    os << "  w     k_w   lambda_w      std_error\n";
    for (const auto &s : est.lambda) {
        if (s.w == 0) {
            std::snprintf(buf, sizeof(buf), "  %-4zu %5s   %-12.8f  %-12s\n", s.w, "-", s.mean, "0 (fixed)");
        } else if (s.imputed) {
            std::snprintf(buf, sizeof(buf), "  %-4zu %5zu   %-12.8f  %-12.8f  (imputed, no records)\n", s.w, s.count,
                          s.mean, s.std_error);
        } else if (std::isnan(s.std_error)) {
            std::snprintf(buf, sizeof(buf), "  %-4zu %5zu   %-12.8f  %-12s\n", s.w, s.count, s.mean, "n/a");
        } else {
            std::snprintf(buf, sizeof(buf), "  %-4zu %5zu   %-12.8f  %-12.8f\n", s.w, s.count, s.mean, s.std_error);
        }
        os << buf;
    }
    std::snprintf(buf, sizeof(buf), "Pr(no error)  %.8f +/- %.8f\n", est.pr_no_error, est.pr_no_error_std_error);
    os << buf;
    std::snprintf(buf, sizeof(buf), "F_avg         %.8f +/- %.8f\n", est.f_bar, est.f_bar_std_error);
    os << buf;
    std::snprintf(buf, sizeof(buf), "credible interval (%g%%) for Pr(no error): [%.8f, %.8f]\n",
                  est.posterior.level * 100, est.posterior.lo, est.posterior.hi);
    os << buf;
    if (est.has_imputed_weights) {
        os << "WARNING: some weights had no records; their lambda values are prior guesses\n";
    }
    return os.str();
}

std::string render_rb_report(const RBDecayFit &fit) {
    std::ostringstream os;
    char buf[160];
    os << "decay fit (" << fit.method << ")\n";
    std::snprintf(buf, sizeof(buf), "A0  %.8g +/- %.3g\n", fit.a0, fit.a0_std_error);
    os << buf;
    std::snprintf(buf, sizeof(buf), "p   %.10g +/- %.3g\n", fit.p, fit.p_std_error);
    os << buf;
    if (fit.b0_fixed) {
        std::snprintf(buf, sizeof(buf), "B0  %.8g (fixed)\n", fit.b0);
    } else {
        std::snprintf(buf, sizeof(buf), "B0  %.8g +/- %.3g\n", fit.b0, fit.b0_std_error);
    }
    os << buf;
    std::snprintf(buf, sizeof(buf), "r   %.6g +/- %.3g\n", fit.r, fit.r_std_error);
    os << buf;
    return os.str();
}

std::string write_posterior_grid(const Posterior &posterior) {
    std::string out = "# value\tdensity\n";
    for (size_t i = 0; i < posterior.values.size(); i++) {
        out += format_double(posterior.values[i]) + "\t" + format_double(posterior.density[i]) + "\n";
    }
    return out;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace twirlcert
