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

#include <gtest/gtest.h>

namespace twirlcert {
namespace {

ExperimentPlan small_plan() {
    return build_plan(CliffordTableau::from_circuit(bundled_circuit("encoder_3q_phase")), uniform_weight_counts(3, 4),
                      77);
}

std::string replace_line(const std::string &text, size_t index, const std::string &line) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    lines.at(index) = line;
    std::string out;
    for (const auto &l : lines) {
        out += l + "\n";
    }
    return out;
}

TEST(FormatDoubleTest, RoundTrips) {
    for (double v : {0.1, 1.0 / 3, -0.5, 1e-300, 0.9999999999999999}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(PlanFileTest, RoundTrips) {
    auto plan = small_plan();
    RunManifest m;
    m.command = "twirlcert plan";
    m.inputs = {"encoder_3q_phase"};
    m.seed = 77;
    std::string text = write_plan(plan, &m);
    EXPECT_EQ(text.rfind(std::string(kPlanHeader), 0), 0u);
    EXPECT_NE(text.find("# seed: 77"), std::string::npos);
    EXPECT_EQ(text.find("timestamp"), std::string::npos);
    EXPECT_EQ(read_plan(text), plan);
    EXPECT_EQ(write_plan(read_plan(text)), write_plan(plan));
}

TEST(PlanFileTest, FiveQubitExhaustiveRoundTrip) {
    auto plan = build_exhaustive_plan(CliffordTableau::from_circuit(bundled_circuit("encoder_513")), 3);
    EXPECT_EQ(read_plan(write_plan(plan)), plan);
}

TEST(PlanFileTest, RejectsWrongHeader) {
    try {
        read_plan("TWIRLCERT-PLAN v9\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 1u);
    }
}

TEST(PlanFileTest, TamperedEntryReportsItsLine) {
    auto plan = small_plan();
    std::string text = write_plan(plan);
    // Header, qubits, seed, kw, 6 image lines, entries, column comment, then entries.
    size_t first_entry = 12;
    auto e = plan.entries[1];
    std::string bad = "entry\t" + std::to_string(e.w) + "\t" + e.m_k.str() + "\t" + e.prep.to_compact() + "\t" +
                      (e.r_k > 0 ? "+1" : "-1") + "\t" + (-e.observable).str() + "\t" + e.meas.to_compact() + "\t" +
                      "0" + "\t" + "+1";
    try {
        read_plan(replace_line(text, first_entry + 1, bad));
        FAIL() << "expected ParseError";
    } catch (const ParseError &err) {
        EXPECT_EQ(err.line(), first_entry + 2);
    }
}

TEST(PlanFileTest, TruncatedPlanFails) {
    std::string text = write_plan(small_plan());
    text = text.substr(0, text.rfind("entry\t"));
    EXPECT_THROW(read_plan(text), ParseError);
}

TEST(RecordsFileTest, RoundTripsCountsAndValues) {
    std::vector<ExperimentRecord> recs = {record_from_counts(1, -1, 300, 212), record_from_value(2, 1, 1.0 / 3)};
    recs[0].m_k = SignedPauli::from_str("-XII");
    recs[0].observable = SignedPauli::from_str("-ZII");
    recs[1].entry_index = 1;
    std::string text = write_records(recs, 3);
    auto set = read_records(text);
    EXPECT_EQ(set.num_qubits, 3u);
    ASSERT_EQ(set.records.size(), 2u);
    EXPECT_EQ(set.records[0].plus_count, 300u);
    EXPECT_EQ(set.records[0].ratio, recs[0].ratio);
    EXPECT_EQ(set.records[0].m_k, recs[0].m_k);
    EXPECT_EQ(set.records[1].t_k, 1.0 / 3);
    EXPECT_EQ(set.records[1].shots, 0u);
    EXPECT_EQ(set.records[1].m_k.num_qubits(), 0u);
}

TEST(RecordsFileTest, IngestsLabData) {
    std::string text =
        "TWIRLCERT-RECORDS v1\n"
        "# hand-entered\n"
        "qubits 2\n"
        "record\t-\t1\t+1\t-\t-\t100\t90\t10\t-\n"
        "record\t-\t2\t-1\t-\t-\t-\t-\t-\t-0.75\n";
    auto set = read_records(text);
    ASSERT_EQ(set.records.size(), 2u);
    EXPECT_DOUBLE_EQ(set.records[0].ratio, 0.8);
    EXPECT_DOUBLE_EQ(set.records[1].ratio, 0.75);
    EXPECT_EQ(set.records[1].entry_index, 1u);
}

TEST(RecordsFileTest, InconsistentCountsReportLine) {
    std::string text =
        "TWIRLCERT-RECORDS v1\n"
        "qubits 2\n"
        "record\t0\t1\t+1\t-\t-\t100\t90\t11\t-\n";
    try {
        read_records(text);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(read_records("TWIRLCERT-RECORDS v1\nqubits 2\nrecord\t0\t1\t+1\t-\t-\t-\t-\t-\t-\n"), ParseError);
    EXPECT_THROW(read_records("TWIRLCERT-RECORDS v1\nqubits 2\nrecord\t0\t1\t+1\t-\t-\t-\t-\t-\t1.5\n"), ParseError);
    EXPECT_THROW(read_records("TWIRLCERT-RECORDS v1\nqubits 2\nrecord\t0\t1\t+1\t-\t-\t10\t9\t1\t0.5\n"),
                 ParseError);
}

TEST(NoiseConfigTest, AllKinds) {
    auto pauli = parse_noise_config(R"({"kind": "pauli", "probabilities": {"IXI": 0.02, "ZZZ": 0.01}})");
    EXPECT_EQ(pauli.num_qubits(), 3u);
    EXPECT_NEAR(pauli.entanglement_fidelity(), 0.97, 1e-15);
    auto dep = parse_noise_config(R"({"kind": "depolarizing", "p": 0.1, "order": "after"})", 2);
    EXPECT_EQ(dep.kind(), NoiseModel::Kind::Depolarizing);
    EXPECT_EQ(dep.order(), NoiseOrder::AfterGate);
    EXPECT_EQ(dep.num_qubits(), 2u);
    auto uni = parse_noise_config(R"({"kind": "uniform_pauli", "qubits": 1, "q": 0.3})");
    EXPECT_NEAR(uni.entanglement_fidelity(), 0.7, 1e-15);
    auto none = parse_noise_config(R"({"kind": "noiseless", "qubits": 2})");
    EXPECT_EQ(none.entanglement_fidelity(), 1.0);
    auto kraus = parse_noise_config(
        R"({"kind": "kraus", "operators": [[[1, 0], [0, 0.8]], [[0, 0.6], [0, 0]]]})");
    EXPECT_EQ(kraus.num_qubits(), 1u);
    auto cplx = parse_noise_config(
        R"({"kind": "kraus", "operators": [[[[0, 1], 0], [0, [0, 1]]]]})");
    EXPECT_NEAR(cplx.entanglement_fidelity(), 1.0, 1e-15);
}

TEST(NoiseConfigTest, ErrorsAreParseErrors) {
    EXPECT_THROW(parse_noise_config("{\"kind\": \n\"pauli\",,}"), ParseError);
    try {
        parse_noise_config("{\n\"kind\": \"pauli\",\n\"probabilities\": {\"XX\": 0.1,}\n}");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse_noise_config(R"({"kind": "bogus", "qubits": 1})"), ParseError);
    EXPECT_THROW(parse_noise_config(R"({"kind": "depolarizing", "p": 0.1})"), ParseError);
    EXPECT_THROW(parse_noise_config(R"({"kind": "depolarizing", "qubits": 1, "p": 2})"), ParseError);
    EXPECT_THROW(parse_noise_config(R"({"kind": "pauli", "probabilities": {"XQ": 0.1}})"), ParseError);
    EXPECT_THROW(parse_noise_config(R"({"kind": "pauli", "probabilities": {"II": 0.5, "XX": 0.1}})"), ParseError);
    EXPECT_THROW(parse_noise_config(R"({"kind": "kraus", "operators": [[[1, 0], [0, 0.5]]]})"), ParseError);
    EXPECT_THROW(parse_noise_config(R"({"kind": "noiseless", "qubits": 2, "order": "sideways"})"), ParseError);
}

TEST(RBConfigFileTest, ParsesRangesAndNoise) {
    auto run = parse_rb_config(R"({
        "lengths": {"start": 2, "stop": 10, "step": 4},
        "sequences_per_length": 6,
        "shots": 1000,
        "noise": {"kind": "depolarizing", "p": 0.01},
        "fix_b0": null
    })");
    EXPECT_EQ(run.config.lengths, (std::vector<size_t>{2, 6, 10}));
    EXPECT_EQ(run.config.sequences_per_length, 6u);
    EXPECT_EQ(run.config.shots, 1000u);
    EXPECT_FALSE(run.fix_b0.has_value());
    EXPECT_EQ(run.config.noise_per_gate.depolarizing_strength(), 0.01);
    auto dflt = parse_rb_config(R"({"lengths": [1, 2, 3]})");
    EXPECT_EQ(dflt.fix_b0, 0.5);
    EXPECT_EQ(dflt.config.sequences_per_length, 24u);
    EXPECT_THROW(parse_rb_config(R"({"lengths": [3, 2]})"), ParseError);
    EXPECT_THROW(parse_rb_config(R"({"shots": 3})"), ParseError);
    EXPECT_THROW(parse_rb_config(R"({"lengths": [1, 2], "noise": {"kind": "depolarizing", "qubits": 2, "p": 0.1}})"),
                 ParseError);
}

TEST(RBTableTest, RoundTripAndErrors) {
    std::vector<RBPoint> pts = {{2, 0.99}, {4, 0.98125}};
    auto back = read_rb_table(write_rb_table(pts));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].m, 4u);
    EXPECT_EQ(back[1].fidelity, 0.98125);
    EXPECT_EQ(read_rb_table("# lab data\n1 0.99\n 2\t0.98\n").size(), 2u);
    try {
        read_rb_table("1 0.99\n2 oops\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(read_rb_table("# nothing\n"), ParseError);
}

TEST(ReportTest, EstimateReportListsEveryWeight) {
    std::vector<ExperimentRecord> recs;
    for (size_t w = 1; w <= 3; w++) {
        recs.push_back(record_from_value(w, 1, 0.9));
        recs.push_back(record_from_value(w, 1, 0.8));
    }
    auto text = render_estimate_report(estimate(recs, 3));
    EXPECT_NE(text.find("Pr(no error)"), std::string::npos);
    EXPECT_NE(text.find("F_avg"), std::string::npos);
    EXPECT_NE(text.find("credible interval (95%)"), std::string::npos);
    EXPECT_NE(text.find("  3 "), std::string::npos);
    auto grid = write_posterior_grid(estimate(recs, 3).posterior);
    EXPECT_EQ(std::count(grid.begin(), grid.end(), '\n'), 2001);
}

TEST(ManifestTest, TimestampIsOptional) {
    RunManifest m;
    m.command = "twirlcert simulate";
    m.inputs = {"a.plan", "noise.json"};
    m.seed = 5;
    EXPECT_EQ(m.render(),
              "# command: twirlcert simulate\n# input: a.plan\n# input: noise.json\n# seed: 5\n# version: " +
                  std::string(kVersion) + "\n");
    m.timestamp = current_timestamp();
    EXPECT_NE(m.render().find("# timestamp: "), std::string::npos);
}

}  // namespace
}  // namespace twirlcert
