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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "twirlcert/plan_io.h"

namespace twirlcert {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string source_path(const std::string &rel) { return std::string(TWIRLCERT_SOURCE_DIR) + "/" + rel; }

double report_value(const std::string &text, const std::string &label) {
    size_t pos = text.find(label);
    EXPECT_NE(pos, std::string::npos) << text;
    return std::stod(text.substr(pos + label.size()));
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("twirlcert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    std::string write(const std::string &name, const std::string &contents) const {
        write_text_file(path(name), contents);
        return path(name);
    }

    fs::path dir_;
};

TEST_F(CliTest, PlanWritesNinetyEntries) {
    auto r = run({"plan", "encoder_3q_phase", "--k", "30", "--seed", "11", "--out", path("p.plan")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("seed: 11"), std::string::npos);
    auto plan = read_plan(read_text_file(path("p.plan")));
    EXPECT_EQ(plan.entries.size(), 90u);
    EXPECT_EQ(plan.seed, 11u);
    EXPECT_NO_THROW(plan.check_invariants());
}

TEST_F(CliTest, PlanFromCircuitFileAndKwList) {
    auto r = run({"plan", source_path("circuits/encoder_513.circ"), "--kw", "1=3,5=2", "--seed", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto plan = read_plan(r.out.substr(r.out.find(kPlanHeader)));
    EXPECT_EQ(plan.entries.size(), 5u);
}

TEST_F(CliTest, PlanRequiresExactlyOneCountOption) {
    EXPECT_EQ(run({"plan", "encoder_3q_phase"}).code, kExitUsage);
    EXPECT_EQ(run({"plan", "encoder_3q_phase", "--k", "3", "--epsilon", "0.1"}).code, kExitUsage);
    EXPECT_EQ(run({"plan", "no_such_circuit", "--k", "3"}).code, kExitUsage);
    EXPECT_EQ(run({"plan", "encoder_3q_phase", "--kw", "1:3"}).code, kExitUsage);
    EXPECT_EQ(run({"bogus"}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, MalformedCircuitReportsLine) {
    auto c = write("bad.circ", "QUBITS 2\nH 0\nCNOT 0 7\n");
    auto r = run({"plan", c, "--k", "2"});
    EXPECT_EQ(r.code, kExitParse);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingNoiseFileIsUsageError) {
    ASSERT_EQ(run({"plan", "encoder_3q_phase", "--k", "2", "--out", path("p.plan")}).code, kExitOk);
    auto r = run({"simulate", "--plan", path("p.plan"), "--noise", path("missing.json")});
    EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(CliTest, MalformedNoiseIsParseError) {
    ASSERT_EQ(run({"plan", "encoder_3q_phase", "--k", "2", "--out", path("p.plan")}).code, kExitOk);
    auto noise = write("n.json", "{\n\"kind\": \"depolarizing\",\n\"p\": }\n");
    auto r = run({"simulate", "--plan", path("p.plan"), "--noise", noise});
    EXPECT_EQ(r.code, kExitParse);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, SimulateAboveCapIsCapacityError) {
    auto c = write("seven.circ", "QUBITS 7\nH 0\nCNOT 0 6\n");
    ASSERT_EQ(run({"plan", c, "--k", "1", "--out", path("p.plan")}).code, kExitOk);
    auto noise = write("n.json", R"({"kind": "noiseless"})");
    auto r = run({"simulate", "--plan", path("p.plan"), "--noise", noise});
    EXPECT_EQ(r.code, kExitCapacity);
    EXPECT_NE(r.err.find("7 qubits"), std::string::npos) << r.err;
    EXPECT_EQ(run({"oracle", c, "--noise", noise}).code, kExitCapacity);
}

TEST_F(CliTest, NoiselessExactRatiosAreOne) {
    ASSERT_EQ(run({"plan", "encoder_513", "--k", "4", "--seed", "3", "--out", path("p.plan")}).code, kExitOk);
    auto noise = write("n.json", R"({"kind": "noiseless"})");
    auto r = run({"simulate", "--plan", path("p.plan"), "--noise", noise, "--shots", "0", "--seed", "1", "--out",
                  path("r.txt")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto set = read_records(read_text_file(path("r.txt")));
    ASSERT_EQ(set.records.size(), 20u);
    for (const auto &rec : set.records) {
        EXPECT_NEAR(rec.ratio, 1.0, 1e-12);
    }
    auto e = run({"estimate", "--records", path("r.txt")});
    ASSERT_EQ(e.code, kExitOk) << e.err;
    EXPECT_NEAR(report_value(e.out, "F_avg"), 1.0, 1e-8);
}

TEST_F(CliTest, SeedReproducesByteIdenticalOutput) {
    auto noise = source_path("configs/noise_depolarizing.json");
    for (const char *tag : {"a", "b"}) {
        std::string plan = path(std::string(tag) + ".plan");
        ASSERT_EQ(run({"plan", "encoder_3q_phase", "--k", "5", "--seed", "99", "--no-timestamp", "--out", plan}).code,
                  kExitOk);
    }
    EXPECT_EQ(read_text_file(path("a.plan")), read_text_file(path("b.plan")));
    auto first = run({"simulate", "--plan", path("a.plan"), "--noise", noise, "--no-timestamp", "--out",
                      path("r1.txt")});
    ASSERT_EQ(first.code, kExitOk) << first.err;
    size_t pos = first.out.find("seed: ");
    ASSERT_NE(pos, std::string::npos);
    std::string seed = first.out.substr(pos + 6, first.out.find('\n', pos) - pos - 6);
    auto second = run({"simulate", "--plan", path("a.plan"), "--noise", noise, "--no-timestamp", "--seed", seed,
                       "--out", path("r2.txt")});
    ASSERT_EQ(second.code, kExitOk) << second.err;
    std::string a = read_text_file(path("r1.txt")), b = read_text_file(path("r2.txt"));
    EXPECT_EQ(a, b);
}

TEST_F(CliTest, InjectedPauliAppearsInPlan) {
    auto r = run({"plan", "encoder_513", "--kw", "3=4", "--inject-pauli", "IYIXZ", "--seed", "8", "--out",
                  path("p.plan")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto plan = read_plan(read_text_file(path("p.plan")));
    ASSERT_EQ(plan.entries.size(), 4u);
    EXPECT_EQ(plan.entries[0].m_k.str().substr(1), "IYIXZ");
    EXPECT_EQ(plan.entries[0].prep.to_compact(), "H 1;P 1;H 3");
    EXPECT_EQ(run({"plan", "encoder_513", "--kw", "2=4", "--inject-pauli", "IYIXZ"}).code, kExitFailure);
}

TEST_F(CliTest, OracleReportsUniformPauliFidelity) {
    auto noise = write("n.json", R"({"kind": "uniform_pauli", "q": 0.1})");
    auto r = run({"oracle", "encoder_3q_phase", "--noise", noise});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NEAR(report_value(r.out, "Pr(no error): "), 0.9, 1e-12);
    EXPECT_NEAR(report_value(r.out, "F_avg: "), (8 * 0.9 + 1) / 9, 1e-12);
}

// Shot-sampled pipeline agrees with the exact fidelity within three standard errors.
TEST_F(CliTest, PipelineMatchesOracle) {
    auto noise = source_path("configs/noise_depolarizing.json");
    ASSERT_EQ(run({"plan", "encoder_3q_phase", "--k", "30", "--seed", "5", "--out", path("p.plan")}).code, kExitOk);
    ASSERT_EQ(run({"simulate", "--plan", path("p.plan"), "--noise", noise, "--shots", "512", "--seed", "6", "--out",
                   path("r.txt")})
                  .code,
              kExitOk);
    auto e = run({"estimate", "--records", path("r.txt"), "--posterior-out", path("post.txt")});
    ASSERT_EQ(e.code, kExitOk) << e.err;
    auto o = run({"oracle", "encoder_3q_phase", "--noise", noise});
    ASSERT_EQ(o.code, kExitOk);
    double exact = report_value(o.out, "F_avg: ");
    double f = report_value(e.out, "F_avg");
    double se = std::stod(e.out.substr(e.out.find("+/-", e.out.find("F_avg")) + 3));
    EXPECT_LT(std::abs(f - exact), 3 * se) << e.out;
    EXPECT_TRUE(fs::exists(path("post.txt")));
}

TEST_F(CliTest, EstimateRejectsMissingWeightUnlessPermissive) {
    auto recs = write("r.txt",
                      "TWIRLCERT-RECORDS v1\nqubits 2\n"
                      "record\t-\t1\t+1\t-\t-\t-\t-\t-\t0.9\n"
                      "record\t-\t1\t+1\t-\t-\t-\t-\t-\t0.8\n");
    EXPECT_EQ(run({"estimate", "--records", recs}).code, kExitFailure);
    auto r = run({"estimate", "--records", recs, "--permissive-weights"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("imputed"), std::string::npos) << r.out;
    EXPECT_EQ(run({"estimate", "--records", recs, "--level", "1.5"}).code, kExitUsage);
}

TEST_F(CliTest, RbFromConfigAndTable) {
    auto cfg = write("rb.json", R"({"lengths": [1, 4, 8, 16], "sequences_per_length": 4,
                                    "noise": {"kind": "depolarizing", "p": 0.02}})");
    auto r = run({"rb", "--config", cfg, "--seed", "2", "--out", path("rb.txt")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("log-linear"), std::string::npos) << r.out;
    auto t = run({"rb", "--table", path("rb.txt"), "--nonlinear"});
    ASSERT_EQ(t.code, kExitOk) << t.err;
    EXPECT_NE(t.out.find("levenberg-marquardt"), std::string::npos) << t.out;
    auto bad = write("bad.txt", "1 0.9\n2 0.3\n3 0.8\n");
    auto b = run({"rb", "--table", bad});
    EXPECT_EQ(b.code, kExitFailure);
    EXPECT_NE(b.err.find("m = 2"), std::string::npos) << b.err;
    EXPECT_EQ(run({"rb"}).code, kExitUsage);
    EXPECT_EQ(run({"rb", "--table", bad, "--fix-b0", "0.5", "--nonlinear"}).code, kExitUsage);
}

}  // namespace
}  // namespace twirlcert
