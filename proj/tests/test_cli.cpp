// Copyright 2026 The GPK Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gpk/boolfn.hpp"
#include "gpk/simon.hpp"
#include "gpk_cli.hpp"
#include "test_support.hpp"

using namespace gpk;
using gpk::cli::Json;
using gpk::testing::data_path;
namespace fs = std::filesystem;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;

    [[nodiscard]] Json json() const { return Json::parse(out); }
};

Invocation invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("gpk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    [[nodiscard]] std::string path(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

BooleanOracle load(const std::string &path) {
    std::ifstream in(path);
    return read_oracle(in);
}

} // namespace

TEST(Sha256, KnownDigests) {
    const auto dir = fs::temp_directory_path() / "gpk_sha";
    fs::create_directories(dir);
    const auto empty = (dir / "empty").string();
    std::ofstream(empty).close();
    EXPECT_EQ(cli::sha256_file(empty),
              "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const auto abc = (dir / "abc").string();
    std::ofstream(abc) << "abc";
    EXPECT_EQ(cli::sha256_file(abc),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    fs::remove_all(dir);
    EXPECT_THROW((void)cli::sha256_file(abc), cli::InputError);
}

TEST(RenderText, FlattensInDocumentOrder) {
    Json j;
    j["b"] = 1;
    j["a"] = {{"x", "0101"}, {"list", {"01", "10"}}};
    j["rows"] = Json::array({Json{{"z", "00"}}, Json{{"z", "11"}}});
    EXPECT_EQ(cli::render_text(j), "b: 1\na.x: 0101\na.list: 01 10\nrows[0].z: 00\nrows[1].z: 11\n");
}

TEST_F(CliTest, HiddenSidecarRoundTripAndErrors) {
    SubspaceBasis basis(4);
    basis.insert(BitVector::parse("1010"));
    basis.insert(BitVector::parse("0110"));
    std::ofstream(path("ok.hidden")) << cli::format_hidden(basis);
    EXPECT_EQ(cli::read_hidden(path("ok.hidden")), basis);

    std::ofstream(path("short.hidden")) << "4 2\n1010\n";
    EXPECT_THROW((void)cli::read_hidden(path("short.hidden")), cli::InputError);
    std::ofstream(path("dependent.hidden")) << "4 2\n1010\n1010\n";
    EXPECT_THROW((void)cli::read_hidden(path("dependent.hidden")), cli::InputError);
    EXPECT_THROW((void)cli::read_hidden(path("missing.hidden")), cli::InputError);
}

TEST_F(CliTest, GenFullyBalanced) {
    const auto r = invoke({"gen", "--kind", "fully_balanced", "--n", "4", "--m", "4", "--r", "2",
                           "--seed", "7", "--out", path("fb.oracle")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto f = load(path("fb.oracle"));
    EXPECT_TRUE(is_fully_balanced(f));
    EXPECT_EQ(image_analysis(f).dimension(), 2);
    const auto report = r.json();
    EXPECT_EQ(report["version"], "0.1.0");
    EXPECT_EQ(report["seed"], 7);
    EXPECT_EQ(report["output"]["sha256"], cli::sha256_file(path("fb.oracle")));
}

TEST_F(CliTest, GenConstantRepeatsOneLine) {
    const auto r = invoke({"gen", "--kind", "constant", "--n", "3", "--m", "5", "--seed", "2",
                           "--out", path("c.oracle")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto f = load(path("c.oracle"));
    EXPECT_EQ(image_analysis(f).points.size(), 1u);
    EXPECT_EQ(f.output_width(), 5);
}

TEST_F(CliTest, GenSimonWritesVerifiableSidecar) {
    const auto r = invoke({"gen", "--kind", "simon", "--n", "6", "--m", "6", "--k", "2", "--seed",
                           "1", "--out", path("s.oracle")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto hidden = cli::read_hidden(path("s.oracle.hidden"));
    EXPECT_EQ(hidden.dimension(), 2);
    EXPECT_TRUE(verify_hidden_subgroup(load(path("s.oracle")), hidden));
    EXPECT_EQ(r.json()["hidden"]["basis"].size(), 2u);
}

TEST_F(CliTest, GenAffineHasRequestedRank) {
    const auto r = invoke({"gen", "--kind", "affine", "--n", "5", "--m", "5", "--r", "3", "--seed",
                           "4", "--out", path("a.oracle")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto census = marker_census(load(path("a.oracle")));
    EXPECT_EQ(census.constant_count, 4u);
    EXPECT_EQ(census.balancing_index(), Rational(7));
}

TEST_F(CliTest, GenRejectsBadParameters) {
    EXPECT_EQ(invoke({"gen", "--kind", "affine", "--n", "3", "--m", "3", "--out", path("x")}).code, 4);
    EXPECT_EQ(invoke({"gen", "--kind", "fully_balanced", "--n", "2", "--m", "3", "--r", "3",
                      "--out", path("x")})
                  .code,
              4);
    EXPECT_EQ(invoke({"gen", "--kind", "simon", "--n", "4", "--m", "1", "--k", "1", "--out",
                      path("x")})
                  .code,
              4);
    EXPECT_EQ(invoke({"gen", "--kind", "cubic", "--n", "2", "--m", "2", "--out", path("x")}).code, 4);
    EXPECT_EQ(invoke({"gen", "--kind", "constant", "--n", "2", "--m", "2", "--out",
                      path("no/such/dir/x")})
                  .code,
              4);
}

TEST(Cli, HelpVersionAndUsageErrors) {
    const auto help = invoke({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("position 0 is the rightmost"), std::string::npos);
    const auto version = invoke({"--version"});
    EXPECT_EQ(version.code, 0);
    EXPECT_NE(version.out.find("0.1.0"), std::string::npos);
    EXPECT_EQ(invoke({}).code, 4);
    EXPECT_EQ(invoke({"frobnicate"}).code, 4);
    EXPECT_EQ(invoke({"verify"}).code, 4);
}

TEST(CliGpk, ConstantMarkerAlwaysYieldsZero) {
    for (const char *seed : {"0", "1", "2", "3"}) {
        const auto r = invoke({"gpk", "--oracle", data_path("rank2.oracle"), "--marker", "0010",
                               "--seed", seed});
        ASSERT_EQ(r.code, 0) << r.err;
        const auto j = r.json();
        EXPECT_EQ(j["sample"], "0000");
        EXPECT_EQ(j["sample_probability"], 1.0);
        EXPECT_EQ(j["distribution"].size(), 16u);
    }
}

TEST(CliGpk, BalancedMarkerNeverYieldsZero) {
    for (int seed = 0; seed < 20; ++seed) {
        const auto r = invoke({"gpk", "--oracle", data_path("rank2.oracle"), "--marker", "0001",
                               "--seed", std::to_string(seed)});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_NE(r.json()["sample"], "0000");
    }
}

TEST(CliGpk, BothBackendsAgree) {
    const auto r = invoke({"gpk", "--oracle", data_path("rank2.oracle"), "--marker", "0111",
                           "--backend", "both"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_LT(j["max_amplitude_discrepancy"].get<double>(), 1e-10);
    EXPECT_LT(j["statevector"]["separation_residual"].get<double>(), 1e-10);
    EXPECT_NEAR(j["total_probability"].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, GpkErrors) {
    EXPECT_EQ(invoke({"gpk", "--oracle", data_path("rank2.oracle"), "--marker", "001"}).code, 4);
    EXPECT_EQ(invoke({"gpk", "--oracle", data_path("rank2.oracle"), "--marker", "00x1"}).code, 4);
    EXPECT_EQ(invoke({"gpk", "--oracle", path("missing.oracle"), "--marker", "0001"}).code, 4);
    std::ofstream(path("bad.oracle")) << "2 2\n00\n01\n";
    EXPECT_EQ(invoke({"gpk", "--oracle", path("bad.oracle"), "--marker", "01"}).code, 4);

    ASSERT_EQ(invoke({"gen", "--kind", "constant", "--n", "12", "--m", "11", "--out",
                      path("big.oracle")})
                  .code,
              0);
    EXPECT_EQ(invoke({"gpk", "--oracle", path("big.oracle"), "--marker", "00000000001", "--backend",
                      "statevector"})
                  .code,
              3);
}

TEST(CliFbi, ExampleOracleAlgorithm3) {
    const auto r = invoke({"fbi", "--oracle", data_path("rank2.oracle"), "--algorithm", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["r"], 2);
    EXPECT_EQ(j["image"]["points"], Json::array({"0000", "0001", "1100", "1101"}));
    EXPECT_EQ(j["image"]["classical_queries"], 1);
    EXPECT_EQ(j["balancing_classes"].size(), 3u);
    EXPECT_TRUE(j["within_bound"].get<bool>());
    EXPECT_EQ(j["trace"].size(), j["gpk_calls"].get<std::size_t>());
}

TEST_F(CliTest, FbiConstantOracleAlgorithm1UsesMCalls) {
    ASSERT_EQ(invoke({"gen", "--kind", "constant", "--n", "3", "--m", "5", "--out",
                      path("c.oracle")})
                  .code,
              0);
    const auto r = invoke({"fbi", "--oracle", path("c.oracle"), "--algorithm", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["r"], 0);
    EXPECT_EQ(r.json()["gpk_calls"], 5);
    EXPECT_EQ(r.json()["image"]["points"].size(), 1u);
}

TEST(CliFbi, PromiseAndBudgetFailures) {
    const auto audited = invoke({"fbi", "--oracle", data_path("not_fully_balanced.oracle"),
                                 "--audit", "64", "--seed", "3"});
    EXPECT_EQ(audited.code, 2);
    EXPECT_NE(audited.err.find("promise violation"), std::string::npos);

    const auto clean = invoke({"fbi", "--oracle", data_path("rank2.oracle"), "--audit", "32"});
    EXPECT_EQ(clean.code, 0) << clean.err;
    EXPECT_EQ(clean.json()["audit"]["gpk_calls"], 32);

    EXPECT_EQ(invoke({"fbi", "--oracle", data_path("rank2.oracle"), "--max-calls", "2"}).code, 3);
    EXPECT_EQ(invoke({"fbi", "--oracle", data_path("rank2.oracle"), "--algorithm", "4"}).code, 4);
    EXPECT_EQ(invoke({"fbi", "--oracle", data_path("rank2.oracle"), "--algorithm", "1", "--r0",
                      "9"})
                  .code,
              4);
}

TEST_F(CliTest, SimonRecoversGeneratedInstance) {
    ASSERT_EQ(invoke({"gen", "--kind", "simon", "--n", "6", "--m", "6", "--k", "2", "--seed", "1",
                      "--out", path("s.oracle")})
                  .code,
              0);
    const auto r = invoke({"simon", "--oracle", path("s.oracle"), "--hidden",
                           path("s.oracle.hidden"), "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_TRUE(j["verified"].get<bool>());
    EXPECT_TRUE(j["matches_hidden"].get<bool>());
    EXPECT_EQ(j["recovered"], j["hidden"]["basis"]);
    EXPECT_LT(j["distribution_check"]["tv_distance"].get<double>(), 0.05);
}

TEST_F(CliTest, SimonConstantOracleAndFailures) {
    ASSERT_EQ(invoke({"gen", "--kind", "constant", "--n", "4", "--m", "2", "--out",
                      path("c.oracle")})
                  .code,
              0);
    const auto r = invoke({"simon", "--oracle", path("c.oracle"), "--draws", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["recovered_dimension"], 4);
    EXPECT_TRUE(r.json()["distribution_check"].is_null());

    // The rank-2 oracle is not a Simon instance: 16 inputs, 4 values of multiplicity 4,
    // but the preimages are not cosets of one subspace.
    const auto bad = invoke({"simon", "--oracle", data_path("rank2.oracle")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_FALSE(bad.json()["verified"].get<bool>());

    EXPECT_EQ(invoke({"simon", "--oracle", path("c.oracle"), "--draws", "10"}).code, 4);
    EXPECT_EQ(invoke({"simon", "--oracle", path("c.oracle"), "--mode", "fixed"}).code, 4);
}

TEST(CliVerify, ExampleOracleCensus) {
    const auto r = invoke({"verify", "--oracle", data_path("rank2.oracle")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_TRUE(j["fully_balanced"].get<bool>());
    EXPECT_EQ(j["image"]["dimension"], 2);
    EXPECT_EQ(j["constant_count"], 4);
    EXPECT_EQ(j["balancing_count"], 12);
    EXPECT_EQ(j["balancing_index"], "3");
    EXPECT_TRUE(j["neither_witness"].is_null());
}

TEST(CliVerify, FlagsNeitherWitness) {
    const auto j = invoke({"verify", "--oracle", data_path("not_fully_balanced.oracle")}).json();
    EXPECT_FALSE(j["fully_balanced"].get<bool>());
    EXPECT_EQ(j["neither_witness"], "01");
    EXPECT_FALSE(j["image"]["affine"].get<bool>());
}

TEST(CliBench, SuitesProduceRows) {
    const auto fbi = invoke({"bench", "--suite", "fbi_calls", "--trials", "2", "--max-width", "3"});
    ASSERT_EQ(fbi.code, 0) << fbi.err;
    EXPECT_TRUE(fbi.json()["all_within_bound"].get<bool>());

    const auto simon = invoke({"bench", "--suite", "simon_iters", "--trials", "3", "--max-width", "3"});
    ASSERT_EQ(simon.code, 0) << simon.err;
    EXPECT_EQ(simon.json()["rows"].size(), 3u);

    const auto fwht = invoke({"bench", "--suite", "fwht_scaling", "--trials", "1", "--max-qubits", "6"});
    ASSERT_EQ(fwht.code, 0) << fwht.err;
    for (const auto &row : fwht.json()["rows"]) {
        EXPECT_LT(row["max_amplitude_discrepancy"].get<double>(), 1e-10);
    }
}

TEST(CliDeterminism, SameSeedSameBytes) {
    const std::vector<std::vector<std::string>> commands = {
        {"gpk", "--oracle", data_path("rank2.oracle"), "--marker", "0101", "--seed", "9"},
        {"fbi", "--oracle", data_path("rank2.oracle"), "--seed", "9", "--format", "text"},
        {"simon", "--oracle", data_path("rank2.oracle"), "--seed", "9"},
        {"bench", "--suite", "simon_iters", "--trials", "2", "--max-width", "3", "--seed", "9"},
    };
    for (const auto &args : commands) {
        const auto a = invoke(args);
        const auto b = invoke(args);
        EXPECT_EQ(a.out, b.out);
        EXPECT_EQ(a.code, b.code);
    }
}

TEST(CliFormat, TextReport) {
    const auto r = invoke({"fbi", "--oracle", data_path("rank2.oracle"), "--format", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\nr: 2\n"), std::string::npos);
    EXPECT_NE(r.out.find("image.points: 0000 0001 1100 1101\n"), std::string::npos);
}
