// Copyright 2026 The qtmb Authors
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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qtmb/io.hpp"

namespace qtmb::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qtmb");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

TEST(Deutsch, Verdicts) {
  const Result balanced = invoke({"deutsch", "--f", "01"});
  EXPECT_EQ(balanced.code, kSuccess);
  EXPECT_TRUE(contains(balanced.out, "balanced, measured 1, models agree")) << balanced.out;
  const Result constant = invoke({"deutsch", "--f", "11"});
  EXPECT_EQ(constant.code, kSuccess);
  EXPECT_TRUE(contains(constant.out, "constant, measured 0, models agree"));
}

TEST(Deutsch, UsageErrors) {
  EXPECT_EQ(invoke({"deutsch", "--f", "013"}).code, kUsageError);
  EXPECT_EQ(invoke({"deutsch", "--f", "0110"}).code, kUsageError);
  EXPECT_EQ(invoke({"deutsch"}).code, kUsageError);
  EXPECT_EQ(invoke({"bogus"}).code, kUsageError);
  EXPECT_EQ(invoke({}).code, kUsageError);
  EXPECT_EQ(invoke({"--help"}).code, kSuccess);
}

TEST(Deutsch, TraceGoesToStdout) {
  const Result r = invoke({"deutsch", "--f", "10", "--trace"});
  EXPECT_EQ(r.code, kSuccess);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.size(), 5u);
  EXPECT_TRUE(contains(r.err, "balanced, measured 1, models agree"));
}

TEST(Dj, Verdicts) {
  const Result b = invoke({"dj", "--f", "0011"});
  EXPECT_EQ(b.code, kSuccess);
  EXPECT_TRUE(contains(b.out, "balanced, top register 10")) << b.out;
  const Result c = invoke({"dj", "--f", "1111"});
  EXPECT_TRUE(contains(c.out, "constant, top register 00"));
  const Result n = invoke({"dj", "--f", "0001"});
  EXPECT_EQ(n.code, kSuccess);
  EXPECT_TRUE(contains(n.out, "promise violated: neither"));
  EXPECT_TRUE(contains(n.out, "P(00) = 0.25"));
}

TEST(Dj, RandomIsSeeded) {
  const Result a = invoke({"dj", "--random", "3", "--kind", "balanced", "--seed", "5"});
  const Result b = invoke({"dj", "--random", "3", "--kind", "balanced", "--seed", "5"});
  EXPECT_EQ(a.code, kSuccess);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(contains(a.out, "balanced, top register"));
  const Result c = invoke({"dj", "--random", "2", "--kind", "constant"});
  EXPECT_TRUE(contains(c.out, "constant, top register 00"));
  EXPECT_EQ(invoke({"dj", "--random", "2", "--kind", "neither"}).code, kUsageError);
  EXPECT_EQ(invoke({"dj", "--f", "0110", "--random", "2"}).code, kUsageError);
}

TEST(Translate, DeltaTextFirstLine) {
  const Result r = invoke({"translate", "--deutsch", "01", "--emit", "paper-text"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "δ(□, PHI_0, 01, PHI_0, N) = 1");
}

TEST(Translate, JsonRoundTripsAndMatchesHandWritten) {
  const Result r = invoke({"translate", "--dj", "0011", "--emit", "json"});
  EXPECT_EQ(r.code, kSuccess);
  const Qtm m = qtm_from_json(nlohmann::json::parse(r.out));
  EXPECT_TRUE(rules_equal(m, build_dj_qtm(BooleanFunction::parse("0011"))).equal);

  const Result d = invoke({"translate", "--deutsch", "10", "--emit", "json"});
  const Qtm dm = qtm_from_json(nlohmann::json::parse(d.out));
  EXPECT_EQ(dm.branch_count(),
            expand_rules(build_deutsch_qtm(BooleanFunction::parse("10"))).branch_count());
}

TEST(Translate, CircuitFileAndOutput) {
  const std::string circuit =
      temp_file("qtmb_cli_circuit.json",
                circuit_to_json(build_dj(BooleanFunction::parse("0110"))).dump());
  const std::string out = ::testing::TempDir() + "qtmb_cli_rules.json";
  EXPECT_EQ(invoke({"translate", circuit, "--out", out}).code, kSuccess);
  const Qtm m = qtm_from_json(parse_json_file(out));
  EXPECT_EQ(m.width(), 3u);
  EXPECT_EQ(invoke({"translate", "/nonexistent.json"}).code, kUsageError);
  EXPECT_EQ(invoke({"translate", "--dj", "0110", "--emit", "yaml"}).code, kUsageError);
  std::remove(circuit.c_str());
  std::remove(out.c_str());
}

TEST(Translate, CompactText) {
  const Result r = invoke({"translate", "--deutsch", "00", "--emit", "paper-compact"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "|00⟩")) << r.out;
}

TEST(Verify, Suites) {
  const Result d = invoke({"verify", "--suite", "deutsch"});
  EXPECT_EQ(d.code, kSuccess);
  EXPECT_TRUE(contains(d.out, "4/4 pass"));
  const Result j = invoke({"verify", "--suite", "dj", "--max-arity", "2"});
  EXPECT_EQ(j.code, kSuccess);
  EXPECT_TRUE(contains(j.out, "8/8 pass"));
  EXPECT_EQ(invoke({"verify", "--suite", "dj", "--max-arity", "4"}).code, kUsageError);
}

TEST(Verify, Induction) {
  const Result r = invoke({"verify", "--induction", "3"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "4/4 equal"));
  EXPECT_TRUE(contains(r.out, "induction: pass"));
  EXPECT_EQ(invoke({"verify", "--induction", "7"}).code, kUsageError);
  const Result j = invoke({"verify", "--induction", "3", "--json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["pass"], true);
}

TEST(Enumerate, ListsPromiseFunctions) {
  const Result r = invoke({"enumerate", "--arity", "2"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 8);
  EXPECT_TRUE(contains(r.out, "0011 balanced"));
  EXPECT_EQ(invoke({"enumerate", "--arity", "5"}).code, kUsageError);
}

TEST(Check, PassAndFail) {
  const Circuit c = build_deutsch(BooleanFunction::parse("01"));
  const std::string circuit = temp_file("qtmb_cli_check.json", circuit_to_json(c).dump());
  EXPECT_EQ(invoke({"check", "--circuit", circuit}).code, kSuccess);

  // Rules for a different function: agree until the oracle layer.
  const std::string rules = temp_file(
      "qtmb_cli_check_rules.json",
      qtm_to_json(build_deutsch_qtm(BooleanFunction::parse("00"))).dump());
  const Result bad = invoke({"check", "--circuit", circuit, "--rules", rules});
  EXPECT_EQ(bad.code, kVerificationFailure);
  EXPECT_EQ(nlohmann::json::parse(bad.out)["first_failure"]["layer"], 2);

  // A machine missing its oracle stage gets stuck.
  nlohmann::json stuck = qtm_to_json(build_deutsch_qtm(BooleanFunction::parse("01")));
  nlohmann::json kept = nlohmann::json::array();
  for (const auto& r : stuck["rules"]) {
    if (r["state"] != "PHI_1") kept.push_back(r);
  }
  stuck["rules"] = kept;
  const std::string stuck_path = temp_file("qtmb_cli_stuck.json", stuck.dump());
  EXPECT_EQ(invoke({"check", "--circuit", circuit, "--rules", stuck_path}).code,
            kVerificationFailure);
  for (const auto& p : {circuit, rules, stuck_path}) std::remove(p.c_str());
}

TEST(Tolerance, Environment) {
  ::unsetenv("QTMB_TOLERANCE");
  EXPECT_EQ(comparison_tolerance(), 1e-9);
  ::setenv("QTMB_TOLERANCE", "1e-6", 1);
  EXPECT_EQ(comparison_tolerance(), 1e-6);
  EXPECT_EQ(invoke({"deutsch", "--f", "01"}).code, kSuccess);
  ::setenv("QTMB_TOLERANCE", "abc", 1);
  EXPECT_EQ(invoke({"deutsch", "--f", "01"}).code, kUsageError);
  ::setenv("QTMB_TOLERANCE", "-1", 1);
  EXPECT_EQ(invoke({"deutsch", "--f", "01"}).code, kUsageError);
  ::unsetenv("QTMB_TOLERANCE");
}

}  // namespace
}  // namespace qtmb::cli
