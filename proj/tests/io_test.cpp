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
#include <fstream>

#include "qtmb/errors.hpp"
#include "qtmb/io.hpp"

namespace qtmb {
namespace {

using nlohmann::json;

BooleanFunction fn(const std::string& t) { return BooleanFunction::parse(t); }

TEST(CircuitJson, RoundTrip) {
  const Circuit c = build_dj(fn("0110"));
  const json j = circuit_to_json(c);
  EXPECT_EQ(j["width"], 3);
  EXPECT_EQ(j["initial"], "001");
  EXPECT_EQ(j["layers"][1]["oracle"], "0110");
  EXPECT_EQ(j["layers"][0]["row"], json({"H", "H", "H"}));
  EXPECT_EQ(circuit_from_json(j), c);
}

TEST(CircuitJson, Malformed) {
  EXPECT_THROW(circuit_from_json(json::parse(R"({"width": 2})")), ParseError);
  EXPECT_THROW(circuit_from_json(json::parse(R"({"width": 2, "initial": "01", "layers": [{"row": ["H", "Q"]}]})")),
               ParseError);
  EXPECT_THROW(circuit_from_json(json::parse(R"({"width": 2, "initial": "01", "layers": [{"gate": 1}]})")),
               ParseError);
  EXPECT_THROW(circuit_from_json(json::parse(R"([1, 2])")), ParseError);
  // Shape errors come from the circuit itself.
  EXPECT_THROW(circuit_from_json(json::parse(R"({"width": 3, "initial": "01", "layers": []})")),
               DimensionError);
}

TEST(QtmJson, RoundTripIsBitExact) {
  for (const Qtm& m : {build_deutsch_qtm(fn("01"), {HadamardStageForm::Compact}),
                       build_dj_qtm(fn("01101001")), translate(build_dj(fn("0011")))}) {
    const json j = qtm_to_json(m);
    const Qtm back = qtm_from_json(j);
    EXPECT_EQ(qtm_to_json(back).dump(), j.dump());
    EXPECT_TRUE(rules_equal(back, m, 0.0).equal);
  }
}

TEST(QtmJson, BlankSpelling) {
  json j = qtm_to_json(build_deutsch_qtm(fn("00")));
  EXPECT_EQ(j["rules"][0]["read"], "□");
  j["rules"][0]["read"] = "_";
  EXPECT_TRUE(rules_equal(qtm_from_json(j), build_deutsch_qtm(fn("00"))).equal);
}

TEST(QtmJson, Malformed) {
  json j = qtm_to_json(build_deutsch_qtm(fn("00")));
  j["rules"][1]["branches"][0]["move"] = "UP";
  EXPECT_THROW(qtm_from_json(j), ParseError);
  json k = qtm_to_json(build_deutsch_qtm(fn("00")));
  k.erase("start");
  EXPECT_THROW(qtm_from_json(k), ParseError);
  json s = qtm_to_json(build_deutsch_qtm(fn("00")));
  s["start"] = "NOWHERE";
  EXPECT_THROW(qtm_from_json(s), StructureError);
}

TEST(TraceJson, OrderedAndComplete) {
  const RunResult r = run(build_deutsch_qtm(fn("01")));
  const json t = trace_to_json(r.trace);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0].size(), 1u);
  EXPECT_EQ(t[0][0]["state"], "PHI_0");
  EXPECT_TRUE(t[0][0]["tape"].empty());
  ASSERT_EQ(t[2].size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(t[2][i]["tape"][0]["bits"], BasisString::from_index(i, 2).str());
  }
  EXPECT_EQ(t[2][1]["amp_re"], -0.5);
  EXPECT_EQ(trace_to_json(r.trace).dump(), t.dump());
}

TEST(ReportJson, Keys) {
  const json ok = report_to_json(lockstep_check(build_deutsch(fn("01")), build_deutsch_qtm(fn("01"))));
  EXPECT_EQ(ok["pass"], true);
  EXPECT_TRUE(ok["first_failure"].is_null());
  EXPECT_TRUE(ok.contains("max_deviation"));

  LockstepReport bad;
  bad.pass = false;
  bad.first_failure = LockstepFailure{3, "10", Amplitude(0.5, 0), Amplitude(-0.5, 0)};
  const json j = report_to_json(bad);
  EXPECT_EQ(j["first_failure"]["layer"], 3);
  EXPECT_EQ(j["first_failure"]["basis"], "10");
  EXPECT_EQ(j["first_failure"]["circuit_amp"]["re"], 0.5);
  EXPECT_EQ(j["first_failure"]["qtm_amp"]["re"], -0.5);
}

TEST(Files, MissingAndInvalid) {
  EXPECT_THROW(parse_json_file("/nonexistent/circuit.json"), ParseError);
  const std::string path = ::testing::TempDir() + "qtmb_io_invalid.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(parse_json_file(path), ParseError);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace qtmb
