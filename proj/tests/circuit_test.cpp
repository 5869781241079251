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

#include <cmath>

#include "oracles.hpp"
#include "qtmb/circuit.hpp"
#include "qtmb/errors.hpp"

namespace qtmb {
namespace {

BooleanFunction fn(const std::string& t) { return BooleanFunction::parse(t); }

// Dense vector indexed by basis index.
std::vector<Amplitude> dense(const StateVector& s) {
  std::vector<Amplitude> out(std::size_t{1} << s.width());
  for (const auto& [b, a] : s.amplitudes()) out[b.index()] = a;
  return out;
}

double dense_deviation(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

TEST(Builders, Deutsch) {
  const Circuit c = build_deutsch(fn("01"));
  EXPECT_EQ(c.width(), 2u);
  EXPECT_EQ(c.initial().str(), "01");
  ASSERT_EQ(c.layers().size(), 3u);
  EXPECT_EQ(std::get<GateRow>(c.layers()[0]).gates, (std::vector<Gate>{Gate::H, Gate::H}));
  EXPECT_EQ(std::get<OracleLayer>(c.layers()[1]).f, fn("01"));
  EXPECT_EQ(std::get<GateRow>(c.layers()[2]).gates, (std::vector<Gate>{Gate::H, Gate::I}));
  EXPECT_THROW(build_deutsch(fn("0110")), ArityError);
}

TEST(Builders, DjMatchesDeutschAtArityOne) {
  for (const auto& f : enumerate_promise_functions(1)) {
    EXPECT_EQ(build_dj(f), build_deutsch(f));
  }
}

TEST(Builders, DjShape) {
  const Circuit c = build_dj(fn("0110"));
  EXPECT_EQ(c.width(), 3u);
  EXPECT_EQ(c.initial().str(), "001");
  for (std::size_t m = 1; m <= 4; ++m) {
    EXPECT_EQ(build_dj(BooleanFunction::constant(m, false)).layers().size(), 3u);
  }
}

TEST(Builders, RejectsMisfits) {
  EXPECT_THROW(Circuit(2, BasisString("011"), {}), DimensionError);
  EXPECT_THROW(Circuit(2, BasisString("01"), {GateRow{{Gate::H}}}), DimensionError);
  EXPECT_THROW(Circuit(2, BasisString("01"), {OracleLayer{fn("0110")}}), DimensionError);
  EXPECT_THROW(parse_gate("Z"), ParseError);
}

TEST(Simulate, DeutschPhiOne) {
  for (const auto& f : enumerate_promise_functions(1)) {
    const auto states = simulate(build_deutsch(f));
    ASSERT_EQ(states.size(), 4u);
    const std::vector<Amplitude> expected{0.5, -0.5, 0.5, -0.5};
    EXPECT_LE(dense_deviation(dense(states[1]), expected), 1e-15);
  }
}

TEST(Simulate, DeutschPhiTwoClosedForm) {
  for (const auto& f : enumerate_promise_functions(1)) {
    const auto states = simulate(build_deutsch(f));
    const double s0 = f(0) ? -1.0 : 1.0;
    const double s1 = f(1) ? -1.0 : 1.0;
    const std::vector<Amplitude> expected{s0 / 2, -s0 / 2, s1 / 2, -s1 / 2};
    EXPECT_LE(dense_deviation(dense(states[2]), expected), 1e-12) << f.to_string();
  }
}

TEST(Simulate, DeutschConstantZeroFinal) {
  const auto states = simulate(build_deutsch(fn("00")));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LE(dense_deviation(dense(states[3]), {r, -r, 0.0, 0.0}), 1e-12);
}

TEST(Simulate, MatchesIndependentClosedForms) {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : enumerate_promise_functions(m)) {
      const auto states = simulate(build_dj(f));
      const auto table = testing::table_of(f.to_string());
      EXPECT_LE(dense_deviation(dense(states[2]), testing::dj_after_oracle(table)), 1e-12);
      EXPECT_LE(dense_deviation(dense(states[3]), testing::dj_final_state(table)), 1e-12);
    }
  }
}

TEST(Simulate, EveryStageHasUnitNorm) {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : enumerate_promise_functions(m)) {
      for (const auto& s : simulate(build_dj(f))) EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
    }
  }
}

TEST(Measure, DeutschVerdicts) {
  for (const auto& f : enumerate_promise_functions(1)) {
    const auto d = measure_prefix(simulate(build_deutsch(f)).back(), 1);
    const std::string expected = classify(f) == Classification::Constant ? "0" : "1";
    EXPECT_NEAR(d.at(BasisString(expected)), 1.0, 1e-9);
  }
}

TEST(Measure, DjFirstInputBit) {
  const auto d = measure_prefix(simulate(build_dj(fn("0011"))).back(), 2);
  EXPECT_NEAR(d.at(BasisString("10")), 1.0, 1e-9);
}

TEST(Measure, RangeChecked) {
  const StateVector s = StateVector::basis(BasisString("01"));
  EXPECT_THROW(measure_prefix(s, 0), RangeError);
  EXPECT_THROW(measure_prefix(s, 3), RangeError);
  double total = 0.0;
  for (const auto& [b, p] : measure_prefix(s, 2)) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Properties, PromiseTheorem) {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : enumerate_promise_functions(m)) {
      const auto d = measure_prefix(simulate(build_dj(f)).back(), m);
      const auto it = d.find(BasisString::zeros(m));
      const double p0 = it == d.end() ? 0.0 : it->second;
      if (classify(f) == Classification::Constant) {
        EXPECT_NEAR(p0, 1.0, 1e-9) << f.to_string();
      } else {
        EXPECT_NEAR(p0, 0.0, 1e-9) << f.to_string();
      }
    }
  }
}

TEST(Properties, CaseSplitOfPhiTwo) {
  // ±(|0> + |1>)(|0> - |1>)/2 for constant f, ±(|0> - |1>)(|0> - |1>)/2 for
  // balanced f, with the overall sign (-1)^f(0).
  for (const auto& f : enumerate_promise_functions(1)) {
    const auto phi2 = dense(simulate(build_deutsch(f))[2]);
    const double sign = f(0) ? -1.0 : 1.0;
    const double top = classify(f) == Classification::Constant ? 1.0 : -1.0;
    const std::vector<Amplitude> expected{sign / 2, -sign / 2, sign * top / 2, -sign * top / 2};
    EXPECT_LE(dense_deviation(phi2, expected), 1e-12) << f.to_string();
  }
}

TEST(Properties, ExactlyOneOracleLayer) {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : enumerate_promise_functions(m)) {
      const Circuit c = build_dj(f);
      SimulationStats stats;
      simulate(c, &stats);
      EXPECT_EQ(c.oracle_layer_count(), 1u);
      EXPECT_EQ(stats.oracle_layers, 1u);
      ASSERT_EQ(stats.oracle_queries.size(), 1u);
      EXPECT_LE(stats.oracle_queries.front(), std::size_t{1} << c.width());
    }
  }
}

TEST(NaiveCircuit, BottomWireIsACoinFlip) {
  for (const auto& f : enumerate_promise_functions(1)) {
    const StateVector last = simulate(build_naive(f)).back();
    // Each branch x carries f(x) on the bottom wire with probability 1/2.
    for (std::size_t x = 0; x < 2; ++x) {
      const BasisString b(std::string{char('0' + x), char('0' + (f(x) ? 1 : 0))});
      EXPECT_NEAR(std::norm(last.amplitude(b)), 0.5, 1e-12);
    }
  }
  EXPECT_THROW(build_naive(fn("0110")), ArityError);
}

}  // namespace
}  // namespace qtmb
