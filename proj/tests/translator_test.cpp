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

#include "qtmb/errors.hpp"
#include "qtmb/io.hpp"
#include "qtmb/translator.hpp"

namespace qtmb {
namespace {

BooleanFunction fn(const std::string& t) { return BooleanFunction::parse(t); }

// Deutsch machine with the 1x -> 1x branches out of PHI_2 given the
// opposite sign.
Qtm flip_last_rule(const Qtm& m) {
  const Qtm e = expand_rules(m);
  std::vector<DeltaRule> rules;
  for (const auto& [key, rule] : e.rules()) {
    DeltaRule r = rule;
    if (key.second == "PHI_2" && key.first.bits().bit(0)) {
      for (auto& br : r.branches) {
        if (br.write.terms.front().bits.bit(0)) br.amplitude = -br.amplitude;
      }
    }
    rules.push_back(std::move(r));
  }
  return Qtm(e.states(), e.width(), e.start(), e.finals(), rules);
}

TEST(Translate, DeutschMatchesHandWrittenRules) {
  for (const auto& f : enumerate_promise_functions(1)) {
    const RuleComparison cmp = rules_equal(translate(build_deutsch(f)), build_deutsch_qtm(f));
    EXPECT_TRUE(cmp.equal) << f.to_string() << ": "
                           << (cmp.first_difference ? cmp.first_difference->detail : "");
  }
}

TEST(Translate, DjMatchesExpandedBuilder) {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (const auto& f : enumerate_promise_functions(m)) {
      EXPECT_TRUE(rules_equal(translate(build_dj(f)), expand_rules(build_dj_qtm(f))).equal)
          << f.to_string();
    }
  }
}

TEST(Translate, IdentityLayer) {
  const Qtm m = translate(Circuit(1, BasisString("0"), {GateRow{{Gate::I}}}));
  EXPECT_EQ(m.states(), (std::set<StateLabel>{"PHI_0", "PHI_1"}));
  EXPECT_EQ(m.finals(), (std::set<StateLabel>{"PHI_1"}));
  EXPECT_EQ(to_delta_text(m),
            "δ(□, PHI_0, 0, PHI_0, N) = 1\n"
            "δ(0, PHI_0, 0, PHI_1, N) = 1\n");
}

TEST(Translate, RejectsEmptyCircuit) {
  EXPECT_THROW(translate(Circuit(1, BasisString("0"), {})), StructureError);
}

TEST(Translate, BranchCountIsNonzeroEntryCount) {
  // A leading identity row makes the Hadamard row a later layer, so every
  // basis source gets rules.
  for (std::size_t n = 1; n <= 4; ++n) {
    const Circuit c(n, BasisString::zeros(n),
                    {GateRow{std::vector<Gate>(n, Gate::I)}, GateRow{std::vector<Gate>(n, Gate::H)}});
    const Qtm m = translate(c);
    std::size_t branches = 0;
    for (const auto& [key, rule] : m.rules()) {
      if (key.second == "PHI_1") branches += rule.branches.size();
    }
    EXPECT_EQ(branches, std::size_t{1} << (2 * n));
  }
}

TEST(Translate, XRowAndTranslatedMachinesNormalize) {
  const Circuit c(3, BasisString("010"),
                  {GateRow{{Gate::X, Gate::H, Gate::I}}, OracleLayer{fn("0110")},
                   GateRow{{Gate::H, Gate::X, Gate::H}}});
  EXPECT_TRUE(check_local_normalization(translate(c)).pass);
}

TEST(Translate, Deterministic) {
  const Circuit c = build_dj(fn("01101001"));
  EXPECT_EQ(qtm_to_json(translate(c)).dump(), qtm_to_json(translate(c)).dump());
}

TEST(RulesEqual, Reflexive) {
  const Qtm m = build_dj_qtm(fn("0110"));
  EXPECT_TRUE(rules_equal(m, m).equal);
}

TEST(RulesEqual, CompactGroupingEqualsExpanded) {
  const Qtm compact = build_deutsch_qtm(fn("01"), {HadamardStageForm::Compact});
  EXPECT_TRUE(rules_equal(build_deutsch_qtm(fn("01")), compact).equal);
}

TEST(RulesEqual, ReportsFlippedSign) {
  const Qtm m = build_deutsch_qtm(fn("01"));
  const RuleComparison cmp = rules_equal(m, flip_last_rule(m));
  EXPECT_FALSE(cmp.equal);
  ASSERT_TRUE(cmp.first_difference);
  EXPECT_EQ(cmp.first_difference->source, "(10, PHI_2)");
}

TEST(RulesEqual, WidthMismatchIsADifference) {
  const RuleComparison cmp = rules_equal(build_dj_qtm(fn("01")), build_dj_qtm(fn("0110")));
  EXPECT_FALSE(cmp.equal);
  ASSERT_TRUE(cmp.first_difference);
  EXPECT_TRUE(cmp.first_difference->source.empty());
}

TEST(Induction, BaseAndFirstStep) {
  const InductionReport r = verify_induction(3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.base_cases.size(), 4u);
  EXPECT_EQ(r.steps.size(), 8u);
}

TEST(Induction, UpToWidthFive) {
  const InductionReport r = verify_induction(5);
  EXPECT_TRUE(r.pass);
  // widths 3 and 4 exhaustive (8 + 72), width 5 sampled (32)
  EXPECT_EQ(r.steps.size(), 8u + 72u + 32u);
  for (const auto& c : r.steps) EXPECT_TRUE(c.comparison.equal) << c.function;
}

TEST(Induction, Bounds) {
  EXPECT_THROW(verify_induction(1), SizeError);
  EXPECT_THROW(verify_induction(7), SizeError);
}

TEST(DeltaText, DeutschListing) {
  const std::string text = to_delta_text(translate(build_deutsch(fn("01"))));
  EXPECT_EQ(text.substr(0, text.find('\n')), "δ(□, PHI_0, 01, PHI_0, N) = 1");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 17);
  EXPECT_NE(text.find("δ(01, PHI_0, 01, PHI_1, N) = -1/2"), std::string::npos);
  EXPECT_NE(text.find("δ(11, PHI_2, 11, PHI_3, N) = -1/√2"), std::string::npos);
}

TEST(DeltaText, CompactListing) {
  const std::string text =
      to_delta_text(build_deutsch_qtm(fn("00"), {HadamardStageForm::Compact}));
  EXPECT_NE(text.find("δ(01, PHI_0, 1/2|00⟩ - 1/2|01⟩ + 1/2|10⟩ - 1/2|11⟩, PHI_1, N) = 1"),
            std::string::npos)
      << text;
}

TEST(DeltaText, AmplitudeFormatting) {
  EXPECT_EQ(format_amplitude(1.0), "1");
  EXPECT_EQ(format_amplitude(-0.5), "-1/2");
  EXPECT_EQ(format_amplitude(1.0 / std::sqrt(2.0)), "1/√2");
  EXPECT_EQ(format_amplitude(-1.0 / std::sqrt(8.0)), "-1/√8");
  EXPECT_EQ(format_amplitude(0.3), "0.3");
  EXPECT_EQ(format_amplitude(Amplitude(0.0, 1.0)), "(0+1i)");
}

}  // namespace
}  // namespace qtmb
