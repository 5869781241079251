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

#include "qtmb/translator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "qtmb/errors.hpp"

namespace qtmb {

Qtm translate(const Circuit& c) {
  if (c.layers().empty()) throw StructureError("cannot translate a circuit with no layers");
  const std::size_t depth = c.layers().size();
  std::set<StateLabel> states;
  for (std::size_t k = 0; k <= depth; ++k) states.insert(stage_label(k));

  std::vector<DeltaRule> rules;
  rules.push_back({Symbol::blank(), stage_label(0),
                   {Branch{WriteTarget::ket(c.initial()), stage_label(0), Move::N, 1.0}}});

  for (std::size_t k = 1; k <= depth; ++k) {
    const UnitaryMatrix u = layer_unitary(c.layers()[k - 1], c.width());
    std::vector<std::size_t> sources;
    if (k == 1) {
      sources.push_back(c.initial().index());
    } else {
      for (std::size_t b = 0; b < u.dim(); ++b) sources.push_back(b);
    }
    for (std::size_t b : sources) {
      DeltaRule rule{Symbol(BasisString::from_index(b, c.width())), stage_label(k - 1), {}};
      for (std::size_t row = 0; row < u.dim(); ++row) {
        const Amplitude amp = u(row, b);
        if (std::abs(amp) < kPruneTolerance) continue;
        rule.branches.push_back(Branch{WriteTarget::ket(BasisString::from_index(row, c.width())),
                                       stage_label(k), Move::N, amp});
      }
      rules.push_back(std::move(rule));
    }
  }
  return Qtm(std::move(states), c.width(), stage_label(0), {stage_label(depth)}, rules);
}

namespace {

std::string source_str(const RuleKey& key) {
  return "(" + key.first.str() + ", " + key.second + ")";
}

std::string branch_str(const Branch& br) {
  return br.write.terms.front().bits.str() + " -> " + br.next + " " + to_string(br.move) +
         " amp " + format_amplitude(br.amplitude);
}

RuleComparison differ(std::string source, std::string detail) {
  return RuleComparison{false, RuleDifference{std::move(source), std::move(detail)}};
}

std::string join(const std::set<StateLabel>& s) {
  std::string out;
  for (const auto& q : s) out += (out.empty() ? "" : ",") + q;
  return "{" + out + "}";
}

}  // namespace

RuleComparison rules_equal(const Qtm& a_in, const Qtm& b_in, double tol) {
  if (a_in.width() != b_in.width()) {
    return differ("", "width " + std::to_string(a_in.width()) + " vs " +
                          std::to_string(b_in.width()));
  }
  if (a_in.states() != b_in.states()) {
    return differ("", "states " + join(a_in.states()) + " vs " + join(b_in.states()));
  }
  if (a_in.start() != b_in.start()) {
    return differ("", "start " + a_in.start() + " vs " + b_in.start());
  }
  if (a_in.finals() != b_in.finals()) {
    return differ("", "finals " + join(a_in.finals()) + " vs " + join(b_in.finals()));
  }
  const Qtm a = expand_rules(materialize(a_in));
  const Qtm b = expand_rules(materialize(b_in));
  auto ia = a.rules().begin();
  auto ib = b.rules().begin();
  while (ia != a.rules().end() || ib != b.rules().end()) {
    if (ib == b.rules().end() || (ia != a.rules().end() && ia->first < ib->first)) {
      return differ(source_str(ia->first), "rule only in the first machine");
    }
    if (ia == a.rules().end() || ib->first < ia->first) {
      return differ(source_str(ib->first), "rule only in the second machine");
    }
    const auto& ba = ia->second.branches;
    const auto& bb = ib->second.branches;
    if (ba.size() != bb.size()) {
      return differ(source_str(ia->first), std::to_string(ba.size()) + " vs " +
                                               std::to_string(bb.size()) + " branches");
    }
    for (std::size_t i = 0; i < ba.size(); ++i) {
      const bool same_target = ba[i].write.terms.front().bits == bb[i].write.terms.front().bits &&
                               ba[i].next == bb[i].next && ba[i].move == bb[i].move;
      if (!same_target || !approx_equal(ba[i].amplitude, bb[i].amplitude, tol)) {
        return differ(source_str(ia->first), branch_str(ba[i]) + " vs " + branch_str(bb[i]));
      }
    }
    ++ia;
    ++ib;
  }
  return RuleComparison{};
}

namespace {

std::vector<BooleanFunction> induction_functions(std::size_t arity, unsigned seed) {
  if (arity <= 3) return enumerate_promise_functions(arity);
  constexpr std::size_t kSamples = 32;
  const std::size_t size = std::size_t{1} << arity;
  std::vector<BooleanFunction> out{BooleanFunction::constant(arity, false),
                                   BooleanFunction::constant(arity, true)};
  std::set<std::vector<bool>> seen;
  std::mt19937 rng(seed + static_cast<unsigned>(arity));
  std::vector<bool> table(size, false);
  std::fill(table.begin() + static_cast<long>(size / 2), table.end(), true);
  while (out.size() < kSamples) {
    std::shuffle(table.begin(), table.end(), rng);
    if (seen.insert(table).second) out.emplace_back(arity, table);
  }
  return out;
}

}  // namespace

InductionReport verify_induction(std::size_t n_max, unsigned seed) {
  if (n_max < 2 || n_max > 6) {
    throw SizeError("induction bound must be between 2 and 6, got " + std::to_string(n_max));
  }
  InductionReport report;
  for (const auto& f : enumerate_promise_functions(1)) {
    InductionCase c{2, f.to_string(), rules_equal(build_dj_qtm(f), build_deutsch_qtm(f))};
    report.pass = report.pass && c.comparison.equal;
    report.base_cases.push_back(std::move(c));
  }
  for (std::size_t n = 2; n < n_max; ++n) {
    const auto previous = enumerate_promise_functions(n - 1);
    const auto functions = induction_functions(n, seed);
    for (std::size_t i = 0; i < functions.size(); ++i) {
      const auto& f = functions[i];
      const Qtm narrow = build_dj_qtm(previous[i % previous.size()]);
      InductionCase c{n + 1, f.to_string(),
                      rules_equal(extend_dj_qtm(narrow, f), translate(build_dj(f)))};
      report.pass = report.pass && c.comparison.equal;
      report.steps.push_back(std::move(c));
    }
  }
  return report;
}

std::string format_amplitude(Amplitude a) {
  auto decimal = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  if (std::abs(a.imag()) >= kPruneTolerance) {
    return "(" + decimal(a.real()) + (a.imag() < 0 ? "-" : "+") +
           decimal(std::abs(a.imag())) + "i)";
  }
  const double v = std::abs(a.real());
  const std::string sign = a.real() < 0 ? "-" : "";
  for (int k = 0; k <= 40; ++k) {
    if (std::abs(v - std::pow(2.0, -k / 2.0)) > kPruneTolerance) continue;
    if (k == 0) return sign + "1";
    if (k % 2 == 0) return sign + "1/" + std::to_string(1ULL << (k / 2));
    return sign + "1/√" + std::to_string(1ULL << k);
  }
  return decimal(a.real());
}

std::string to_delta_text(const Qtm& m) {
  const Qtm full = materialize(m);
  std::vector<const DeltaRule*> ordered;
  for (const auto& [key, rule] : full.rules()) ordered.push_back(&rule);
  // Stage order first (PHI_2 before PHI_10), then read symbol.
  std::stable_sort(ordered.begin(), ordered.end(), [](const DeltaRule* x, const DeltaRule* y) {
    if (x->state.size() != y->state.size()) return x->state.size() < y->state.size();
    if (x->state != y->state) return x->state < y->state;
    return x->read < y->read;
  });
  std::ostringstream out;
  for (const DeltaRule* rule : ordered) {
    for (const auto& br : rule->branches) {
      std::string write;
      if (br.write.is_expanded()) {
        write = br.write.terms.front().bits.str();
      } else {
        for (const auto& t : br.write.terms) {
          std::string w = format_amplitude(t.weight);
          const bool negative = w.front() == '-';
          if (negative) w.erase(0, 1);
          if (write.empty()) {
            write = negative ? "-" : "";
          } else {
            write += negative ? " - " : " + ";
          }
          write += w + "|" + t.bits.str() + "⟩";
        }
      }
      out << "δ(" << rule->read.str() << ", " << rule->state << ", " << write << ", "
          << br.next << ", " << to_string(br.move) << ") = " << format_amplitude(br.amplitude)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace qtmb
