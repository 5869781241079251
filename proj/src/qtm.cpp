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

#include "qtmb/qtm.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "qtmb/errors.hpp"

namespace qtmb {

std::string to_string(Move m) {
  switch (m) {
    case Move::L:
      return "L";
    case Move::N:
      return "N";
    case Move::R:
      return "R";
  }
  return "?";
}

Move parse_move(std::string_view s) {
  if (s == "L") return Move::L;
  if (s == "N") return Move::N;
  if (s == "R") return Move::R;
  throw ParseError("unknown head move '" + std::string(s) + "' (expected L, N or R)");
}

long head_offset(Move m) {
  switch (m) {
    case Move::L:
      return -1;
    case Move::R:
      return 1;
    case Move::N:
      break;
  }
  return 0;
}

StateLabel stage_label(std::size_t k) { return "PHI_" + std::to_string(k); }

const BasisString& Symbol::bits() const {
  if (!bits_) throw MeasureError("blank symbol has no bits");
  return *bits_;
}

std::string Symbol::str() const { return bits_ ? bits_->str() : "□"; }

WriteTarget WriteTarget::ket(const BasisString& bits) {
  return WriteTarget{{WriteTerm{bits, Amplitude{1.0}}}};
}

WriteTarget WriteTarget::ket_sum(
    const std::vector<std::pair<std::string, Amplitude>>& terms) {
  WriteTarget out;
  for (const auto& [bits, weight] : terms) {
    out.terms.push_back(WriteTerm{BasisString(bits), weight});
  }
  return out;
}

std::size_t WriteTarget::width() const {
  if (terms.empty()) throw StructureError("write target has no terms");
  return terms.front().bits.width();
}

bool WriteTarget::is_expanded() const {
  return terms.size() == 1 && terms.front().weight == Amplitude{1.0};
}

double WriteTarget::weight_norm_squared() const {
  double total = 0.0;
  for (const auto& t : terms) total += std::norm(t.weight);
  return total;
}

WriteTarget WriteTarget::scaled(Amplitude factor) const {
  WriteTarget out = *this;
  for (auto& t : out.terms) t.weight *= factor;
  return out;
}

WriteTarget tensor(const WriteTarget& a, const WriteTarget& b) {
  WriteTarget out;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      out.terms.push_back(WriteTerm{ta.bits + tb.bits, ta.weight * tb.weight});
    }
  }
  return out;
}

Qtm::Qtm(std::set<StateLabel> states, std::size_t width, StateLabel start,
         std::set<StateLabel> finals, const std::vector<DeltaRule>& rules,
         std::vector<PatternRule> patterns)
    : states_(std::move(states)),
      width_(width),
      start_(std::move(start)),
      finals_(std::move(finals)),
      patterns_(std::move(patterns)) {
  if (width_ == 0) throw StructureError("machine width must be at least 1");
  auto require_state = [this](const StateLabel& q, const std::string& what) {
    if (states_.count(q) == 0) {
      throw StructureError(what + " '" + q + "' is not a machine state");
    }
  };
  require_state(start_, "start state");
  for (const auto& q : finals_) require_state(q, "final state");
  for (const auto& p : patterns_) require_state(p.state, "pattern state");
  for (const auto& rule : rules) {
    require_state(rule.state, "rule state");
    if (!rule.read.is_blank() && rule.read.bits().width() != width_) {
      throw StructureError("rule reads " + rule.read.str() + " on a width-" +
                           std::to_string(width_) + " machine");
    }
    for (const auto& br : rule.branches) {
      require_state(br.next, "next state");
      if (br.write.terms.empty()) {
        throw StructureError("rule (" + rule.read.str() + ", " + rule.state +
                             ") has a branch that writes nothing");
      }
      for (const auto& t : br.write.terms) {
        if (t.bits.width() != width_) {
          throw StructureError("rule (" + rule.read.str() + ", " + rule.state +
                               ") writes " + t.bits.str() + " on a width-" +
                               std::to_string(width_) + " machine");
        }
      }
    }
    if (!rules_.emplace(RuleKey{rule.read, rule.state}, rule).second) {
      throw StructureError("duplicate rule for source (" + rule.read.str() + ", " +
                           rule.state + ")");
    }
  }
}

std::optional<DeltaRule> Qtm::lookup(const Symbol& read, const StateLabel& state) const {
  if (auto it = rules_.find(RuleKey{read, state}); it != rules_.end()) {
    return it->second;
  }
  for (const auto& p : patterns_) {
    if (p.state == state && p.matches(read)) {
      return DeltaRule{read, state, p.branches(read)};
    }
  }
  return std::nullopt;
}

std::size_t Qtm::branch_count() const {
  std::size_t total = 0;
  for (const auto& [key, rule] : rules_) {
    for (const auto& br : rule.branches) total += br.write.terms.size();
  }
  return total;
}

namespace {

std::vector<Branch> expand_branches(const std::vector<Branch>& in) {
  std::map<std::tuple<BasisString, StateLabel, Move>, Amplitude> merged;
  for (const auto& br : in) {
    for (const auto& t : br.write.terms) {
      merged[{t.bits, br.next, br.move}] += br.amplitude * t.weight;
    }
  }
  std::vector<Branch> out;
  for (const auto& [key, amp] : merged) {
    if (std::abs(amp) < kPruneTolerance) continue;
    const auto& [bits, next, move] = key;
    out.push_back(Branch{WriteTarget::ket(bits), next, move, amp});
  }
  return out;
}

std::vector<Branch> compact_branches(const std::vector<Branch>& in) {
  std::map<std::pair<StateLabel, Move>, std::vector<WriteTerm>> groups;
  for (const auto& br : expand_branches(in)) {
    groups[{br.next, br.move}].push_back(
        WriteTerm{br.write.terms.front().bits, br.amplitude});
  }
  std::vector<Branch> out;
  for (auto& [key, terms] : groups) {
    double norm2 = 0.0;
    for (const auto& t : terms) norm2 += std::norm(t.weight);
    const double norm = std::sqrt(norm2);
    for (auto& t : terms) t.weight /= norm;
    out.push_back(Branch{WriteTarget{std::move(terms)}, key.first, key.second, norm});
  }
  return out;
}

template <typename Transform>
Qtm transform_rules(const Qtm& m, Transform transform) {
  std::vector<DeltaRule> rules;
  rules.reserve(m.rules().size());
  for (const auto& [key, rule] : m.rules()) {
    rules.push_back(DeltaRule{rule.read, rule.state, transform(rule.branches)});
  }
  std::vector<PatternRule> patterns;
  for (const auto& p : m.patterns()) {
    auto inner = p.branches;
    patterns.push_back(PatternRule{
        p.state, p.description, p.matches,
        [inner, transform](const Symbol& s) { return transform(inner(s)); }});
  }
  return Qtm(m.states(), m.width(), m.start(), m.finals(), rules, std::move(patterns));
}

}  // namespace

Qtm materialize(const Qtm& m) {
  if (m.patterns().empty()) return m;
  if (m.width() > 16) {
    throw SizeError("cannot materialize pattern rules at width " +
                    std::to_string(m.width()));
  }
  std::vector<DeltaRule> rules;
  for (const auto& [key, rule] : m.rules()) rules.push_back(rule);
  std::vector<Symbol> symbols{Symbol::blank()};
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << m.width()); ++i) {
    symbols.emplace_back(BasisString::from_index(i, m.width()));
  }
  for (const auto& state : m.states()) {
    for (const auto& sym : symbols) {
      if (m.rules().count(RuleKey{sym, state}) != 0) continue;
      if (auto rule = m.lookup(sym, state)) rules.push_back(std::move(*rule));
    }
  }
  return Qtm(m.states(), m.width(), m.start(), m.finals(), rules);
}

Qtm expand_rules(const Qtm& m) { return transform_rules(m, expand_branches); }

Qtm compact_rules(const Qtm& m) { return transform_rules(m, compact_branches); }

NormalizationReport check_local_normalization(const Qtm& m, double tol) {
  NormalizationReport report;
  const Qtm full = materialize(m);
  for (const auto& [key, rule] : full.rules()) {
    double sum = 0.0;
    for (const auto& br : expand_branches(rule.branches)) sum += std::norm(br.amplitude);
    ++report.sources_checked;
    if (std::abs(sum - 1.0) > tol) {
      report.pass = false;
      report.violations.push_back(NormalizationViolation{rule.read, rule.state, sum});
    }
  }
  return report;
}

Symbol Configuration::under_head() const {
  auto it = tape.find(head);
  return it == tape.end() ? Symbol::blank() : Symbol(it->second);
}

std::string Configuration::str() const {
  std::string out = "<" + state + ", [";
  bool first = true;
  for (const auto& [pos, bits] : tape) {
    if (!first) out += ' ';
    out += std::to_string(pos) + ":" + bits.str();
    first = false;
  }
  return out + "], head " + std::to_string(head) + ">";
}

Superposition::Superposition(Map entries) {
  for (auto& [c, a] : entries) {
    if (std::abs(a) >= kPruneTolerance) entries_.emplace(c, a);
  }
}

Amplitude Superposition::amplitude(const Configuration& c) const {
  auto it = entries_.find(c);
  return it == entries_.end() ? Amplitude{} : it->second;
}

double Superposition::norm_squared() const {
  double total = 0.0;
  for (const auto& [c, a] : entries_) total += std::norm(a);
  return total;
}

Superposition initial_superposition(const Qtm& m) {
  return Superposition({{Configuration{m.start(), {}, 0}, Amplitude{1.0}}});
}

Superposition step(const Qtm& m, const Superposition& s, StepStats* stats) {
  Superposition::Map produced;
  Superposition::Map passed;
  std::size_t contributions = 0;
  for (const auto& [config, amp] : s.entries()) {
    if (m.is_final(config.state)) {
      passed[config] += amp;
      continue;
    }
    const Symbol read = config.under_head();
    const auto rule = m.lookup(read, config.state);
    if (!rule) {
      throw StuckError("no rule for (" + read.str() + ", " + config.state +
                       ") in configuration " + config.str());
    }
    for (const auto& br : rule->branches) {
      for (const auto& t : br.write.terms) {
        Configuration next{br.next, config.tape, config.head + head_offset(br.move)};
        next.tape.insert_or_assign(config.head, t.bits);
        produced[std::move(next)] += amp * br.amplitude * t.weight;
        ++contributions;
      }
    }
  }
  if (stats != nullptr) {
    *stats = StepStats{};
    stats->contributions = contributions;
    stats->targets = produced.size();
    for (const auto& [c, a] : produced) {
      if (std::abs(a) >= kPruneTolerance) {
        ++stats->surviving;
      } else {
        stats->max_cancelled_residual = std::max(stats->max_cancelled_residual, std::abs(a));
      }
    }
  }
  for (const auto& [c, a] : passed) produced[c] += a;
  return Superposition(std::move(produced));
}

namespace {

bool all_final(const Qtm& m, const Superposition& s) {
  return std::all_of(s.entries().begin(), s.entries().end(),
                     [&](const auto& e) { return m.is_final(e.first.state); });
}

}  // namespace

RunResult run(const Qtm& m, std::size_t max_steps) {
  if (max_steps == 0) throw RangeError("max_steps must be at least 1");
  RunResult result{{initial_superposition(m)}};
  while (!all_final(m, result.trace.back())) {
    if (result.steps() >= max_steps) {
      throw TimeoutError("machine did not halt within " + std::to_string(max_steps) +
                         " steps");
    }
    result.trace.push_back(step(m, result.trace.back()));
  }
  return result;
}

std::map<BasisString, double> measure_tape_prefix(const Superposition& s, std::size_t k) {
  std::map<BasisString, double> out;
  for (const auto& [config, amp] : s.entries()) {
    const Symbol sym = config.under_head();
    if (sym.is_blank()) {
      throw MeasureError("blank under the head in " + config.str());
    }
    if (k < 1 || k > sym.bits().width()) {
      throw RangeError("cannot read " + std::to_string(k) + " bits of symbol " +
                       sym.str());
    }
    out[sym.bits().prefix(k)] += std::norm(amp);
  }
  return out;
}

double reachable_isometry_defect(const Qtm& m, std::size_t max_steps) {
  const RunResult r = run(m, max_steps);
  double worst = 0.0;
  for (const auto& sup : r.trace) {
    std::vector<Superposition> images;
    for (const auto& [config, amp] : sup.entries()) {
      if (m.is_final(config.state)) continue;
      images.push_back(step(m, Superposition({{config, Amplitude{1.0}}})));
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (std::size_t j = i; j < images.size(); ++j) {
        Amplitude dot{};
        for (const auto& [c, a] : images[i].entries()) {
          dot += std::conj(a) * images[j].amplitude(c);
        }
        const Amplitude expected = i == j ? Amplitude{1.0} : Amplitude{};
        worst = std::max(worst, std::abs(dot - expected));
      }
    }
  }
  return worst;
}

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

const std::set<StateLabel>& stage_states() {
  static const std::set<StateLabel> states{stage_label(0), stage_label(1),
                                           stage_label(2), stage_label(3)};
  return states;
}

Qtm make_stage_machine(std::size_t width, const std::vector<DeltaRule>& rules,
                       std::vector<PatternRule> patterns = {}) {
  return Qtm(stage_states(), width, stage_label(0), {stage_label(3)}, rules,
             std::move(patterns));
}

std::string seed_bits(std::size_t width) {
  std::string s(width, '0');
  s.back() = '1';
  return s;
}

// (|0> + |1>)^{⊗k}, unnormalized.
WriteTarget plus_power(std::size_t k) {
  const WriteTarget plus = WriteTarget::ket_sum({{"0", 1.0}, {"1", 1.0}});
  WriteTarget out = plus;
  for (std::size_t i = 1; i < k; ++i) out = tensor(out, plus);
  return out;
}

// H|y1..ym> built one factor at a time: H(y1..ym) = H(y1..y(m-1)) H(ym).
WriteTarget hadamard_write(const BasisString& y) {
  const WriteTarget h0 = WriteTarget::ket_sum({{"0", kInvSqrt2}, {"1", kInvSqrt2}});
  const WriteTarget h1 = WriteTarget::ket_sum({{"0", kInvSqrt2}, {"1", -kInvSqrt2}});
  WriteTarget out = y.bit(0) ? h1 : h0;
  for (std::size_t i = 1; i < y.width(); ++i) out = tensor(out, y.bit(i) ? h1 : h0);
  return out;
}

Branch basis_branch(const std::string& bits, std::size_t next, Amplitude amp) {
  return Branch{WriteTarget::ket(BasisString(bits)), stage_label(next), Move::N, amp};
}

// Oracle stage: x b -> x (b xor f(x)).
std::vector<Branch> oracle_branches(const BooleanFunction& f, const BasisString& read) {
  const std::size_t n = read.width();
  const BasisString x = read.prefix(n - 1);
  const bool y = read.bit(n - 1);
  const bool out = y != f(x);
  return {Branch{WriteTarget::ket(read.with_bit(n - 1, out)), stage_label(2), Move::N, 1.0}};
}

// Final stage: x b -> H(x) b.
std::vector<Branch> final_hadamard_branches(const BasisString& read) {
  const std::size_t n = read.width();
  const WriteTarget last = WriteTarget::ket(read.suffix_from(n - 1));
  return {Branch{tensor(hadamard_write(read.prefix(n - 1)), last), stage_label(3),
                 Move::N, 1.0}};
}

}  // namespace

Qtm build_deutsch_qtm(const BooleanFunction& f, DeutschRuleForms forms) {
  if (f.arity() != 1) {
    throw ArityError("the Deutsch machine needs arity 1, got " +
                     std::to_string(f.arity()));
  }
  const Symbol seed(BasisString("01"));
  const WriteTarget plus = WriteTarget::ket_sum({{"0", 1.0}, {"1", 1.0}});
  const WriteTarget minus = WriteTarget::ket_sum({{"0", 1.0}, {"1", -1.0}});
  const WriteTarget ket0 = WriteTarget::ket(BasisString("0"));
  const WriteTarget ket1 = WriteTarget::ket(BasisString("1"));
  const auto bit = [](bool b) { return std::string(b ? "1" : "0"); };

  std::vector<DeltaRule> rules;
  rules.push_back({Symbol::blank(), stage_label(0), {basis_branch("01", 0, 1.0)}});

  DeltaRule hadamard_stage{seed, stage_label(0), {}};
  switch (forms.hadamard_stage) {
    case HadamardStageForm::Expanded:
      hadamard_stage.branches = {basis_branch("00", 1, 0.5), basis_branch("01", 1, -0.5),
                                 basis_branch("10", 1, 0.5), basis_branch("11", 1, -0.5)};
      break;
    case HadamardStageForm::TopSuperposed:
      hadamard_stage.branches = {
          {tensor(plus.scaled(kInvSqrt2), ket0), stage_label(1), Move::N, kInvSqrt2},
          {tensor(plus.scaled(kInvSqrt2), ket1), stage_label(1), Move::N, -kInvSqrt2}};
      break;
    case HadamardStageForm::BottomSuperposed:
      hadamard_stage.branches = {
          {tensor(ket0, minus.scaled(kInvSqrt2)), stage_label(1), Move::N, kInvSqrt2},
          {tensor(ket1, minus.scaled(kInvSqrt2)), stage_label(1), Move::N, kInvSqrt2}};
      break;
    case HadamardStageForm::Compact:
      hadamard_stage.branches = {
          {tensor(plus, minus).scaled(0.5), stage_label(1), Move::N, 1.0}};
      break;
  }
  rules.push_back(std::move(hadamard_stage));

  const bool f0 = f(std::size_t{0});
  const bool f1 = f(std::size_t{1});
  rules.push_back({Symbol(BasisString("00")), stage_label(1), {basis_branch("0" + bit(f0), 2, 1.0)}});
  rules.push_back({Symbol(BasisString("01")), stage_label(1), {basis_branch("0" + bit(!f0), 2, 1.0)}});
  rules.push_back({Symbol(BasisString("10")), stage_label(1), {basis_branch("1" + bit(f1), 2, 1.0)}});
  rules.push_back({Symbol(BasisString("11")), stage_label(1), {basis_branch("1" + bit(!f1), 2, 1.0)}});

  for (const std::string x : {"0", "1"}) {
    const Symbol top0(BasisString("0" + x));
    const Symbol top1(BasisString("1" + x));
    const WriteTarget kx = WriteTarget::ket(BasisString(x));
    if (forms.final_stage == FinalStageForm::Expanded) {
      rules.push_back({top0, stage_label(2),
                       {basis_branch("0" + x, 3, kInvSqrt2), basis_branch("1" + x, 3, kInvSqrt2)}});
      rules.push_back({top1, stage_label(2),
                       {basis_branch("0" + x, 3, kInvSqrt2), basis_branch("1" + x, 3, -kInvSqrt2)}});
    } else {
      rules.push_back({top0, stage_label(2),
                       {{tensor(plus.scaled(kInvSqrt2), kx), stage_label(3), Move::N, 1.0}}});
      rules.push_back({top1, stage_label(2),
                       {{tensor(minus.scaled(kInvSqrt2), kx), stage_label(3), Move::N, 1.0}}});
    }
  }
  return make_stage_machine(2, rules);
}

Qtm build_dj_qtm(const BooleanFunction& f) {
  const std::size_t n = f.arity() + 1;
  const std::string seed = seed_bits(n);
  const double amp = std::pow(2.0, -static_cast<double>(n) / 2.0);
  const WriteTarget prefix = plus_power(n - 1);

  std::vector<DeltaRule> rules;
  rules.push_back({Symbol::blank(), stage_label(0), {basis_branch(seed, 0, 1.0)}});
  rules.push_back(
      {Symbol(BasisString(seed)), stage_label(0),
       {{tensor(prefix, WriteTarget::ket(BasisString("0"))), stage_label(1), Move::N, amp},
        {tensor(prefix, WriteTarget::ket(BasisString("1"))), stage_label(1), Move::N, -amp}}});

  if (n <= kEagerRuleWidth) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const BasisString read = BasisString::from_index(i, n);
      rules.push_back({Symbol(read), stage_label(1), oracle_branches(f, read)});
      rules.push_back({Symbol(read), stage_label(2), final_hadamard_branches(read)});
    }
    return make_stage_machine(n, rules);
  }

  auto composite = [n](const Symbol& s) {
    return !s.is_blank() && s.bits().width() == n;
  };
  std::vector<PatternRule> patterns{
      {stage_label(1), "x y -> x (y xor f(x))", composite,
       [f](const Symbol& s) { return oracle_branches(f, s.bits()); }},
      {stage_label(2), "x y -> H(x) y", composite,
       [](const Symbol& s) { return final_hadamard_branches(s.bits()); }}};
  return make_stage_machine(n, rules, std::move(patterns));
}

Qtm extend_dj_qtm(const Qtm& m, const BooleanFunction& f_new) {
  const std::size_t n = m.width();
  if (n < 2) throw StructureError("cannot extend a width-1 machine");
  if (f_new.arity() != n) {
    throw ArityError("extending width " + std::to_string(n) + " needs arity " +
                     std::to_string(n) + ", got " + std::to_string(f_new.arity()));
  }
  if (m.states() != stage_states() || m.start() != stage_label(0) ||
      m.finals() != std::set<StateLabel>{stage_label(3)}) {
    throw StructureError("machine does not have the PHI_0..PHI_3 stage structure");
  }
  const Qtm old = expand_rules(materialize(m));

  auto rule_at = [&](const Symbol& read, std::size_t stage) -> const DeltaRule& {
    auto it = old.rules().find(RuleKey{read, stage_label(stage)});
    if (it == old.rules().end()) {
      throw StructureError("missing rule for (" + read.str() + ", " +
                           stage_label(stage) + ")");
    }
    return it->second;
  };
  auto expect_branch = [](const Branch& br, std::size_t next) {
    if (br.next != stage_label(next) || br.move != Move::N) {
      throw StructureError("unexpected branch to " + br.next + " with move " +
                           to_string(br.move));
    }
    return br.write.terms.front().bits;
  };

  // Seed: 0^(n-1) 1 -> 0^n 1.
  const DeltaRule& init = rule_at(Symbol::blank(), 0);
  if (init.branches.size() != 1 || init.branches.front().amplitude != Amplitude{1.0}) {
    throw StructureError("initialization rule must be a single branch of amplitude 1");
  }
  const BasisString seed = expect_branch(init.branches.front(), 0);
  if (seed.str() != seed_bits(n)) {
    throw StructureError("seed " + seed.str() + " is not " + seed_bits(n));
  }
  const BasisString new_seed =
      seed.prefix(n - 1) + BasisString("0") + seed.suffix_from(n - 1);

  std::vector<DeltaRule> rules;
  rules.push_back({Symbol::blank(), stage_label(0), {basis_branch(new_seed.str(), 0, 1.0)}});

  // First Hadamard stage: the new top-register bit enters as 0, so each old
  // branch y b splits into y 0 b and y 1 b with a factor H(0) = 1/√2.
  DeltaRule first{Symbol(new_seed), stage_label(0), {}};
  for (const auto& br : rule_at(Symbol(seed), 0).branches) {
    const BasisString out = expect_branch(br, 1);
    for (const std::string y : {"0", "1"}) {
      first.branches.push_back(basis_branch(
          (out.prefix(n - 1) + BasisString(y) + out.suffix_from(n - 1)).str(), 1,
          br.amplitude * kInvSqrt2));
    }
  }
  rules.push_back(std::move(first));

  for (std::uint64_t i = 0; i < (std::uint64_t{1} << (n + 1)); ++i) {
    const BasisString read = BasisString::from_index(i, n + 1);
    rules.push_back({Symbol(read), stage_label(1), oracle_branches(f_new, read)});
  }

  // Final Hadamard stage: source x x' b reuses the old rule for x b and
  // tensors in H(x') on the new bit.
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    const BasisString old_read = BasisString::from_index(i, n);
    const BasisString x = old_read.prefix(n - 1);
    const BasisString b = old_read.suffix_from(n - 1);
    const DeltaRule& old_rule = rule_at(Symbol(old_read), 2);
    for (const bool new_bit : {false, true}) {
      DeltaRule extended{Symbol(x + BasisString(new_bit ? "1" : "0") + b), stage_label(2), {}};
      for (const auto& br : old_rule.branches) {
        const BasisString out = expect_branch(br, 3);
        if (out.suffix_from(n - 1) != b) {
          throw StructureError("final stage of " + old_read.str() +
                               " changes the target bit");
        }
        for (const bool y : {false, true}) {
          const double h = (new_bit && y) ? -kInvSqrt2 : kInvSqrt2;
          extended.branches.push_back(basis_branch(
              (out.prefix(n - 1) + BasisString(y ? "1" : "0") + b).str(), 3,
              br.amplitude * h));
        }
      }
      rules.push_back(std::move(extended));
    }
  }
  return make_stage_machine(n + 1, rules);
}

}  // namespace qtmb
