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

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qtmb/linalg.hpp"
#include "qtmb/oracle.hpp"

namespace qtmb {

enum class Move { L, N, R };

std::string to_string(Move m);
Move parse_move(std::string_view s);
long head_offset(Move m);

using StateLabel = std::string;

// "PHI_k": the state reached after k circuit layers.
StateLabel stage_label(std::size_t k);

/// A tape symbol: blank, or the whole register as one composite symbol.
class Symbol {
 public:
  static Symbol blank() { return Symbol(); }
  explicit Symbol(BasisString bits) : bits_(std::move(bits)) {}

  bool is_blank() const { return !bits_.has_value(); }
  // Throws MeasureError on a blank.
  const BasisString& bits() const;
  // "□" for blank, the bit string otherwise.
  std::string str() const;

  // Blank sorts before every composite symbol.
  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;

 private:
  Symbol() = default;
  std::optional<BasisString> bits_;
};

struct WriteTerm {
  BasisString bits;
  Amplitude weight;
};

/// What a branch writes under the head: a weighted sum of composite symbols.
/// A single term of weight 1 is the plain (expanded) form. Weights need not
/// be normalized; a branch contributes amplitude·weight to each written term.
struct WriteTarget {
  std::vector<WriteTerm> terms;

  static WriteTarget ket(const BasisString& bits);
  // Sum of |b> over the given single bits with the given weights, e.g.
  // ket_sum({{"0", 1}, {"1", -1}}) for |0> - |1>.
  static WriteTarget ket_sum(const std::vector<std::pair<std::string, Amplitude>>& terms);

  std::size_t width() const;
  bool is_expanded() const;
  double weight_norm_squared() const;
  WriteTarget scaled(Amplitude factor) const;
};

// Tensor product of write targets; `a` supplies the leftmost bits.
WriteTarget tensor(const WriteTarget& a, const WriteTarget& b);

struct Branch {
  WriteTarget write;
  StateLabel next;
  Move move = Move::N;
  Amplitude amplitude{1.0};
};

/// All branches of δ leaving one (read symbol, state) source.
struct DeltaRule {
  Symbol read;
  StateLabel state;
  std::vector<Branch> branches;
};

using RuleKey = std::pair<Symbol, StateLabel>;

/// Width-parametric rule used above the eager materialization width: a
/// predicate over read symbols plus a generator of the branches.
struct PatternRule {
  StateLabel state;
  std::string description;
  std::function<bool(const Symbol&)> matches;
  std::function<std::vector<Branch>(const Symbol&)> branches;
};

// Widths up to this are built with explicit per-symbol rules.
inline constexpr std::size_t kEagerRuleWidth = 8;

/// (Q, Σ, Γ, δ, q0, □, F). Γ is all width-bit composite symbols plus blank.
class Qtm {
 public:
  // Throws StructureError when start/finals/rule states are not in `states`,
  // when two rules share a source, or a written symbol has the wrong width.
  Qtm(std::set<StateLabel> states, std::size_t width, StateLabel start,
      std::set<StateLabel> finals, const std::vector<DeltaRule>& rules,
      std::vector<PatternRule> patterns = {});

  const std::set<StateLabel>& states() const { return states_; }
  std::size_t width() const { return width_; }
  const StateLabel& start() const { return start_; }
  const std::set<StateLabel>& finals() const { return finals_; }
  const std::map<RuleKey, DeltaRule>& rules() const { return rules_; }
  const std::vector<PatternRule>& patterns() const { return patterns_; }

  bool is_final(const StateLabel& q) const { return finals_.count(q) != 0; }
  // Explicit rules win over patterns.
  std::optional<DeltaRule> lookup(const Symbol& read, const StateLabel& state) const;
  // Sum over all branches of the number of write terms.
  std::size_t branch_count() const;

 private:
  std::set<StateLabel> states_;
  std::size_t width_;
  StateLabel start_;
  std::set<StateLabel> finals_;
  std::map<RuleKey, DeltaRule> rules_;
  std::vector<PatternRule> patterns_;
};

// Every pattern instantiated for all 2^width composite symbols. SizeError
// above 16 bits.
Qtm materialize(const Qtm& m);

// One branch per written symbol with weight 1, amplitudes multiplied through,
// duplicate (write, next, move) branches merged, zero branches dropped, and
// branches sorted. Pattern rules stay patterns (with expanded output).
Qtm expand_rules(const Qtm& m);

// Inverse grouping of expand_rules: for each source, branches sharing
// (next, move) become one branch whose write target carries the relative
// weights and whose amplitude is their norm.
Qtm compact_rules(const Qtm& m);

struct NormalizationViolation {
  Symbol read;
  StateLabel state;
  double sum = 0.0;
};

struct NormalizationReport {
  bool pass = true;
  std::size_t sources_checked = 0;
  std::vector<NormalizationViolation> violations;
};

// Local normalization: for every defined source, the squared moduli of the
// amplitudes to its distinct successor configurations sum to 1 within tol.
NormalizationReport check_local_normalization(const Qtm& m,
                                              double tol = kCompareTolerance);

/// Canonical configuration: the tape stores composite symbols only; every
/// other position is blank.
struct Configuration {
  StateLabel state;
  std::map<long, BasisString> tape;
  long head = 0;

  Symbol under_head() const;
  std::string str() const;

  auto operator<=>(const Configuration&) const = default;
  bool operator==(const Configuration&) const = default;
};

class Superposition {
 public:
  using Map = std::map<Configuration, Amplitude>;

  Superposition() = default;
  // Prunes entries below kPruneTolerance.
  explicit Superposition(Map entries);

  const Map& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  Amplitude amplitude(const Configuration& c) const;
  double norm_squared() const;

 private:
  Map entries_;
};

// {<q0, blank tape, head 0>: 1}
Superposition initial_superposition(const Qtm& m);

struct StepStats {
  // Individual amplitude contributions produced by δ (final-state
  // pass-throughs excluded).
  std::size_t contributions = 0;
  // Distinct configurations those contributions landed on, before pruning.
  std::size_t targets = 0;
  // Targets that survived merging and pruning.
  std::size_t surviving = 0;
  // Largest modulus among targets whose contributions cancelled.
  double max_cancelled_residual = 0.0;
};

// Applies δ once to every non-final configuration; final configurations pass
// through. StuckError when a non-final configuration has no rule.
Superposition step(const Qtm& m, const Superposition& s, StepStats* stats = nullptr);

struct RunResult {
  // trace.front() is the initial superposition, trace.back() the final one.
  std::vector<Superposition> trace;
  const Superposition& final_superposition() const { return trace.back(); }
  std::size_t steps() const { return trace.size() - 1; }
};

inline constexpr std::size_t kDefaultMaxSteps = 10000;

// Steps until every configuration is final. TimeoutError after max_steps,
// RangeError when max_steps is 0.
RunResult run(const Qtm& m, std::size_t max_steps = kDefaultMaxSteps);

// Marginal over the first k bits of the symbol under the head. MeasureError
// on a blank, RangeError on a bad k.
std::map<BasisString, double> measure_tape_prefix(const Superposition& s, std::size_t k);

// Over the trace of run(m): for each step, the largest deviation from the
// identity of the Gram matrix of δ-images of the reachable non-final basis
// configurations. Zero means δ acts isometrically on what is reached.
double reachable_isometry_defect(const Qtm& m, std::size_t max_steps = kDefaultMaxSteps);

// Rule groupings for the Hadamard stage out of PHI_0.
enum class HadamardStageForm {
  Expanded,        // four basis rules, amplitudes ±1/2
  TopSuperposed,   // (|0>+|1>)/√2 on the top qubit, two rules
  BottomSuperposed,// (|0>-|1>)/√2 on the bottom qubit, two rules
  Compact,         // one rule writing (|0>+|1>)(|0>-|1>)/2
};

// Rule groupings for the final Hadamard stage out of PHI_2.
enum class FinalStageForm {
  Expanded,  // two basis branches per source, amplitudes ±1/√2
  Compact,   // one branch per source writing H(top) x
};

struct DeutschRuleForms {
  HadamardStageForm hadamard_stage = HadamardStageForm::Expanded;
  FinalStageForm final_stage = FinalStageForm::Expanded;
};

// The hand-written Deutsch machine on two-bit composite symbols.
// ArityError unless f has arity 1.
Qtm build_deutsch_qtm(const BooleanFunction& f, DeutschRuleForms forms = {});

// The Deutsch-Jozsa machine of width arity+1 with superposed write targets
// for the two Hadamard stages.
Qtm build_dj_qtm(const BooleanFunction& f);

// Widens a Deutsch-Jozsa machine of width n to width n+1 for `f_new` of
// arity n. The Hadamard stages are derived from the old machine's rules by
// H(y1..ym) = H(y1..y(m-1)) H(ym); the oracle stage comes from f_new.
// StructureError when `m` lacks the PHI_0..PHI_3 stage shape, ArityError on
// an arity mismatch.
Qtm extend_dj_qtm(const Qtm& m, const BooleanFunction& f_new);

}  // namespace qtmb
