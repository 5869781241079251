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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qtmb/circuit.hpp"
#include "qtmb/qtm.hpp"

namespace qtmb {

// Compiles a layered circuit into a machine with one state per layer
// boundary (PHI_0..PHI_L, final PHI_L):
//   δ(□, PHI_0, initial, PHI_0, N) = 1
//   δ(b, PHI_(k-1), b', PHI_k, N) = U_k[b', b]  for every nonzero entry.
// Layer 1 only gets rules for b = initial, the one symbol PHI_0 ever reads
// after the seed is written. Layers 2..L get every basis source.
// StructureError for a circuit without layers.
Qtm translate(const Circuit& c);

struct RuleDifference {
  // Source where the machines first differ, or empty for a global mismatch
  // (width, states, start, finals).
  std::string source;
  std::string detail;
};

struct RuleComparison {
  bool equal = true;
  std::optional<RuleDifference> first_difference;
};

// Compares expand_rules(a) and expand_rules(b) in canonical order. Branch
// amplitudes must agree within tol.
RuleComparison rules_equal(const Qtm& a, const Qtm& b, double tol = kPruneTolerance);

struct InductionCase {
  std::size_t width = 0;
  std::string function;
  RuleComparison comparison;
};

struct InductionReport {
  bool pass = true;
  // Width-2 Deutsch-Jozsa machine against the hand-written Deutsch machine.
  std::vector<InductionCase> base_cases;
  // extend_dj_qtm(width n machine, f) against translate(build_dj(f)).
  std::vector<InductionCase> steps;
};

// Base case plus extension steps for widths 2 <= n < n_max. Arity n
// functions are checked exhaustively for n <= 3; above that 32 functions are
// sampled (both constants plus seeded random balanced tables). SizeError
// unless 2 <= n_max <= 6.
InductionReport verify_induction(std::size_t n_max, unsigned seed = 0);

// "δ(read, state, write, next, move) = amplitude" lines, one per branch, in
// canonical order with the blank rule first. Pattern rules are materialized.
std::string to_delta_text(const Qtm& m);

// Renders amplitudes the way the rules are usually written: 1, -1/2, 1/√2,
// 1/√8, falling back to decimals.
std::string format_amplitude(Amplitude a);

}  // namespace qtmb
