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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtmb/circuit.hpp"
#include "qtmb/qtm.hpp"

namespace qtmb {

struct LockstepFailure {
  std::size_t layer = 0;
  // Basis string, or the full configuration when the machine put amplitude
  // somewhere other than <PHI_k, [0:b], head 0>.
  std::string basis;
  Amplitude circuit_amp;
  Amplitude qtm_amp;
};

struct LockstepReport {
  bool pass = true;
  double max_deviation = 0.0;
  std::optional<LockstepFailure> first_failure;
};

// Compares circuit state |Φk> with machine superposition k+1 (the machine
// spends its first step writing the seed) for k = 0..L, amplitude by
// amplitude, phase included. StructureError when the machine's width or
// PHI_0..PHI_L states do not match the circuit.
LockstepReport lockstep_check(const Circuit& c, const Qtm& m,
                              double tol = kCompareTolerance);

struct ClosedFormReport {
  bool pass = true;
  // Φ2 against ((-1)^f(0)|0> + (-1)^f(1)|1>)(|0> - |1>)/2.
  double phi2_deviation = 0.0;
  // Φ2 matched ±(|0> + |1>)(|0> - |1>)/2 (constant) or ±(|0> - |1>)(|0> - |1>)/2
  // (balanced) with the case and sign predicted by f.
  bool case_split_ok = false;
  int phi2_sign = 0;
  // Φ3 against ±|c>(|0> - |1>)/√2, c = 0 constant, 1 balanced.
  double phi3_deviation = 0.0;
  int phi3_global_sign = 0;
};

inline constexpr double kClosedFormTolerance = 1e-12;

// Checks the Deutsch circuit states against their closed forms. ArityError
// unless f has arity 1.
ClosedFormReport verify_closed_forms(const BooleanFunction& f);

// U_f · U_f == I entrywise, exactly. SizeError above arity 4.
bool verify_uf_involution(const BooleanFunction& f);

/// Both models run on one function: the circuit, the hand-written machine
/// (expanded for arity >= 2) and the translated machine.
struct FunctionVerdict {
  std::string function;
  Classification classification = Classification::Neither;
  std::map<BasisString, double> circuit_distribution;
  std::map<BasisString, double> qtm_distribution;
  double distribution_deviation = 0.0;
  LockstepReport handwritten;
  LockstepReport translated;
  // Constant: P(0...0) = 1; balanced: P(0...0) = 0; always true for neither.
  bool promise_ok = true;
  bool pass = true;
};

FunctionVerdict verify_function(const BooleanFunction& f, double tol = kCompareTolerance);

struct SuiteReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  double max_deviation = 0.0;
  std::vector<FunctionVerdict> verdicts;
  bool pass() const { return passed == total; }
};

// verify_function over every promise function of each arity in
// [min_arity, max_arity]. SizeError above arity 3.
SuiteReport verify_suite(std::size_t min_arity, std::size_t max_arity,
                         double tol = kCompareTolerance);

}  // namespace qtmb
