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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qtmb/linalg.hpp"

namespace qtmb {

/// Truth table of f: {0,1}^m -> {0,1}. Entry i is f applied to the m-bit
/// big-endian encoding of i.
class BooleanFunction {
 public:
  BooleanFunction(std::size_t arity, std::vector<bool> table);

  // Parses the '0'/'1' table encoding ("0110"); the length must be a power of
  // two of at least 2. Throws ParseError otherwise.
  static BooleanFunction parse(std::string_view table);
  static BooleanFunction constant(std::size_t arity, bool value);

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return table_.size(); }
  bool operator()(std::size_t x) const { return table_[x]; }
  bool operator()(const BasisString& x) const;
  std::size_t count_ones() const;
  std::string to_string() const;

  bool operator==(const BooleanFunction&) const = default;

 private:
  std::size_t arity_;
  std::vector<bool> table_;
};

enum class Classification { Constant, Balanced, Neither };

std::string to_string(Classification c);
Classification classify(const BooleanFunction& f);

// Every constant and balanced function of the given arity, ordered by the
// table read as a big-endian binary number. Throws SizeError for m > 4.
std::vector<BooleanFunction> enumerate_promise_functions(std::size_t arity);

// U_f |x, y> = |x, y xor f(x)> on arity + 1 qubits. When `queries` is given it
// is incremented once per truth-table lookup.
UnitaryMatrix oracle_unitary(const BooleanFunction& f, std::size_t* queries = nullptr);

// Deterministic worst-case query count 2^(m-1) + 1 for separating constant
// from balanced. The value is checked by adversary enumeration before it is
// returned; a failed check throws std::logic_error. SizeError for m > 4.
std::size_t classical_worst_case_queries(std::size_t arity);

}  // namespace qtmb
