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
#include <string>
#include <variant>
#include <vector>

#include "qtmb/linalg.hpp"
#include "qtmb/oracle.hpp"

namespace qtmb {

enum class Gate { H, I, X };

std::string to_string(Gate g);
Gate parse_gate(std::string_view label);

// One single-qubit gate per wire, applied as a tensor product.
struct GateRow {
  std::vector<Gate> gates;
  bool operator==(const GateRow&) const = default;
};

// U_f across all wires: the first arity wires hold x, the last holds y.
struct OracleLayer {
  BooleanFunction f;
  bool operator==(const OracleLayer&) const = default;
};

using Layer = std::variant<GateRow, OracleLayer>;

/// Layered circuit: an initial basis state followed by an ordered product of
/// layer unitaries.
class Circuit {
 public:
  // Throws DimensionError if the initial string or any layer does not fit
  // the width.
  Circuit(std::size_t width, BasisString initial, std::vector<Layer> layers);

  std::size_t width() const { return width_; }
  const BasisString& initial() const { return initial_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t oracle_layer_count() const;

  bool operator==(const Circuit&) const = default;

 private:
  std::size_t width_;
  BasisString initial_;
  std::vector<Layer> layers_;
};

// (H ⊗ I) U_f (H ⊗ H) |01>. ArityError unless f has arity 1.
Circuit build_deutsch(const BooleanFunction& f);
// Width arity+1, initial 0...01, layers [H^n, U_f, H^(n-1) ⊗ I].
Circuit build_dj(const BooleanFunction& f);
// U_f (H ⊗ I) |00>: evaluates f on both inputs at once, but measuring the
// bottom wire only yields f(0) or f(1) at random. ArityError unless arity 1.
Circuit build_naive(const BooleanFunction& f);

// Unitary of a single layer on `width` wires. `queries` counts truth-table
// lookups made while building an oracle layer.
UnitaryMatrix layer_unitary(const Layer& layer, std::size_t width,
                            std::size_t* queries = nullptr);

struct SimulationStats {
  std::size_t oracle_layers = 0;
  // Truth-table lookups per oracle layer, in layer order.
  std::vector<std::size_t> oracle_queries;
};

// [|Φ0>, ..., |ΦL>] with |Φ0> the initial basis state and |Φk> = U_k |Φ(k-1)>.
std::vector<StateVector> simulate(const Circuit& c, SimulationStats* stats = nullptr);

// Marginal distribution over the first k bits. RangeError unless
// 1 <= k <= width.
std::map<BasisString, double> measure_prefix(const StateVector& s, std::size_t k);

}  // namespace qtmb
