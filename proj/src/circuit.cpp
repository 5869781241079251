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

#include "qtmb/circuit.hpp"

#include <algorithm>
#include <utility>

#include "qtmb/errors.hpp"

namespace qtmb {

std::string to_string(Gate g) {
  switch (g) {
    case Gate::H:
      return "H";
    case Gate::I:
      return "I";
    case Gate::X:
      return "X";
  }
  return "?";
}

Gate parse_gate(std::string_view label) {
  if (label == "H") return Gate::H;
  if (label == "I") return Gate::I;
  if (label == "X") return Gate::X;
  throw ParseError("unknown gate '" + std::string(label) + "' (expected H, I or X)");
}

Circuit::Circuit(std::size_t width, BasisString initial, std::vector<Layer> layers)
    : width_(width), initial_(std::move(initial)), layers_(std::move(layers)) {
  if (initial_.width() != width_) {
    throw DimensionError("initial string " + initial_.str() +
                         " does not match circuit width " + std::to_string(width_));
  }
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const auto& layer = layers_[k];
    if (const auto* row = std::get_if<GateRow>(&layer)) {
      if (row->gates.size() != width_) {
        throw DimensionError("layer " + std::to_string(k + 1) + " has " +
                             std::to_string(row->gates.size()) +
                             " gates for width " + std::to_string(width_));
      }
    } else if (std::get<OracleLayer>(layer).f.arity() + 1 != width_) {
      throw DimensionError("oracle in layer " + std::to_string(k + 1) +
                           " needs width arity+1 = " +
                           std::to_string(std::get<OracleLayer>(layer).f.arity() + 1));
    }
  }
}

std::size_t Circuit::oracle_layer_count() const {
  return static_cast<std::size_t>(std::count_if(
      layers_.begin(), layers_.end(),
      [](const Layer& l) { return std::holds_alternative<OracleLayer>(l); }));
}

Circuit build_deutsch(const BooleanFunction& f) {
  if (f.arity() != 1) {
    throw ArityError("the Deutsch circuit needs arity 1, got " +
                     std::to_string(f.arity()));
  }
  return build_dj(f);
}

Circuit build_dj(const BooleanFunction& f) {
  const std::size_t width = f.arity() + 1;
  std::string seed(width, '0');
  seed.back() = '1';
  GateRow last{std::vector<Gate>(width, Gate::H)};
  last.gates.back() = Gate::I;
  return Circuit(width, BasisString(seed),
                 {GateRow{std::vector<Gate>(width, Gate::H)}, OracleLayer{f}, last});
}

Circuit build_naive(const BooleanFunction& f) {
  if (f.arity() != 1) {
    throw ArityError("the one-step evaluation circuit needs arity 1, got " +
                     std::to_string(f.arity()));
  }
  return Circuit(2, BasisString("00"),
                 {GateRow{{Gate::H, Gate::I}}, OracleLayer{f}});
}

UnitaryMatrix layer_unitary(const Layer& layer, std::size_t width,
                            std::size_t* queries) {
  if (const auto* oracle = std::get_if<OracleLayer>(&layer)) {
    if (oracle->f.arity() + 1 != width) {
      throw DimensionError("oracle width mismatch");
    }
    return oracle_unitary(oracle->f, queries);
  }
  const auto& gates = std::get<GateRow>(layer).gates;
  if (gates.size() != width) throw DimensionError("gate row width mismatch");
  auto single = [](Gate g) {
    switch (g) {
      case Gate::H:
        return hadamard();
      case Gate::X:
        return pauli_x();
      case Gate::I:
        break;
    }
    return identity(1);
  };
  UnitaryMatrix u = single(gates.front());
  for (std::size_t i = 1; i < gates.size(); ++i) u = tensor(u, single(gates[i]));
  return u;
}

std::vector<StateVector> simulate(const Circuit& c, SimulationStats* stats) {
  std::vector<StateVector> states{StateVector::basis(c.initial())};
  states.reserve(c.layers().size() + 1);
  for (const auto& layer : c.layers()) {
    std::size_t queries = 0;
    const UnitaryMatrix u = layer_unitary(layer, c.width(), &queries);
    if (stats != nullptr && std::holds_alternative<OracleLayer>(layer)) {
      ++stats->oracle_layers;
      stats->oracle_queries.push_back(queries);
    }
    states.push_back(apply(u, states.back()));
  }
  return states;
}

std::map<BasisString, double> measure_prefix(const StateVector& s, std::size_t k) {
  if (k < 1 || k > s.width()) {
    throw RangeError("cannot measure " + std::to_string(k) +
                     " bits of a width-" + std::to_string(s.width()) + " state");
  }
  std::map<BasisString, double> out;
  for (const auto& [basis, amp] : s.amplitudes()) {
    out[basis.prefix(k)] += std::norm(amp);
  }
  return out;
}

}  // namespace qtmb
