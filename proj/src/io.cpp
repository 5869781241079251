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

#include "qtmb/io.hpp"

#include <fstream>

#include "qtmb/errors.hpp"

namespace qtmb {

using nlohmann::json;

namespace {

constexpr const char* kBlank = "□";

// Field access with ParseError instead of json exceptions.
template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

const json& array_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    throw ParseError(std::string("missing array field '") + key + "'");
  }
  return j.at(key);
}

json amp_json(Amplitude a) { return json{{"re", a.real()}, {"im", a.imag()}}; }

Symbol parse_symbol(const std::string& s) {
  if (s == kBlank || s == "_") return Symbol::blank();
  return Symbol(BasisString(s));
}

}  // namespace

json circuit_to_json(const Circuit& c) {
  json layers = json::array();
  for (const auto& layer : c.layers()) {
    if (const auto* row = std::get_if<GateRow>(&layer)) {
      json gates = json::array();
      for (Gate g : row->gates) gates.push_back(to_string(g));
      layers.push_back(json{{"row", gates}});
    } else {
      layers.push_back(json{{"oracle", std::get<OracleLayer>(layer).f.to_string()}});
    }
  }
  return json{{"width", c.width()}, {"initial", c.initial().str()}, {"layers", layers}};
}

Circuit circuit_from_json(const json& j) {
  const auto width = field<std::size_t>(j, "width");
  const BasisString initial(field<std::string>(j, "initial"));
  std::vector<Layer> layers;
  for (const auto& l : array_field(j, "layers")) {
    if (l.is_object() && l.contains("row")) {
      GateRow row;
      for (const auto& g : array_field(l, "row")) {
        if (!g.is_string()) throw ParseError("gate labels must be strings");
        row.gates.push_back(parse_gate(g.get<std::string>()));
      }
      layers.emplace_back(std::move(row));
    } else if (l.is_object() && l.contains("oracle")) {
      layers.emplace_back(OracleLayer{BooleanFunction::parse(field<std::string>(l, "oracle"))});
    } else {
      throw ParseError("layer must have a 'row' or an 'oracle' field");
    }
  }
  return Circuit(width, initial, std::move(layers));
}

json qtm_to_json(const Qtm& m) {
  const Qtm full = materialize(m);
  json rules = json::array();
  for (const auto& [key, rule] : full.rules()) {
    json branches = json::array();
    for (const auto& br : rule.branches) {
      json write = json::array();
      for (const auto& t : br.write.terms) {
        write.push_back(json{{"bits", t.bits.str()},
                             {"weight_re", t.weight.real()},
                             {"weight_im", t.weight.imag()}});
      }
      branches.push_back(json{{"write", write},
                              {"next", br.next},
                              {"move", to_string(br.move)},
                              {"amp_re", br.amplitude.real()},
                              {"amp_im", br.amplitude.imag()}});
    }
    rules.push_back(json{{"read", rule.read.str()}, {"state", rule.state}, {"branches", branches}});
  }
  return json{{"width", full.width()},
              {"states", full.states()},
              {"start", full.start()},
              {"finals", full.finals()},
              {"rules", rules}};
}

Qtm qtm_from_json(const json& j) {
  const auto width = field<std::size_t>(j, "width");
  const auto states = field<std::set<StateLabel>>(j, "states");
  const auto start = field<StateLabel>(j, "start");
  const auto finals = field<std::set<StateLabel>>(j, "finals");
  std::vector<DeltaRule> rules;
  for (const auto& r : array_field(j, "rules")) {
    DeltaRule rule{parse_symbol(field<std::string>(r, "read")), field<StateLabel>(r, "state"), {}};
    for (const auto& b : array_field(r, "branches")) {
      Branch br;
      for (const auto& w : array_field(b, "write")) {
        br.write.terms.push_back(WriteTerm{BasisString(field<std::string>(w, "bits")),
                                           {field<double>(w, "weight_re"),
                                            field<double>(w, "weight_im")}});
      }
      br.next = field<StateLabel>(b, "next");
      br.move = parse_move(field<std::string>(b, "move"));
      br.amplitude = {field<double>(b, "amp_re"), field<double>(b, "amp_im")};
      rule.branches.push_back(std::move(br));
    }
    rules.push_back(std::move(rule));
  }
  return Qtm(states, width, start, finals, rules);
}

json superposition_to_json(const Superposition& s) {
  json out = json::array();
  for (const auto& [config, amp] : s.entries()) {
    json tape = json::array();
    for (const auto& [pos, bits] : config.tape) {
      tape.push_back(json{{"pos", pos}, {"bits", bits.str()}});
    }
    out.push_back(json{{"state", config.state},
                       {"head", config.head},
                       {"tape", tape},
                       {"amp_re", amp.real()},
                       {"amp_im", amp.imag()}});
  }
  return out;
}

json trace_to_json(const std::vector<Superposition>& trace) {
  json out = json::array();
  for (const auto& s : trace) out.push_back(superposition_to_json(s));
  return out;
}

json report_to_json(const LockstepReport& r) {
  json failure = nullptr;
  if (r.first_failure) {
    failure = json{{"layer", r.first_failure->layer},
                   {"basis", r.first_failure->basis},
                   {"circuit_amp", amp_json(r.first_failure->circuit_amp)},
                   {"qtm_amp", amp_json(r.first_failure->qtm_amp)}};
  }
  return json{{"pass", r.pass}, {"max_deviation", r.max_deviation}, {"first_failure", failure}};
}

json normalization_to_json(const NormalizationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back(json{{"read", v.read.str()}, {"state", v.state}, {"sum", v.sum}});
  }
  return json{{"pass", r.pass}, {"sources_checked", r.sources_checked}, {"violations", violations}};
}

json induction_to_json(const InductionReport& r) {
  auto cases = [](const std::vector<InductionCase>& v) {
    json out = json::array();
    for (const auto& c : v) {
      json diff = nullptr;
      if (c.comparison.first_difference) {
        diff = json{{"source", c.comparison.first_difference->source},
                    {"detail", c.comparison.first_difference->detail}};
      }
      out.push_back(json{{"width", c.width},
                         {"function", c.function},
                         {"equal", c.comparison.equal},
                         {"first_difference", diff}});
    }
    return out;
  };
  return json{{"pass", r.pass}, {"base_cases", cases(r.base_cases)}, {"steps", cases(r.steps)}};
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace qtmb
