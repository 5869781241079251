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

#include <string>
#include <vector>

#include "json.hpp"
#include "qtmb/circuit.hpp"
#include "qtmb/equivalence.hpp"
#include "qtmb/qtm.hpp"
#include "qtmb/translator.hpp"

namespace qtmb {

// All loaders throw ParseError on malformed documents; domain validation
// errors from the constructors propagate unchanged.

// {"width", "initial", "layers": [{"row": ["H", "I"]}, {"oracle": "0110"}]}
nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

// {"width", "states", "start", "finals", "rules": [{"read", "state",
//   "branches": [{"write": [{"bits", "weight_re", "weight_im"}], "next",
//   "move", "amp_re", "amp_im"}]}]}
// The blank symbol is written "□". Pattern rules are materialized.
nlohmann::json qtm_to_json(const Qtm& m);
Qtm qtm_from_json(const nlohmann::json& j);

// [{"state", "head", "tape": [{"pos", "bits"}], "amp_re", "amp_im"}, ...]
// in configuration order (state label, then tape).
nlohmann::json superposition_to_json(const Superposition& s);
nlohmann::json trace_to_json(const std::vector<Superposition>& trace);

// {"pass", "max_deviation", "first_failure": {"layer", "basis",
//   "circuit_amp", "qtm_amp"} | null}
nlohmann::json report_to_json(const LockstepReport& r);
nlohmann::json normalization_to_json(const NormalizationReport& r);
nlohmann::json induction_to_json(const InductionReport& r);

nlohmann::json parse_json_file(const std::string& path);

}  // namespace qtmb
