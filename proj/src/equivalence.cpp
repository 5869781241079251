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

#include "qtmb/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtmb/errors.hpp"
#include "qtmb/translator.hpp"

namespace qtmb {

namespace {

double component_deviation(Amplitude a, Amplitude b) {
  return std::max(std::abs(a.real() - b.real()), std::abs(a.imag() - b.imag()));
}

}  // namespace

LockstepReport lockstep_check(const Circuit& c, const Qtm& m, double tol) {
  const std::size_t depth = c.layers().size();
  if (m.width() != c.width()) {
    throw StructureError("machine width " + std::to_string(m.width()) +
                         " does not match circuit width " + std::to_string(c.width()));
  }
  if (m.states().size() != depth + 1) {
    throw StructureError("machine has " + std::to_string(m.states().size()) +
                         " states for a " + std::to_string(depth) + "-layer circuit");
  }
  for (std::size_t k = 0; k <= depth; ++k) {
    if (m.states().count(stage_label(k)) == 0) {
      throw StructureError("machine has no state " + stage_label(k));
    }
  }

  const auto states = simulate(c);
  std::vector<Superposition> trace{initial_superposition(m)};
  for (std::size_t i = 0; i <= depth; ++i) trace.push_back(step(m, trace.back()));

  LockstepReport report;
  for (std::size_t k = 0; k <= depth; ++k) {
    // key -> (circuit amplitude, machine amplitude)
    std::map<std::string, std::pair<Amplitude, Amplitude>> compared;
    for (const auto& [b, amp] : states[k].amplitudes()) compared[b.str()].first = amp;
    for (const auto& [config, amp] : trace[k + 1].entries()) {
      const bool aligned = config.state == stage_label(k) && config.head == 0 &&
                           config.tape.size() == 1 && config.tape.count(0) == 1;
      compared[aligned ? config.tape.at(0).str() : config.str()].second += amp;
    }
    for (const auto& [key, amps] : compared) {
      const double dev = component_deviation(amps.first, amps.second);
      report.max_deviation = std::max(report.max_deviation, dev);
      if (dev > tol && !report.first_failure) {
        report.pass = false;
        report.first_failure = LockstepFailure{k, key, amps.first, amps.second};
      }
    }
  }
  return report;
}

ClosedFormReport verify_closed_forms(const BooleanFunction& f) {
  if (f.arity() != 1) {
    throw ArityError("closed forms apply to arity 1 only, got " + std::to_string(f.arity()));
  }
  const auto states = simulate(build_deutsch(f));
  const StateVector& phi2 = states[2];
  const StateVector& phi3 = states[3];
  const double half = 0.5;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto sgn = [](bool b) { return b ? -1.0 : 1.0; };

  ClosedFormReport r;

  StateVector::Map eq2;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      eq2[BasisString::from_index(2 * x + y, 2)] =
          sgn(f(static_cast<std::size_t>(x))) * sgn(y == 1) * half;
    }
  }
  r.phi2_deviation = max_deviation(phi2, StateVector(2, eq2));

  // (|0> + s|1>)(|0> - |1>)/2 scaled by `sign`.
  auto product_form = [&](double top_sign, double sign) {
    StateVector::Map m;
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        m[BasisString::from_index(2 * x + y, 2)] =
            sign * (x == 1 ? top_sign : 1.0) * sgn(y == 1) * half;
      }
    }
    return StateVector(2, m);
  };
  const Classification cls = classify(f);
  const double predicted_top = cls == Classification::Constant ? 1.0 : -1.0;
  const double predicted_sign = sgn(f(std::size_t{0}));
  for (double top : {1.0, -1.0}) {
    for (double sign : {1.0, -1.0}) {
      if (max_deviation(phi2, product_form(top, sign)) <= kClosedFormTolerance) {
        r.phi2_sign = static_cast<int>(sign);
        r.case_split_ok = top == predicted_top && sign == predicted_sign;
      }
    }
  }

  const std::size_t c = cls == Classification::Constant ? 0 : 1;
  r.phi3_deviation = std::numeric_limits<double>::infinity();
  for (double sign : {1.0, -1.0}) {
    const StateVector expected(
        2, {{BasisString::from_index(2 * c, 2), sign * inv_sqrt2},
            {BasisString::from_index(2 * c + 1, 2), -sign * inv_sqrt2}});
    const double dev = max_deviation(phi3, expected);
    if (dev < r.phi3_deviation) {
      r.phi3_deviation = dev;
      r.phi3_global_sign = static_cast<int>(sign);
    }
  }

  r.pass = cls != Classification::Neither && r.phi2_deviation <= kClosedFormTolerance &&
           r.case_split_ok && r.phi3_deviation <= kClosedFormTolerance;
  return r;
}

bool verify_uf_involution(const BooleanFunction& f) {
  if (f.arity() > 4) {
    throw SizeError("involution check is limited to arity 4, got " + std::to_string(f.arity()));
  }
  const UnitaryMatrix u = oracle_unitary(f);
  const UnitaryMatrix square = multiply(u, u);
  for (std::size_t r = 0; r < square.dim(); ++r) {
    for (std::size_t c = 0; c < square.dim(); ++c) {
      if (square(r, c) != (r == c ? Amplitude{1.0} : Amplitude{})) return false;
    }
  }
  return true;
}

FunctionVerdict verify_function(const BooleanFunction& f, double tol) {
  FunctionVerdict v;
  v.function = f.to_string();
  v.classification = classify(f);

  const Circuit circuit = build_dj(f);
  const Qtm handwritten =
      f.arity() == 1 ? build_deutsch_qtm(f) : expand_rules(build_dj_qtm(f));
  const Qtm translated = translate(circuit);

  v.circuit_distribution = measure_prefix(simulate(circuit).back(), f.arity());
  v.qtm_distribution = measure_tape_prefix(run(handwritten).final_superposition(), f.arity());
  std::map<BasisString, std::pair<double, double>> joint;
  for (const auto& [b, p] : v.circuit_distribution) joint[b].first = p;
  for (const auto& [b, p] : v.qtm_distribution) joint[b].second = p;
  for (const auto& [b, ps] : joint) {
    v.distribution_deviation = std::max(v.distribution_deviation, std::abs(ps.first - ps.second));
  }

  v.handwritten = lockstep_check(circuit, handwritten, tol);
  v.translated = lockstep_check(circuit, translated, tol);

  const BasisString zeros = BasisString::zeros(f.arity());
  auto p_zero = [&](const std::map<BasisString, double>& d) {
    auto it = d.find(zeros);
    return it == d.end() ? 0.0 : it->second;
  };
  if (v.classification != Classification::Neither) {
    const double expected = v.classification == Classification::Constant ? 1.0 : 0.0;
    v.promise_ok = std::abs(p_zero(v.circuit_distribution) - expected) <= tol &&
                   std::abs(p_zero(v.qtm_distribution) - expected) <= tol;
  }
  v.pass = v.promise_ok && v.distribution_deviation <= tol && v.handwritten.pass &&
           v.translated.pass;
  return v;
}

SuiteReport verify_suite(std::size_t min_arity, std::size_t max_arity, double tol) {
  if (min_arity < 1 || max_arity < min_arity) {
    throw RangeError("bad arity range " + std::to_string(min_arity) + ".." +
                     std::to_string(max_arity));
  }
  if (max_arity > 3) {
    throw SizeError("verification suites are limited to arity 3, got " +
                    std::to_string(max_arity));
  }
  SuiteReport report;
  for (std::size_t arity = min_arity; arity <= max_arity; ++arity) {
    for (const auto& f : enumerate_promise_functions(arity)) {
      FunctionVerdict v = verify_function(f, tol);
      ++report.total;
      if (v.pass) ++report.passed;
      report.max_deviation = std::max({report.max_deviation, v.handwritten.max_deviation,
                                       v.translated.max_deviation, v.distribution_deviation});
      report.verdicts.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace qtmb
