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

#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qtmb/circuit.hpp"
#include "qtmb/equivalence.hpp"
#include "qtmb/errors.hpp"
#include "qtmb/io.hpp"
#include "qtmb/oracle.hpp"
#include "qtmb/qtm.hpp"
#include "qtmb/translator.hpp"

namespace qtmb::cli {

namespace {

constexpr std::size_t kMaxRunArity = 8;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string format_probability(double p) {
  std::ostringstream s;
  s << std::setprecision(12) << (std::abs(p) < 1e-15 ? 0.0 : p);
  return s.str();
}

std::string distribution_str(const std::map<BasisString, double>& d) {
  std::string out;
  for (const auto& [b, p] : d) {
    if (!out.empty()) out += ", ";
    out += "P(" + b.str() + ") = " + format_probability(p);
  }
  return out.empty() ? "(empty)" : out;
}

BasisString most_likely(const std::map<BasisString, double>& d) {
  auto best = d.begin();
  for (auto it = d.begin(); it != d.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

// Shared by `deutsch` and `dj`.
int report_run(const BooleanFunction& f, bool trace, double tol, std::ostream& out,
               std::ostream& err) {
  const FunctionVerdict v = verify_function(f, tol);
  std::ostream& text = trace ? err : out;
  const bool agree = v.distribution_deviation <= tol && v.handwritten.pass && v.translated.pass;

  text << "function:  " << v.function << " (" << to_string(v.classification) << ")\n";
  text << "circuit:   " << distribution_str(v.circuit_distribution) << '\n';
  text << "qtm:       " << distribution_str(v.qtm_distribution) << '\n';
  text << "lockstep:  hand-written max deviation "
       << format_probability(v.handwritten.max_deviation) << ", translated "
       << format_probability(v.translated.max_deviation) << '\n';

  if (v.classification == Classification::Neither) {
    text << "promise violated: neither constant nor balanced; "
         << (agree ? "models agree" : "MODELS DISAGREE") << '\n';
  } else {
    const std::string measured = most_likely(v.circuit_distribution).str();
    text << to_string(v.classification) << ", "
         << (f.arity() == 1 ? "measured " : "top register ") << measured << ", "
         << (agree ? "models agree" : "MODELS DISAGREE")
         << (v.promise_ok ? "" : ", ANSWER CONTRADICTS PROMISE") << '\n';
  }

  if (trace) {
    const Qtm machine = f.arity() == 1 ? build_deutsch_qtm(f) : expand_rules(build_dj_qtm(f));
    out << trace_to_json(run(machine).trace).dump(2) << '\n';
  }
  if (v.classification == Classification::Neither) {
    return agree ? kSuccess : kVerificationFailure;
  }
  return v.pass ? kSuccess : kVerificationFailure;
}

BooleanFunction random_function(std::size_t arity, const std::string& kind, unsigned seed) {
  if (arity < 1 || arity > kMaxRunArity) {
    throw UsageError("--random arity must be between 1 and " + std::to_string(kMaxRunArity));
  }
  std::mt19937 rng(seed);
  const std::size_t size = std::size_t{1} << arity;
  if (kind == "constant") {
    return BooleanFunction::constant(arity, std::uniform_int_distribution<int>(0, 1)(rng) == 1);
  }
  std::vector<bool> table(size, false);
  std::fill(table.begin() + static_cast<long>(size / 2), table.end(), true);
  std::shuffle(table.begin(), table.end(), rng);
  return BooleanFunction(arity, std::move(table));
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

}  // namespace

double comparison_tolerance() {
  const char* env = std::getenv("QTMB_TOLERANCE");
  if (env == nullptr || *env == '\0') return kCompareTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw ParseError(std::string("QTMB_TOLERANCE='") + env + "' is not a positive number");
  }
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circuit-to-quantum-Turing-machine translator and dual simulator", "qtmb"};
  app.require_subcommand(1);

  std::string table;
  bool trace = false;

  auto* deutsch = app.add_subcommand("deutsch", "Run the Deutsch circuit and machine for f");
  deutsch->add_option("--f", table, "Truth table of f, e.g. 01")->required();
  deutsch->add_flag("--trace", trace, "Print the machine's superposition trace as JSON");

  std::size_t random_arity = 0;
  std::string kind = "balanced";
  unsigned seed = 0;
  auto* dj = app.add_subcommand("dj", "Run the Deutsch-Jozsa circuit and machine for f");
  auto* dj_f = dj->add_option("--f", table, "Truth table of f, e.g. 0110");
  auto* dj_random = dj->add_option("--random", random_arity, "Generate a random f of this arity");
  dj->add_option("--kind", kind, "Kind of random f")
      ->check(CLI::IsMember({"balanced", "constant"}));
  dj->add_option("--seed", seed, "Seed for --random");
  dj->add_flag("--trace", trace, "Print the machine's superposition trace as JSON");
  dj_f->excludes(dj_random);

  std::string circuit_file;
  std::string translate_deutsch;
  std::string translate_dj;
  std::string emit = "json";
  std::string out_path;
  auto* translate_cmd = app.add_subcommand("translate", "Compile a circuit into machine rules");
  auto* t_file = translate_cmd->add_option("circuit", circuit_file, "Circuit JSON file");
  auto* t_deutsch = translate_cmd->add_option("--deutsch", translate_deutsch,
                                              "Translate the Deutsch circuit for this f");
  auto* t_dj = translate_cmd->add_option("--dj", translate_dj,
                                         "Translate the Deutsch-Jozsa circuit for this f");
  translate_cmd->add_option("--emit", emit, "Output format")
      ->check(CLI::IsMember({"json", "paper-text", "paper-compact"}));
  translate_cmd->add_option("--out", out_path, "Output file (default stdout)");
  t_file->excludes(t_deutsch, t_dj);
  t_deutsch->excludes(t_dj);

  std::string suite;
  std::size_t max_arity = 0;
  std::size_t induction = 0;
  bool json_output = false;
  auto* verify = app.add_subcommand("verify", "Run the exhaustive verification suites");
  auto* v_suite = verify->add_option("--suite", suite, "deutsch or dj")
                      ->check(CLI::IsMember({"deutsch", "dj"}));
  verify->add_option("--max-arity", max_arity, "Largest arity for the dj suite (<= 3)");
  auto* v_induction = verify->add_option("--induction", induction,
                                         "Check the width induction up to this width (<= 6)");
  verify->add_flag("--json", json_output, "Print reports as JSON");
  v_suite->excludes(v_induction);

  std::size_t enum_arity = 0;
  auto* enumerate = app.add_subcommand("enumerate", "List constant and balanced functions");
  enumerate->add_option("--arity", enum_arity, "Arity (<= 4)")->required();

  std::string rules_file;
  auto* check = app.add_subcommand("check", "Lockstep-check a circuit against a machine");
  check->add_option("--circuit", circuit_file, "Circuit JSON file")->required();
  check->add_option("--rules", rules_file, "Rule-file JSON (default: translate the circuit)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    const double tol = comparison_tolerance();

    if (deutsch->parsed()) {
      const BooleanFunction f = BooleanFunction::parse(table);
      if (f.arity() != 1) throw UsageError("deutsch needs a 2-entry truth table");
      return report_run(f, trace, tol, out, err);
    }

    if (dj->parsed()) {
      if (dj_f->count() == 0 && dj_random->count() == 0) {
        throw UsageError("dj needs --f or --random");
      }
      const BooleanFunction f = dj_random->count() != 0
                                    ? random_function(random_arity, kind, seed)
                                    : BooleanFunction::parse(table);
      if (f.arity() > kMaxRunArity) {
        throw UsageError("dj is limited to arity " + std::to_string(kMaxRunArity));
      }
      return report_run(f, trace, tol, out, err);
    }

    if (translate_cmd->parsed()) {
      std::optional<Circuit> circuit;
      if (t_deutsch->count() != 0) {
        circuit = build_deutsch(BooleanFunction::parse(translate_deutsch));
      } else if (t_dj->count() != 0) {
        circuit = build_dj(BooleanFunction::parse(translate_dj));
      } else if (t_file->count() != 0) {
        circuit = circuit_from_json(parse_json_file(circuit_file));
      } else {
        throw UsageError("translate needs a circuit file, --deutsch or --dj");
      }
      const Qtm m = translate(*circuit);
      std::string text;
      if (emit == "json") {
        text = qtm_to_json(m).dump(2) + "\n";
      } else if (emit == "paper-text") {
        text = to_delta_text(m);
      } else {
        text = to_delta_text(compact_rules(m));
      }
      write_output(text, out_path, out);
      return kSuccess;
    }

    if (verify->parsed()) {
      if (v_induction->count() != 0) {
        if (induction < 2 || induction > 6) {
          throw UsageError("--induction must be between 2 and 6");
        }
        const InductionReport r = verify_induction(induction);
        if (json_output) {
          out << induction_to_json(r).dump(2) << '\n';
        } else {
          auto count = [](const std::vector<InductionCase>& v, std::size_t width) {
            std::size_t total = 0;
            std::size_t equal = 0;
            for (const auto& c : v) {
              if (c.width != width) continue;
              ++total;
              equal += c.comparison.equal ? 1 : 0;
            }
            return std::to_string(equal) + "/" + std::to_string(total);
          };
          out << "base case width 2 (Deutsch-Jozsa rules vs Deutsch rules): "
              << count(r.base_cases, 2) << " equal\n";
          for (std::size_t n = 2; n < induction; ++n) {
            out << "extension width " << n << " -> " << n + 1 << ": " << count(r.steps, n + 1)
                << " equal\n";
          }
          for (const auto* group : {&r.base_cases, &r.steps}) {
            for (const auto& c : *group) {
              if (c.comparison.equal) continue;
              out << "  width " << c.width << " f=" << c.function << " differs at "
                  << c.comparison.first_difference->source << ": "
                  << c.comparison.first_difference->detail << '\n';
            }
          }
          out << (r.pass ? "induction: pass" : "induction: FAIL") << '\n';
        }
        return r.pass ? kSuccess : kVerificationFailure;
      }
      if (v_suite->count() == 0) throw UsageError("verify needs --suite or --induction");
      std::size_t lo = 1;
      std::size_t hi = 1;
      if (suite == "dj") {
        hi = max_arity == 0 ? 3 : max_arity;
        if (hi > 3) throw UsageError("--max-arity must be at most 3");
        lo = std::min<std::size_t>(2, hi);
      } else if (max_arity > 1) {
        throw UsageError("the deutsch suite has arity 1 only");
      }
      const SuiteReport r = verify_suite(lo, hi, tol);
      if (json_output) {
        nlohmann::json verdicts = nlohmann::json::array();
        for (const auto& v : r.verdicts) {
          verdicts.push_back({{"function", v.function},
                              {"classification", to_string(v.classification)},
                              {"pass", v.pass},
                              {"handwritten", report_to_json(v.handwritten)},
                              {"translated", report_to_json(v.translated)}});
        }
        out << nlohmann::json{{"suite", suite},
                              {"passed", r.passed},
                              {"total", r.total},
                              {"max_deviation", r.max_deviation},
                              {"verdicts", verdicts}}
                   .dump(2)
            << '\n';
      } else {
        for (const auto& v : r.verdicts) {
          if (!v.pass) out << "  FAIL f=" << v.function << '\n';
        }
        out << suite << " suite: " << r.passed << "/" << r.total << " pass, max deviation "
            << format_probability(r.max_deviation) << '\n';
      }
      return r.pass() ? kSuccess : kVerificationFailure;
    }

    if (enumerate->parsed()) {
      for (const auto& f : enumerate_promise_functions(enum_arity)) {
        out << f.to_string() << ' ' << to_string(classify(f)) << '\n';
      }
      return kSuccess;
    }

    if (check->parsed()) {
      const Circuit c = circuit_from_json(parse_json_file(circuit_file));
      const Qtm m = rules_file.empty() ? translate(c) : qtm_from_json(parse_json_file(rules_file));
      LockstepReport r;
      try {
        r = lockstep_check(c, m, tol);
      } catch (const StuckError& e) {
        err << "machine stuck: " << e.what() << '\n';
        return kVerificationFailure;
      }
      out << report_to_json(r).dump(2) << '\n';
      return r.pass ? kSuccess : kVerificationFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qtmb::cli
