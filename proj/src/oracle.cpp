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

#include "qtmb/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "qtmb/errors.hpp"

namespace qtmb {

BooleanFunction::BooleanFunction(std::size_t arity, std::vector<bool> table)
    : arity_(arity), table_(std::move(table)) {
  if (arity == 0 || arity > 20) {
    throw ArityError("unsupported arity " + std::to_string(arity));
  }
  if (table_.size() != (std::size_t{1} << arity)) {
    throw DimensionError("truth table of arity " + std::to_string(arity) +
                         " needs " + std::to_string(std::size_t{1} << arity) +
                         " entries, got " + std::to_string(table_.size()));
  }
}

BooleanFunction BooleanFunction::parse(std::string_view table) {
  if (table.size() < 2 || !std::has_single_bit(table.size())) {
    throw ParseError("truth table '" + std::string(table) +
                     "' must have a power-of-two length of at least 2");
  }
  std::vector<bool> bits;
  bits.reserve(table.size());
  for (char c : table) {
    if (c != '0' && c != '1') {
      throw ParseError("truth table '" + std::string(table) +
                       "' contains a character other than 0/1");
    }
    bits.push_back(c == '1');
  }
  return BooleanFunction(std::countr_zero(table.size()), std::move(bits));
}

BooleanFunction BooleanFunction::constant(std::size_t arity, bool value) {
  if (arity == 0 || arity > 20) {
    throw ArityError("unsupported arity " + std::to_string(arity));
  }
  return BooleanFunction(arity, std::vector<bool>(std::size_t{1} << arity, value));
}

bool BooleanFunction::operator()(const BasisString& x) const {
  if (x.width() != arity_) {
    throw ArityError("input " + x.str() + " does not match arity " +
                     std::to_string(arity_));
  }
  return table_[x.index()];
}

std::size_t BooleanFunction::count_ones() const {
  return static_cast<std::size_t>(std::count(table_.begin(), table_.end(), true));
}

std::string BooleanFunction::to_string() const {
  std::string out;
  out.reserve(table_.size());
  for (bool b : table_) out.push_back(b ? '1' : '0');
  return out;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Constant:
      return "constant";
    case Classification::Balanced:
      return "balanced";
    case Classification::Neither:
      return "neither";
  }
  return "?";
}

Classification classify(const BooleanFunction& f) {
  const std::size_t ones = f.count_ones();
  if (ones == 0 || ones == f.size()) return Classification::Constant;
  if (2 * ones == f.size()) return Classification::Balanced;
  return Classification::Neither;
}

namespace {

constexpr std::size_t kMaxEnumerationArity = 4;

void check_enumeration_arity(std::size_t arity) {
  if (arity == 0) throw ArityError("arity must be at least 1");
  if (arity > kMaxEnumerationArity) {
    throw SizeError("arity " + std::to_string(arity) + " exceeds the limit of " +
                    std::to_string(kMaxEnumerationArity));
  }
}

// Table as a bitmask, bit i = f(i). Used for the adversary search.
std::vector<std::uint32_t> promise_masks(std::size_t arity, bool balanced_only) {
  const std::size_t n = std::size_t{1} << arity;
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    const auto ones = static_cast<std::size_t>(std::popcount(mask));
    if (2 * ones == n || (!balanced_only && (ones == 0 || ones == n))) {
      out.push_back(mask);
    }
  }
  return out;
}

// Calls fn(mask) for every subset of {0..n-1} with exactly k elements.
template <typename Fn>
bool all_subsets(std::size_t n, std::size_t k, Fn&& fn) {
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) == k && !fn(s)) return false;
  }
  return true;
}

}  // namespace

std::vector<BooleanFunction> enumerate_promise_functions(std::size_t arity) {
  check_enumeration_arity(arity);
  const std::size_t n = std::size_t{1} << arity;
  std::vector<BooleanFunction> out;
  for (std::uint32_t mask : promise_masks(arity, false)) {
    std::vector<bool> table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = (mask >> i) & 1U;
    out.emplace_back(arity, std::move(table));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.to_string() < b.to_string();
  });
  return out;
}

UnitaryMatrix oracle_unitary(const BooleanFunction& f, std::size_t* queries) {
  const std::size_t qubits = f.arity() + 1;
  std::vector<std::size_t> image(std::size_t{1} << qubits);
  for (std::size_t col = 0; col < image.size(); ++col) {
    const std::size_t x = col >> 1;
    const std::size_t y = col & 1U;
    if (queries != nullptr) ++*queries;
    image[col] = (x << 1) | (y ^ static_cast<std::size_t>(f(x)));
  }
  return permutation_matrix(qubits, image);
}

std::size_t classical_worst_case_queries(std::size_t arity) {
  check_enumeration_arity(arity);
  const std::size_t n = std::size_t{1} << arity;
  const std::size_t half = n / 2;
  const auto balanced = promise_masks(arity, true);

  // Adversary: answering every query with the same bit c keeps both the
  // constant-c function and some balanced function alive after `half` queries.
  const bool adversary_wins = all_subsets(n, half, [&](std::uint32_t s) {
    return std::any_of(balanced.begin(), balanced.end(), [&](std::uint32_t g) {
      return (g & s) == 0 || (g & s) == s;
    });
  });
  // One more query always separates: no balanced function is constant on
  // more than half the domain.
  const bool one_more_suffices = all_subsets(n, half + 1, [&](std::uint32_t s) {
    return std::none_of(balanced.begin(), balanced.end(), [&](std::uint32_t g) {
      return (g & s) == 0 || (g & s) == s;
    });
  });
  if (!adversary_wins || !one_more_suffices) {
    throw std::logic_error("adversary enumeration disagrees with 2^(m-1) + 1");
  }
  return half + 1;
}

}  // namespace qtmb
