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

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qtmb {

using Amplitude = std::complex<double>;

// Amplitudes with modulus below this are treated as exact zeros and dropped.
inline constexpr double kPruneTolerance = 1e-12;
// Default tolerance for comparing amplitudes and probabilities.
inline constexpr double kCompareTolerance = 1e-9;

// Componentwise comparison: |Δre| <= tol and |Δim| <= tol. No phase quotienting.
bool approx_equal(Amplitude a, Amplitude b, double tol = kCompareTolerance);

/// A computational basis string. Character 0 is the top wire (x1) and is the
/// most significant bit of index().
class BasisString {
 public:
  explicit BasisString(std::string_view bits);

  static BasisString from_index(std::uint64_t index, std::size_t width);
  static BasisString zeros(std::size_t width);

  std::size_t width() const { return bits_.size(); }
  std::uint64_t index() const;
  bool bit(std::size_t i) const { return bits_[i] == '1'; }
  const std::string& str() const { return bits_; }

  BasisString prefix(std::size_t k) const;
  BasisString suffix_from(std::size_t k) const;
  BasisString with_bit(std::size_t i, bool value) const;
  BasisString operator+(const BasisString& rhs) const;

  // Lexicographic order equals numeric order for equal widths.
  auto operator<=>(const BasisString&) const = default;
  bool operator==(const BasisString&) const = default;

 private:
  std::string bits_;
};

/// Sparse state over basis strings of one width. Entries below the prune
/// tolerance are never stored.
class StateVector {
 public:
  using Map = std::map<BasisString, Amplitude>;

  explicit StateVector(std::size_t width);
  StateVector(std::size_t width, Map amplitudes);

  static StateVector basis(const BasisString& b);

  std::size_t width() const { return width_; }
  const Map& amplitudes() const { return amps_; }
  std::size_t support_size() const { return amps_.size(); }
  Amplitude amplitude(const BasisString& b) const;
  double norm_squared() const;

 private:
  std::size_t width_;
  Map amps_;
};

// Largest componentwise deviation between two states over the union of their
// supports. Width mismatch throws DimensionError.
double max_deviation(const StateVector& a, const StateVector& b);

/// Dense 2^m x 2^m unitary, row-major. Entry (row, col) maps input basis `col`
/// to output basis `row`.
class UnitaryMatrix {
 public:
  // Throws DimensionError on a size mismatch and NotUnitaryError when
  // max|U†U - I| exceeds kCompareTolerance.
  UnitaryMatrix(std::size_t qubits, std::vector<Amplitude> entries);

  std::size_t qubits() const { return qubits_; }
  std::size_t dim() const { return dim_; }
  Amplitude operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  const std::vector<Amplitude>& entries() const { return entries_; }

  // max over entries of |(U†U - I)_ij|.
  double unitarity_defect() const;

  friend UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);
  friend UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b);
  friend UnitaryMatrix permutation_matrix(std::size_t qubits,
                                          const std::vector<std::size_t>& image);

 private:
  struct Trusted {};
  // Closure of unitaries under products; skips the O(dim^3) check.
  UnitaryMatrix(Trusted, std::size_t qubits, std::vector<Amplitude> entries);

  std::size_t qubits_;
  std::size_t dim_;
  std::vector<Amplitude> entries_;
};

UnitaryMatrix hadamard();
UnitaryMatrix pauli_x();
UnitaryMatrix identity(std::size_t qubits = 1);

// Kronecker product; `a` acts on the more significant (left) bits.
UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);
// Matrix product a·b (b applied first).
UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b);
// Permutation unitary sending basis column c to row image[c]. Throws
// DimensionError if `image` is not a bijection on 2^qubits points.
UnitaryMatrix permutation_matrix(std::size_t qubits,
                                 const std::vector<std::size_t>& image);
// H ⊗ ... ⊗ H on m qubits.
UnitaryMatrix hadamard_power(std::size_t m);

// u·s. Throws DimensionError when u.dim() != 2^s.width().
StateVector apply(const UnitaryMatrix& u, const StateVector& s);

// Largest componentwise entry deviation; DimensionError on size mismatch.
double max_entry_deviation(const UnitaryMatrix& a, const UnitaryMatrix& b);

}  // namespace qtmb
