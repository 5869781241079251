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

#include "qtmb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qtmb/errors.hpp"

namespace qtmb {

bool approx_equal(Amplitude a, Amplitude b, double tol) {
  return std::abs(a.real() - b.real()) <= tol &&
         std::abs(a.imag() - b.imag()) <= tol;
}

BasisString::BasisString(std::string_view bits) : bits_(bits) {
  if (bits_.empty()) {
    throw DimensionError("basis string must have at least one bit");
  }
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw ParseError("basis string '" + bits_ + "' contains a non-bit character");
    }
  }
}

BasisString BasisString::from_index(std::uint64_t index, std::size_t width) {
  if (width == 0 || width > 63 || (index >> width) != 0) {
    throw DimensionError("index " + std::to_string(index) +
                         " does not fit in width " + std::to_string(width));
  }
  std::string bits(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((index >> (width - 1 - i)) & 1U) bits[i] = '1';
  }
  return BasisString(bits);
}

BasisString BasisString::zeros(std::size_t width) {
  return BasisString(std::string(width, '0'));
}

std::uint64_t BasisString::index() const {
  std::uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  return v;
}

BasisString BasisString::prefix(std::size_t k) const {
  if (k == 0 || k > bits_.size()) {
    throw RangeError("prefix length " + std::to_string(k) + " out of range");
  }
  return BasisString(std::string_view(bits_).substr(0, k));
}

BasisString BasisString::suffix_from(std::size_t k) const {
  if (k >= bits_.size()) {
    throw RangeError("suffix start " + std::to_string(k) + " out of range");
  }
  return BasisString(std::string_view(bits_).substr(k));
}

BasisString BasisString::with_bit(std::size_t i, bool value) const {
  BasisString out = *this;
  out.bits_.at(i) = value ? '1' : '0';
  return out;
}

BasisString BasisString::operator+(const BasisString& rhs) const {
  return BasisString(bits_ + rhs.bits_);
}

StateVector::StateVector(std::size_t width) : width_(width) {
  if (width == 0) throw DimensionError("state width must be at least 1");
}

StateVector::StateVector(std::size_t width, Map amplitudes)
    : StateVector(width) {
  for (auto& [b, a] : amplitudes) {
    if (b.width() != width) {
      throw DimensionError("basis string " + b.str() +
                           " does not match state width " + std::to_string(width));
    }
    if (std::abs(a) >= kPruneTolerance) amps_.emplace(b, a);
  }
}

StateVector StateVector::basis(const BasisString& b) {
  return StateVector(b.width(), {{b, Amplitude{1.0, 0.0}}});
}

Amplitude StateVector::amplitude(const BasisString& b) const {
  auto it = amps_.find(b);
  return it == amps_.end() ? Amplitude{} : it->second;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& [b, a] : amps_) total += std::norm(a);
  return total;
}

double max_deviation(const StateVector& a, const StateVector& b) {
  if (a.width() != b.width()) {
    throw DimensionError("cannot compare states of width " +
                         std::to_string(a.width()) + " and " +
                         std::to_string(b.width()));
  }
  auto dev = [](Amplitude x, Amplitude y) {
    return std::max(std::abs(x.real() - y.real()), std::abs(x.imag() - y.imag()));
  };
  double worst = 0.0;
  for (const auto& [basis, amp] : a.amplitudes()) {
    worst = std::max(worst, dev(amp, b.amplitude(basis)));
  }
  for (const auto& [basis, amp] : b.amplitudes()) {
    worst = std::max(worst, dev(a.amplitude(basis), amp));
  }
  return worst;
}

namespace {

std::size_t checked_dim(std::size_t qubits, std::size_t entries) {
  if (qubits == 0 || qubits > 14) {
    throw DimensionError("unsupported qubit count " + std::to_string(qubits));
  }
  const std::size_t dim = std::size_t{1} << qubits;
  if (entries != dim * dim) {
    throw DimensionError("expected " + std::to_string(dim * dim) +
                         " entries for " + std::to_string(qubits) +
                         " qubits, got " + std::to_string(entries));
  }
  return dim;
}

}  // namespace

UnitaryMatrix::UnitaryMatrix(std::size_t qubits, std::vector<Amplitude> entries)
    : qubits_(qubits),
      dim_(checked_dim(qubits, entries.size())),
      entries_(std::move(entries)) {
  const double defect = unitarity_defect();
  if (defect > kCompareTolerance) {
    throw NotUnitaryError("matrix is not unitary: max|U†U - I| = " +
                          std::to_string(defect));
  }
}

UnitaryMatrix::UnitaryMatrix(Trusted, std::size_t qubits,
                             std::vector<Amplitude> entries)
    : qubits_(qubits),
      dim_(checked_dim(qubits, entries.size())),
      entries_(std::move(entries)) {}

double UnitaryMatrix::unitarity_defect() const {
  // Column i and j inner products; zero entries skipped since most in-scope
  // operators are permutations or tensor products with many zeros.
  std::vector<std::vector<std::pair<std::size_t, Amplitude>>> columns(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const Amplitude v = entries_[r * dim_ + c];
      if (v != Amplitude{}) columns[c].emplace_back(r, v);
    }
  }
  std::vector<Amplitude> dense(dim_);
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    std::fill(dense.begin(), dense.end(), Amplitude{});
    for (const auto& [r, v] : columns[i]) dense[r] = v;
    for (std::size_t j = 0; j < dim_; ++j) {
      Amplitude dot{};
      for (const auto& [r, v] : columns[j]) dot += std::conj(dense[r]) * v;
      const Amplitude expected = i == j ? Amplitude{1.0} : Amplitude{};
      worst = std::max(worst, std::abs(dot - expected));
    }
  }
  return worst;
}

UnitaryMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return UnitaryMatrix(1, {s, s, s, -s});
}

UnitaryMatrix pauli_x() { return UnitaryMatrix(1, {0.0, 1.0, 1.0, 0.0}); }

UnitaryMatrix identity(std::size_t qubits) {
  std::vector<std::size_t> image(std::size_t{1} << qubits);
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = i;
  return permutation_matrix(qubits, image);
}

UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  const std::size_t qubits = a.qubits_ + b.qubits_;
  const std::size_t dim = a.dim_ * b.dim_;
  std::vector<Amplitude> out(dim * dim);
  for (std::size_t ra = 0; ra < a.dim_; ++ra) {
    for (std::size_t ca = 0; ca < a.dim_; ++ca) {
      const Amplitude va = a(ra, ca);
      if (va == Amplitude{}) continue;
      for (std::size_t rb = 0; rb < b.dim_; ++rb) {
        for (std::size_t cb = 0; cb < b.dim_; ++cb) {
          out[(ra * b.dim_ + rb) * dim + (ca * b.dim_ + cb)] = va * b(rb, cb);
        }
      }
    }
  }
  return UnitaryMatrix(UnitaryMatrix::Trusted{}, qubits, std::move(out));
}

UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim_ != b.dim_) {
    throw DimensionError("cannot multiply " + std::to_string(a.dim_) + " and " +
                         std::to_string(b.dim_) + " dimensional operators");
  }
  const std::size_t n = a.dim_;
  std::vector<Amplitude> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Amplitude v = a(i, k);
      if (v == Amplitude{}) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += v * b(k, j);
    }
  }
  return UnitaryMatrix(UnitaryMatrix::Trusted{}, a.qubits_, std::move(out));
}

UnitaryMatrix permutation_matrix(std::size_t qubits,
                                 const std::vector<std::size_t>& image) {
  const std::size_t dim = std::size_t{1} << qubits;
  if (image.size() != dim) {
    throw DimensionError("permutation has " + std::to_string(image.size()) +
                         " points, expected " + std::to_string(dim));
  }
  std::vector<bool> hit(dim, false);
  std::vector<Amplitude> out(dim * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const std::size_t r = image[c];
    if (r >= dim || hit[r]) {
      throw DimensionError("permutation image is not a bijection");
    }
    hit[r] = true;
    out[r * dim + c] = 1.0;
  }
  return UnitaryMatrix(UnitaryMatrix::Trusted{}, qubits, std::move(out));
}

UnitaryMatrix hadamard_power(std::size_t m) {
  if (m == 0) throw DimensionError("hadamard_power needs at least one qubit");
  UnitaryMatrix out = hadamard();
  for (std::size_t i = 1; i < m; ++i) out = tensor(out, hadamard());
  return out;
}

StateVector apply(const UnitaryMatrix& u, const StateVector& s) {
  if (s.width() > 63 || u.dim() != (std::size_t{1} << s.width())) {
    throw DimensionError("operator of dimension " + std::to_string(u.dim()) +
                         " applied to a width-" + std::to_string(s.width()) +
                         " state");
  }
  std::vector<Amplitude> out(u.dim());
  for (const auto& [basis, amp] : s.amplitudes()) {
    const std::size_t col = basis.index();
    for (std::size_t row = 0; row < u.dim(); ++row) out[row] += u(row, col) * amp;
  }
  StateVector::Map map;
  for (std::size_t row = 0; row < out.size(); ++row) {
    if (std::abs(out[row]) >= kPruneTolerance) {
      map.emplace(BasisString::from_index(row, s.width()), out[row]);
    }
  }
  return StateVector(s.width(), std::move(map));
}

double max_entry_deviation(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("cannot compare operators of different dimension");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const Amplitude d = a.entries()[i] - b.entries()[i];
    worst = std::max({worst, std::abs(d.real()), std::abs(d.imag())});
  }
  return worst;
}

}  // namespace qtmb
