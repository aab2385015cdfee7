// Copyright 2026 The BFR Codes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bfr/errors.hpp"

namespace bfr {

/// Raw element of GF(2^w), w <= 16.
using Symbol = std::uint16_t;

/// GF(2^w) defined by a primitive polynomial, with log/antilog tables.
///
/// Instances are immutable after construction and shared through
/// std::shared_ptr; every member function is safe to call concurrently.
class GaloisField {
 public:
  static constexpr unsigned kMinBits = 2;
  static constexpr unsigned kMaxBits = 16;

  /// Creates GF(2^w). A zero polynomial selects the default primitive
  /// polynomial for w (0x11d for w = 8). Throws ParameterError if w is out
  /// of range or the polynomial is not primitive of degree w.
  static std::shared_ptr<const GaloisField> Create(unsigned w,
                                                   std::uint32_t poly = 0);

  /// The default byte field GF(2^8) / 0x11d.
  static std::shared_ptr<const GaloisField> Default();

  static std::uint32_t DefaultPolynomial(unsigned w);

  unsigned bits() const { return bits_; }
  std::uint32_t polynomial() const { return poly_; }
  /// Number of field elements, 2^w.
  std::uint32_t size() const { return 1u << bits_; }
  /// Multiplicative group order, 2^w - 1.
  std::uint32_t order() const { return size() - 1; }

  bool SameField(const GaloisField& other) const {
    return bits_ == other.bits_ && poly_ == other.poly_;
  }

  Symbol Add(Symbol a, Symbol b) const { return a ^ b; }
  Symbol Sub(Symbol a, Symbol b) const { return a ^ b; }

  Symbol Mul(Symbol a, Symbol b) const {
    if (!mul_table_.empty()) return mul_table_[(std::size_t{a} << bits_) | b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  /// Throws LinearAlgebraError on zero.
  Symbol Inv(Symbol a) const;
  Symbol Div(Symbol a, Symbol b) const { return Mul(a, Inv(b)); }
  Symbol Pow(Symbol a, std::uint64_t e) const;

  /// The primitive element raised to i (i taken modulo the group order).
  Symbol Exp(std::uint64_t i) const { return exp_[i % order()]; }
  /// Discrete log to the primitive element; a must be nonzero.
  std::uint32_t Log(Symbol a) const;

  bool Contains(std::uint32_t v) const { return v < size(); }

  /// y += c * x, elementwise.
  void Axpy(Symbol c, std::span<const Symbol> x, std::span<Symbol> y) const;
  /// x *= c, elementwise.
  void Scale(Symbol c, std::span<Symbol> x) const;

 private:
  GaloisField(unsigned w, std::uint32_t poly);

  unsigned bits_;
  std::uint32_t poly_;
  std::vector<Symbol> exp_;  // 2 * order entries so log sums need no reduction
  std::vector<std::uint32_t> log_;
  std::vector<Symbol> mul_table_;  // full table for w <= 8
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Field-tagged element. Arithmetic between elements of different fields
/// throws FieldMismatchError.
class FieldElement {
 public:
  FieldElement(FieldPtr field, std::uint32_t value);

  Symbol value() const { return value_; }
  const FieldPtr& field() const { return field_; }
  bool IsZero() const { return value_ == 0; }

  FieldElement Inverse() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return a + b;
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  Symbol value_;
};

FieldElement FeMul(const FieldElement& a, const FieldElement& b);

}  // namespace bfr
