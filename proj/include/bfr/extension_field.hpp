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

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "bfr/galois_field.hpp"
#include "bfr/matrix.hpp"

namespace bfr {

class ExtElement;

/// GF((2^w)^m) in a polynomial basis over a base GaloisField.
///
/// The modulus is the first irreducible polynomial found in a fixed
/// enumeration (sparse trinomials first), so two fields built from the same
/// base and degree are identical. Elements are coordinate vectors of length m
/// over the base field; coordinate i is the coefficient of x^i.
class ExtensionField : public std::enable_shared_from_this<ExtensionField> {
 public:
  static std::shared_ptr<const ExtensionField> Create(FieldPtr base,
                                                      std::size_t degree);

  const FieldPtr& base() const { return base_; }
  std::size_t degree() const { return degree_; }
  /// Monic modulus, low coefficient first, degree() + 1 entries.
  const std::vector<Symbol>& modulus() const { return modulus_; }

  bool SameField(const ExtensionField& other) const {
    return base_->SameField(*other.base_) && modulus_ == other.modulus_;
  }

  ExtElement Zero() const;
  ExtElement One() const;
  /// x^i for i < degree(): the i-th polynomial-basis element.
  ExtElement BasisElement(std::size_t i) const;
  ExtElement FromBase(Symbol s) const;
  ExtElement FromCoords(std::vector<Symbol> coords) const;

  // Raw coordinate-vector arithmetic; vectors must have degree() entries.
  using Coords = std::vector<Symbol>;
  Coords MulRaw(std::span<const Symbol> a, std::span<const Symbol> b) const;
  Coords SquareRaw(std::span<const Symbol> a) const;
  /// a^(q^i) with q = 2^w, via the precomputed Frobenius matrix.
  Coords FrobeniusRaw(std::span<const Symbol> a, std::size_t i) const;
  /// Throws LinearAlgebraError on zero.
  Coords InvRaw(std::span<const Symbol> a) const;
  static bool IsZeroRaw(std::span<const Symbol> a);

 private:
  ExtensionField(FieldPtr base, std::size_t degree, std::vector<Symbol> modulus);
  void Reduce(std::vector<Symbol>& poly) const;

  FieldPtr base_;
  std::size_t degree_;
  std::vector<Symbol> modulus_;
  std::vector<std::pair<std::size_t, Symbol>> tail_;  // nonzero low terms
  Matrix frobenius_;  // row j = (x^j)^q
};

using ExtFieldPtr = std::shared_ptr<const ExtensionField>;

/// Element of an ExtensionField. Mixing fields throws FieldMismatchError.
class ExtElement {
 public:
  ExtElement(ExtFieldPtr field, std::vector<Symbol> coords);

  const ExtFieldPtr& field() const { return field_; }
  const std::vector<Symbol>& coords() const { return coords_; }
  bool IsZero() const { return ExtensionField::IsZeroRaw(coords_); }

  ExtElement Inverse() const;
  /// Scales by a base-field scalar.
  ExtElement ScaledBy(Symbol s) const;

  friend ExtElement operator+(const ExtElement& a, const ExtElement& b);
  friend ExtElement operator-(const ExtElement& a, const ExtElement& b) {
    return a + b;
  }
  friend ExtElement operator*(const ExtElement& a, const ExtElement& b);
  friend bool operator==(const ExtElement& a, const ExtElement& b);

 private:
  ExtFieldPtr field_;
  std::vector<Symbol> coords_;
};

/// a^(q^i). The map is additive and fixes exactly the base subfield.
ExtElement Frobenius(const ExtElement& a, std::size_t i);

/// Rank over the base field of the coordinate vectors of `elems`.
/// An empty list has rank 0.
std::size_t RankOverBase(std::span<const ExtElement> elems);

}  // namespace bfr
