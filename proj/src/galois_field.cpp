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

#include "bfr/galois_field.hpp"

#include <array>
#include <map>
#include <mutex>
#include <string>

namespace bfr {
namespace {

// Primitive polynomials, one per width (same table as jerasure).
constexpr std::array<std::uint32_t, 17> kDefaultPolys = {
    0,      0,      0x7,    0xb,    0x13,   0x25,   0x43,   0x89,   0x11d,
    0x211,  0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003, 0x1100b};

void CheckSameField(const FieldElement& a, const FieldElement& b) {
  if (!a.field()->SameField(*b.field())) {
    throw FieldMismatchError("field elements belong to different fields");
  }
}

}  // namespace

std::uint32_t GaloisField::DefaultPolynomial(unsigned w) {
  if (w < kMinBits || w > kMaxBits) {
    throw ParameterError("field width must be in [2, 16], got " +
                         std::to_string(w));
  }
  return kDefaultPolys[w];
}

std::shared_ptr<const GaloisField> GaloisField::Create(unsigned w,
                                                       std::uint32_t poly) {
  if (poly == 0) poly = DefaultPolynomial(w);
  // Tables are large for w = 16; share one instance per (w, poly).
  static std::mutex mu;
  static std::map<std::pair<unsigned, std::uint32_t>,
                  std::shared_ptr<const GaloisField>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(w, poly);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::shared_ptr<const GaloisField> field(new GaloisField(w, poly));
  cache.emplace(key, field);
  return field;
}

std::shared_ptr<const GaloisField> GaloisField::Default() {
  static const auto field = Create(8);
  return field;
}

GaloisField::GaloisField(unsigned w, std::uint32_t poly)
    : bits_(w), poly_(poly) {
  if (w < kMinBits || w > kMaxBits) {
    throw ParameterError("field width must be in [2, 16], got " +
                         std::to_string(w));
  }
  if ((poly >> w) != 1) {
    throw ParameterError("polynomial degree must equal field width");
  }
  const std::uint32_t n = order();
  exp_.assign(2 * static_cast<std::size_t>(n), 0);
  log_.assign(size(), 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i > 0 && x == 1) {
      throw ParameterError("polynomial is not primitive");
    }
    exp_[i] = static_cast<Symbol>(x);
    log_[x] = i;
    x <<= 1;
    if (x & size()) x ^= poly;
  }
  if (x != 1) throw ParameterError("polynomial is not primitive");
  for (std::uint32_t i = n; i < 2 * n; ++i) exp_[i] = exp_[i - n];

  if (w <= 8) {
    mul_table_.assign(std::size_t{size()} * size(), 0);
    for (std::uint32_t a = 1; a < size(); ++a) {
      for (std::uint32_t b = 1; b < size(); ++b) {
        mul_table_[(std::size_t{a} << w) | b] = exp_[log_[a] + log_[b]];
      }
    }
  }
}

Symbol GaloisField::Inv(Symbol a) const {
  if (a == 0) throw LinearAlgebraError("zero has no multiplicative inverse");
  return exp_[(order() - log_[a]) % order()];
}

Symbol GaloisField::Pow(Symbol a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order())) % order()];
}

std::uint32_t GaloisField::Log(Symbol a) const {
  if (a == 0) throw ParameterError("log of zero");
  return log_[a];
}

void GaloisField::Axpy(Symbol c, std::span<const Symbol> x,
                       std::span<Symbol> y) const {
  if (c == 0) return;
  if (c == 1) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] ^= x[i];
    return;
  }
  if (!mul_table_.empty()) {
    const Symbol* row = mul_table_.data() + (std::size_t{c} << bits_);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] ^= row[x[i]];
    return;
  }
  const std::uint32_t lc = log_[c];
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) y[i] ^= exp_[lc + log_[x[i]]];
  }
}

void GaloisField::Scale(Symbol c, std::span<Symbol> x) const {
  for (auto& v : x) v = Mul(c, v);
}

FieldElement::FieldElement(FieldPtr field, std::uint32_t value)
    : field_(std::move(field)), value_(static_cast<Symbol>(value)) {
  if (!field_) throw ParameterError("null field");
  if (!field_->Contains(value)) {
    throw ParameterError("value out of range for GF(2^" +
                         std::to_string(field_->bits()) + ")");
  }
}

FieldElement FieldElement::Inverse() const {
  return FieldElement(field_, field_->Inv(value_));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  return FieldElement(a.field_, a.value_ ^ b.value_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  return FieldElement(a.field_, a.field_->Mul(a.value_, b.value_));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  return FieldElement(a.field_, a.field_->Div(a.value_, b.value_));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_->SameField(*b.field_) && a.value_ == b.value_;
}

FieldElement FeMul(const FieldElement& a, const FieldElement& b) {
  return a * b;
}

}  // namespace bfr
