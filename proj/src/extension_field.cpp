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

#include "bfr/extension_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace bfr {
namespace {

using Poly = std::vector<Symbol>;  // low coefficient first

void Trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo monic-or-not b (b nonzero, trimmed).
Poly PolyMod(const GaloisField& f, Poly a, const Poly& b) {
  Trim(a);
  const std::size_t db = b.size() - 1;
  const Symbol lead_inv = f.Inv(b.back());
  while (a.size() >= b.size()) {
    const Symbol c = f.Mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] ^= f.Mul(c, b[i]);
    Trim(a);
  }
  return a;
}

Poly PolyMulMod(const GaloisField& f, const Poly& a, const Poly& b,
                const Poly& mod) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    f.Axpy(a[i], b, std::span<Symbol>(out.data() + i, b.size()));
  }
  return PolyMod(f, std::move(out), mod);
}

Poly PolyGcd(const GaloisField& f, Poly a, Poly b) {
  Trim(a);
  Trim(b);
  while (!b.empty()) {
    Poly r = PolyMod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree m is irreducible iff gcd(f, x^(q^i) - x) = 1 for all
// i <= m / 2. Random reducible candidates usually fail at small i.
bool IsIrreducible(const GaloisField& f, const Poly& mod) {
  const std::size_t m = mod.size() - 1;
  if (m == 1) return true;
  Poly power = {0, 1};  // x^(q^i) mod f
  for (std::size_t i = 1; i <= m / 2; ++i) {
    for (unsigned s = 0; s < f.bits(); ++s) power = PolyMulMod(f, power, power, mod);
    Poly h = power;
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] ^= 1;
    Trim(h);
    if (h.empty()) return false;
    if (PolyGcd(f, mod, h).size() != 1) return false;
  }
  return true;
}

// For each constant c in turn: trinomials x^m + x^j + c, then tetranomials
// x^m + x^j + x^i + c. Some degrees admit no irreducible trinomial at all.
Poly FindModulus(const GaloisField& f, std::size_t m) {
  if (m == 1) return {1, 1};
  for (std::uint32_t c = 1; c < f.size(); ++c) {
    for (std::size_t j = 1; j < m; ++j) {
      Poly p(m + 1, 0);
      p[m] = 1;
      p[j] = 1;
      p[0] = static_cast<Symbol>(c);
      if (IsIrreducible(f, p)) return p;
    }
    for (std::size_t j = 2; j < m; ++j) {
      for (std::size_t i = 1; i < j; ++i) {
        Poly p(m + 1, 0);
        p[m] = 1;
        p[j] = 1;
        p[i] = 1;
        p[0] = static_cast<Symbol>(c);
        if (IsIrreducible(f, p)) return p;
      }
    }
  }
  throw ParameterError("no sparse irreducible polynomial of degree " + std::to_string(m));
}

}  // namespace

std::shared_ptr<const ExtensionField> ExtensionField::Create(FieldPtr base,
                                                             std::size_t degree) {
  if (!base) throw ParameterError("extension needs a base field");
  if (degree == 0) throw ParameterError("extension degree must be positive");
  static std::mutex mu;
  static std::map<std::tuple<unsigned, std::uint32_t, std::size_t>,
                  std::shared_ptr<const ExtensionField>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(base->bits(), base->polynomial(), degree);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  Poly mod = FindModulus(*base, degree);
  std::shared_ptr<const ExtensionField> field(
      new ExtensionField(std::move(base), degree, std::move(mod)));
  cache.emplace(key, field);
  return field;
}

ExtensionField::ExtensionField(FieldPtr base, std::size_t degree,
                               std::vector<Symbol> modulus)
    : base_(std::move(base)), degree_(degree), modulus_(std::move(modulus)) {
  for (std::size_t i = 0; i < degree_; ++i) {
    if (modulus_[i] != 0) tail_.emplace_back(i, modulus_[i]);
  }
  frobenius_ = Matrix(base_, degree_, degree_);
  // Row j holds (x^j)^q = (x^q)^j.
  Coords xq(degree_, 0);
  if (degree_ == 1) {
    xq[0] = 0;
  } else {
    xq[1] = 1;
  }
  Coords one(degree_, 0);
  one[0] = 1;
  if (degree_ == 1) {
    frobenius_(0, 0) = 1;
    return;
  }
  for (unsigned s = 0; s < base_->bits(); ++s) xq = SquareRaw(xq);
  Coords cur = one;
  for (std::size_t j = 0; j < degree_; ++j) {
    for (std::size_t i = 0; i < degree_; ++i) frobenius_(j, i) = cur[i];
    cur = MulRaw(cur, xq);
  }
}

void ExtensionField::Reduce(std::vector<Symbol>& poly) const {
  const GaloisField& f = *base_;
  for (std::size_t deg = poly.size(); deg-- > degree_;) {
    const Symbol t = poly[deg];
    if (t == 0) continue;
    poly[deg] = 0;
    // x^m = sum of tail terms (characteristic 2).
    for (const auto& [i, c] : tail_) poly[deg - degree_ + i] ^= f.Mul(t, c);
  }
  poly.resize(degree_);
}

ExtensionField::Coords ExtensionField::MulRaw(std::span<const Symbol> a,
                                              std::span<const Symbol> b) const {
  Coords out(2 * degree_ - 1, 0);
  for (std::size_t i = 0; i < degree_; ++i) {
    if (a[i] != 0) {
      base_->Axpy(a[i], b, std::span<Symbol>(out.data() + i, degree_));
    }
  }
  Reduce(out);
  return out;
}

ExtensionField::Coords ExtensionField::SquareRaw(std::span<const Symbol> a) const {
  Coords out(2 * degree_ - 1, 0);
  for (std::size_t i = 0; i < degree_; ++i) out[2 * i] = base_->Mul(a[i], a[i]);
  Reduce(out);
  return out;
}

ExtensionField::Coords ExtensionField::FrobeniusRaw(std::span<const Symbol> a,
                                                    std::size_t i) const {
  Coords cur(a.begin(), a.end());
  i %= degree_;
  for (std::size_t step = 0; step < i; ++step) {
    Coords next(degree_, 0);
    for (std::size_t j = 0; j < degree_; ++j) {
      base_->Axpy(cur[j], frobenius_.row(j), next);
    }
    cur = std::move(next);
  }
  return cur;
}

ExtensionField::Coords ExtensionField::InvRaw(std::span<const Symbol> a) const {
  if (IsZeroRaw(a)) throw LinearAlgebraError("zero has no inverse");
  const GaloisField& f = *base_;
  // Extended Euclid: track s with s * a == r (mod modulus).
  Poly r0 = modulus_;
  Poly r1(a.begin(), a.end());
  Trim(r1);
  Poly s0, s1 = {1};
  while (r1.size() > 1) {
    // q, r = divmod(r0, r1)
    Poly rem = r0;
    Poly quo(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    const Symbol lead_inv = f.Inv(r1.back());
    while (rem.size() >= r1.size()) {
      const Symbol c = f.Mul(rem.back(), lead_inv);
      const std::size_t shift = rem.size() - r1.size();
      quo[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] ^= f.Mul(c, r1[i]);
      Trim(rem);
    }
    // s2 = s0 - quo * s1
    Poly prod(quo.size() + s1.size(), 0);
    for (std::size_t i = 0; i < quo.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) prod[i + j] ^= f.Mul(quo[i], s1[j]);
    }
    Poly s2 = s0;
    if (s2.size() < prod.size()) s2.resize(prod.size(), 0);
    for (std::size_t i = 0; i < prod.size(); ++i) s2[i] ^= prod[i];
    Trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant.
  const Symbol cinv = f.Inv(r1[0]);
  Coords out(degree_, 0);
  Poly s = PolyMod(f, s1, modulus_);
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = f.Mul(s[i], cinv);
  return out;
}

bool ExtensionField::IsZeroRaw(std::span<const Symbol> a) {
  return std::all_of(a.begin(), a.end(), [](Symbol s) { return s == 0; });
}

ExtElement ExtensionField::Zero() const {
  return ExtElement(shared_from_this(), Coords(degree_, 0));
}

ExtElement ExtensionField::One() const { return FromBase(1); }

ExtElement ExtensionField::BasisElement(std::size_t i) const {
  if (i >= degree_) throw ParameterError("basis index out of range");
  Coords c(degree_, 0);
  c[i] = 1;
  return ExtElement(shared_from_this(), std::move(c));
}

ExtElement ExtensionField::FromBase(Symbol s) const {
  Coords c(degree_, 0);
  c[0] = s;
  return ExtElement(shared_from_this(), std::move(c));
}

ExtElement ExtensionField::FromCoords(std::vector<Symbol> coords) const {
  return ExtElement(shared_from_this(), std::move(coords));
}

ExtElement::ExtElement(ExtFieldPtr field, std::vector<Symbol> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw ParameterError("null extension field");
  if (coords_.size() != field_->degree()) {
    throw ParameterError("coordinate vector has wrong length");
  }
  for (Symbol s : coords_) {
    if (!field_->base()->Contains(s)) throw ParameterError("coordinate out of base field");
  }
}

namespace {
void CheckSame(const ExtElement& a, const ExtElement& b) {
  if (!a.field()->SameField(*b.field())) {
    throw FieldMismatchError("extension elements belong to different fields");
  }
}
}  // namespace

ExtElement ExtElement::Inverse() const {
  return ExtElement(field_, field_->InvRaw(coords_));
}

ExtElement ExtElement::ScaledBy(Symbol s) const {
  auto c = coords_;
  field_->base()->Scale(s, c);
  return ExtElement(field_, std::move(c));
}

ExtElement operator+(const ExtElement& a, const ExtElement& b) {
  CheckSame(a, b);
  auto c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] ^= b.coords_[i];
  return ExtElement(a.field_, std::move(c));
}

ExtElement operator*(const ExtElement& a, const ExtElement& b) {
  CheckSame(a, b);
  return ExtElement(a.field_, a.field_->MulRaw(a.coords_, b.coords_));
}

bool operator==(const ExtElement& a, const ExtElement& b) {
  return a.field_->SameField(*b.field_) && a.coords_ == b.coords_;
}

ExtElement Frobenius(const ExtElement& a, std::size_t i) {
  return ExtElement(a.field(), a.field()->FrobeniusRaw(a.coords(), i));
}

std::size_t RankOverBase(std::span<const ExtElement> elems) {
  if (elems.empty()) return 0;
  const auto& field = elems.front().field();
  Matrix m(field->base(), elems.size(), field->degree());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (!elems[i].field()->SameField(*field)) {
      throw FieldMismatchError("rank over mixed extension fields");
    }
    std::copy(elems[i].coords().begin(), elems[i].coords().end(), m.row(i).begin());
  }
  return m.Rank();
}

}  // namespace bfr
