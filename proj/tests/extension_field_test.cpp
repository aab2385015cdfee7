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

#include <random>

#include <gtest/gtest.h>

namespace {

using ::bfr::ExtElement;
using ::bfr::ExtensionField;
using ::bfr::GaloisField;
using ::bfr::Symbol;

ExtElement Random(const bfr::ExtFieldPtr& e, std::mt19937& rng) {
  std::vector<Symbol> c(e->degree());
  for (auto& s : c) s = static_cast<Symbol>(rng() & e->base()->order());
  return e->FromCoords(c);
}

// a^(q^i) by repeated squaring, independent of the Frobenius matrix.
ExtElement PowQ(ExtElement a, std::size_t i) {
  const std::size_t squarings = i * a.field()->base()->bits();
  for (std::size_t s = 0; s < squarings; ++s) a = a * a;
  return a;
}

TEST(ExtensionFieldTest, FrobeniusMatchesSquaring) {
  for (auto [w, m] : {std::pair{2u, 3u}, {4u, 5u}, {8u, 7u}, {8u, 42u}}) {
    auto e = ExtensionField::Create(GaloisField::Create(w), m);
    std::mt19937 rng(w * 100 + m);
    for (int t = 0; t < 20; ++t) {
      const ExtElement a = Random(e, rng), b = Random(e, rng);
      EXPECT_EQ(bfr::Frobenius(a, 0), a);
      EXPECT_EQ(bfr::Frobenius(a, 1), PowQ(a, 1));
      EXPECT_EQ(bfr::Frobenius(a, m), a);
      EXPECT_EQ(bfr::Frobenius(a + b, 2), bfr::Frobenius(a, 2) + bfr::Frobenius(b, 2));
    }
  }
}

TEST(ExtensionFieldTest, FrobeniusFixesExactlyBaseSubfield) {
  // GF(4^3): 64 elements, 4 of them fixed.
  auto e = ExtensionField::Create(GaloisField::Create(2), 3);
  std::size_t fixed = 0;
  for (std::uint32_t v = 0; v < 64; ++v) {
    const ExtElement a = e->FromCoords({Symbol(v & 3), Symbol((v >> 2) & 3), Symbol(v >> 4)});
    if (bfr::Frobenius(a, 1) == a) {
      ++fixed;
      EXPECT_EQ(a.coords()[1], 0);
      EXPECT_EQ(a.coords()[2], 0);
    }
  }
  EXPECT_EQ(fixed, 4u);
}

TEST(ExtensionFieldTest, FieldAxiomsExhaustiveSmall) {
  auto e = ExtensionField::Create(GaloisField::Create(2), 2);
  std::vector<ExtElement> all;
  for (std::uint32_t v = 0; v < 16; ++v) all.push_back(e->FromCoords({Symbol(v & 3), Symbol(v >> 2)}));
  for (const auto& a : all) {
    if (!a.IsZero()) EXPECT_EQ(a * a.Inverse(), e->One());
    for (const auto& b : all) {
      EXPECT_EQ(a * b, b * a);
      for (const auto& c : all) {
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
    }
  }
}

TEST(ExtensionFieldTest, InverseRandom) {
  auto e = ExtensionField::Create(GaloisField::Default(), 42);
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    const ExtElement a = Random(e, rng);
    if (!a.IsZero()) EXPECT_EQ(a * a.Inverse(), e->One());
  }
  EXPECT_THROW(e->Zero().Inverse(), bfr::LinearAlgebraError);
}

TEST(ExtensionFieldTest, MixedFieldsRejected) {
  auto e1 = ExtensionField::Create(GaloisField::Default(), 3);
  auto e2 = ExtensionField::Create(GaloisField::Default(), 4);
  EXPECT_THROW(e1->One() * e2->One(), bfr::FieldMismatchError);
  EXPECT_THROW(e1->One() + e2->One(), bfr::FieldMismatchError);
  const std::vector<ExtElement> mixed = {e1->One(), e2->One()};
  EXPECT_THROW(bfr::RankOverBase(mixed), bfr::FieldMismatchError);
}

TEST(RankOverBaseTest, Examples) {
  auto e = ExtensionField::Create(GaloisField::Default(), 6);
  EXPECT_EQ(bfr::RankOverBase({}), 0u);
  const std::vector<ExtElement> zeros = {e->Zero(), e->Zero()};
  EXPECT_EQ(bfr::RankOverBase(zeros), 0u);
  std::vector<ExtElement> basis;
  for (std::size_t i = 0; i < 6; ++i) basis.push_back(e->BasisElement(i));
  EXPECT_EQ(bfr::RankOverBase(basis), 6u);

  const ExtElement g = e->BasisElement(1) + e->BasisElement(4).ScaledBy(9);
  // Base-field scalar: g, g*s, g + g*s all lie on one F_q-line.
  const ExtElement s = e->FromBase(37);
  const std::vector<ExtElement> base_scaled = {g, g * s, g + g * s};
  EXPECT_EQ(bfr::RankOverBase(base_scaled), 1u);
  // Scalar outside the base field: the third element is the sum of the first two.
  const ExtElement t = e->BasisElement(1);
  const std::vector<ExtElement> ext_scaled = {g, g * t, g + g * t};
  EXPECT_EQ(bfr::RankOverBase(ext_scaled), 2u);
}

TEST(RankOverBaseTest, MatchesCoordinateRank) {
  auto e = ExtensionField::Create(GaloisField::Create(4), 5);
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    std::vector<ExtElement> v;
    const std::size_t count = 1 + rng() % 7;
    for (std::size_t i = 0; i < count; ++i) v.push_back(Random(e, rng));
    if (rng() % 2 && count >= 3) v[2] = v[0].ScaledBy(3) + v[1];
    bfr::Matrix coords(e->base(), count, 5);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < 5; ++j) coords(i, j) = v[i].coords()[j];
    }
    EXPECT_EQ(bfr::RankOverBase(v), coords.Rank());
  }
}

}  // namespace
