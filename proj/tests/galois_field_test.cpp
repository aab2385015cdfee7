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

#include <random>

#include <gtest/gtest.h>

#include "bfr/matrix.hpp"

namespace {

using ::bfr::FieldElement;
using ::bfr::GaloisField;
using ::bfr::Matrix;
using ::bfr::Symbol;

// Shift-and-add multiply, independent of the log tables.
Symbol SlowMul(Symbol a, Symbol b, unsigned w, std::uint32_t poly) {
  std::uint32_t acc = 0, x = a;
  for (unsigned i = 0; i < w; ++i) {
    if (b & (1u << i)) acc ^= x;
    x <<= 1;
    if (x & (1u << w)) x ^= poly;
  }
  return static_cast<Symbol>(acc);
}

TEST(GaloisFieldTest, MulMatchesShiftAndAdd) {
  for (unsigned w : {4u, 8u, 11u, 16u}) {
    auto f = GaloisField::Create(w);
    std::mt19937 rng(w);
    for (int t = 0; t < 2000; ++t) {
      const Symbol a = rng() & f->order(), b = rng() & f->order();
      ASSERT_EQ(f->Mul(a, b), SlowMul(a, b, w, f->polynomial())) << "w=" << w;
    }
  }
}

TEST(GaloisFieldTest, AxiomsExhaustiveW4) {
  auto f = GaloisField::Create(4);
  for (Symbol a = 0; a < 16; ++a) {
    EXPECT_EQ(f->Mul(a, 0), 0);
    EXPECT_EQ(f->Mul(a, 1), a);
    EXPECT_EQ(f->Add(a, a), 0);
    if (a) EXPECT_EQ(f->Mul(a, f->Inv(a)), 1);
    for (Symbol b = 0; b < 16; ++b) {
      EXPECT_EQ(f->Mul(a, b), f->Mul(b, a));
      for (Symbol c = 0; c < 16; ++c) {
        EXPECT_EQ(f->Mul(f->Mul(a, b), c), f->Mul(a, f->Mul(b, c)));
        EXPECT_EQ(f->Mul(a, f->Add(b, c)), f->Add(f->Mul(a, b), f->Mul(a, c)));
        EXPECT_EQ(f->Add(f->Add(a, b), c), f->Add(a, f->Add(b, c)));
      }
    }
  }
}

TEST(GaloisFieldTest, PowerMinusOneIsInverseW8) {
  auto f = GaloisField::Default();
  EXPECT_EQ(f->bits(), 8u);
  EXPECT_EQ(f->polynomial(), 0x11du);
  for (std::uint32_t x = 1; x < 256; ++x) {
    const Symbol s = static_cast<Symbol>(x);
    EXPECT_EQ(f->Mul(s, f->Pow(s, 254)), 1);
    EXPECT_EQ(f->Pow(s, 254), f->Inv(s));
  }
}

TEST(GaloisFieldTest, InverseOfZeroThrows) {
  EXPECT_THROW(GaloisField::Default()->Inv(0), bfr::LinearAlgebraError);
}

TEST(GaloisFieldTest, RejectsNonPrimitivePolynomial) {
  // x^4 + x^3 + x^2 + x + 1 is irreducible but not primitive.
  EXPECT_THROW(GaloisField::Create(4, 0x1f), bfr::ParameterError);
  EXPECT_THROW(GaloisField::Create(1), bfr::ParameterError);
  EXPECT_THROW(GaloisField::Create(17), bfr::ParameterError);
}

TEST(FieldElementTest, MixedFieldsRejected) {
  auto f8 = GaloisField::Create(8);
  auto f4 = GaloisField::Create(4);
  FieldElement a(f8, 3), b(f4, 3);
  EXPECT_THROW(a * b, bfr::FieldMismatchError);
  EXPECT_THROW(a + b, bfr::FieldMismatchError);
  EXPECT_THROW(FieldElement(f4, 16), bfr::ParameterError);
  EXPECT_EQ(FieldElement(f8, 0) * FieldElement(f8, 77), FieldElement(f8, 0));
  EXPECT_EQ(FieldElement(f8, 1) * FieldElement(f8, 77), FieldElement(f8, 77));
  EXPECT_EQ(a * a.Inverse(), FieldElement(f8, 1));
}

Matrix RandomMatrix(const bfr::FieldPtr& f, std::size_t r, std::size_t c, std::mt19937& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Symbol>(rng() & f->order());
  }
  return m;
}

TEST(MatrixTest, SolveInvertsMultiply) {
  auto f = GaloisField::Default();
  std::mt19937 rng(7);
  for (std::size_t n = 1; n <= 12; ++n) {
    int trials = 0;
    while (trials < 100) {
      const Matrix a = RandomMatrix(f, n, n, rng);
      if (a.Rank() < n) continue;
      ++trials;
      const Matrix x = RandomMatrix(f, n, 2, rng);
      ASSERT_EQ(bfr::Solve(a, a * x), x);
      ASSERT_EQ(a * a.Inverse(), Matrix::Identity(f, n));
    }
  }
}

TEST(MatrixTest, VandermondeRecoversCoefficients) {
  auto f = GaloisField::Default();
  std::vector<Symbol> pts = {1, 2, 3, 5, 9, 17};
  const Matrix v = Matrix::Vandermonde(f, pts, 6);
  const std::vector<Symbol> coeffs = {4, 0, 200, 1, 33, 9};
  std::vector<Symbol> y(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Symbol xp = 1;
    for (Symbol c : coeffs) {
      y[i] = f->Add(y[i], f->Mul(c, xp));
      xp = f->Mul(xp, pts[i]);
    }
  }
  EXPECT_EQ(bfr::Solve(v, std::span<const Symbol>(y)), coeffs);
}

TEST(MatrixTest, SolveErrors) {
  auto f = GaloisField::Default();
  const Matrix zero(f, 3, 3);
  const Matrix y(f, 3, 1);
  EXPECT_THROW(bfr::Solve(zero, y), bfr::LinearAlgebraError);
  EXPECT_EQ(bfr::Solve(Matrix::Identity(f, 3), y), y);
  Matrix tall(f, 3, 2);
  tall(0, 0) = 1;
  tall(1, 1) = 1;
  tall(2, 0) = 1;
  Matrix rhs(f, 3, 1);
  rhs(0, 0) = 1;
  rhs(2, 0) = 2;
  EXPECT_THROW(bfr::Solve(tall, rhs), bfr::LinearAlgebraError);
  rhs(2, 0) = 1;
  EXPECT_EQ(bfr::Solve(tall, rhs)(0, 0), 1);
  auto f4 = GaloisField::Create(4);
  EXPECT_THROW(bfr::Solve(Matrix::Identity(f4, 3), y), bfr::FieldMismatchError);
}

}  // namespace
