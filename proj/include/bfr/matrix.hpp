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
#include <span>
#include <vector>

#include "bfr/galois_field.hpp"

namespace bfr {

/// Dense row-major matrix over a GaloisField.
///
/// Besides ordinary linear algebra the type doubles as a container of
/// multi-lane symbols: a node storing alpha symbols across L independent
/// stripes is an alpha x L matrix, and every linear code in the library acts
/// on the rows of such matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols,
         std::vector<Symbol> data);

  static Matrix Identity(FieldPtr field, std::size_t n);
  /// rows x cols Vandermonde matrix; row i is [1, x_i, x_i^2, ...].
  static Matrix Vandermonde(FieldPtr field, std::span<const Symbol> points,
                            std::size_t cols);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Symbol& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  Symbol operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Symbol> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Symbol> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<Symbol>& data() const { return data_; }

  /// row(dst) += c * src_row.
  void AddScaledRow(std::size_t dst, Symbol c, std::span<const Symbol> src);

  Matrix Transpose() const;
  Matrix SelectRows(std::span<const std::size_t> rows) const;
  Matrix Block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;
  /// Copies `src` into this matrix at row r0.
  void SetRows(std::size_t r0, const Matrix& src);

  std::size_t Rank() const;
  /// Throws LinearAlgebraError if singular or non-square.
  Matrix Inverse() const;
  bool IsZero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

/// Solves A X = Y for X. A may be square or tall; a tall system must be
/// consistent and of full column rank. Y may carry several columns (lanes).
/// Throws LinearAlgebraError when singular or inconsistent and
/// FieldMismatchError when A and Y live in different fields.
Matrix Solve(const Matrix& a, const Matrix& y);

/// Vector convenience wrapper around Solve.
std::vector<Symbol> Solve(const Matrix& a, std::span<const Symbol> y);

/// Indices of a maximal set of linearly independent rows, chosen greedily in
/// index order.
std::vector<std::size_t> IndependentRows(const Matrix& m);

}  // namespace bfr
