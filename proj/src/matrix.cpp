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

#include "bfr/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace bfr {
namespace {

void RequireSameField(const Matrix& a, const Matrix& b) {
  if (!a.field() || !b.field() || !a.field()->SameField(*b.field())) {
    throw FieldMismatchError("matrices belong to different fields");
  }
}

// Row-reduces `m` in place to reduced echelon form over its first `ncols`
// columns and returns the pivot columns.
std::vector<std::size_t> RowReduce(Matrix& m, std::size_t ncols) {
  const GaloisField& f = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  std::vector<Symbol> tmp;
  for (std::size_t c = 0; c < ncols && prow < m.rows(); ++c) {
    std::size_t sel = prow;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != prow) {
      auto a = m.row(sel);
      auto b = m.row(prow);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Symbol inv = f.Inv(m(prow, c));
    f.Scale(inv, m.row(prow));
    tmp.assign(m.row(prow).begin(), m.row(prow).end());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != prow && m(r, c) != 0) m.AddScaledRow(r, m(r, c), tmp);
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)),
      rows_(rows),
      cols_(cols),
      data_(rows * cols, 0) {
  if (!field_) throw ParameterError("matrix needs a field");
}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols,
               std::vector<Symbol> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (!field_) throw ParameterError("matrix needs a field");
  if (data_.size() != rows * cols) {
    throw ParameterError("matrix data size does not match its shape");
  }
  for (Symbol s : data_) {
    if (!field_->Contains(s)) throw ParameterError("matrix entry out of field");
  }
}

Matrix Matrix::Identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::Vandermonde(FieldPtr field, std::span<const Symbol> points,
                           std::size_t cols) {
  Matrix m(field, points.size(), cols);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Symbol x = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = x;
      x = field->Mul(x, points[i]);
    }
  }
  return m;
}

void Matrix::AddScaledRow(std::size_t dst, Symbol c,
                          std::span<const Symbol> src) {
  field_->Axpy(c, src, row(dst));
}

Matrix Matrix::Transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::SelectRows(std::span<const std::size_t> rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw ParameterError("row index out of range");
    std::copy_n(row(rows[i]).begin(), cols_, out.row(i).begin());
  }
  return out;
}

Matrix Matrix::Block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw ParameterError("block exceeds matrix bounds");
  }
  Matrix out(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  }
  return out;
}

void Matrix::SetRows(std::size_t r0, const Matrix& src) {
  if (src.cols_ != cols_ || r0 + src.rows_ > rows_) {
    throw ParameterError("row block does not fit");
  }
  std::copy(src.data_.begin(), src.data_.end(),
            data_.begin() + static_cast<std::ptrdiff_t>(r0 * cols_));
}

std::size_t Matrix::Rank() const {
  if (empty()) return 0;
  Matrix tmp = *this;
  return RowReduce(tmp, cols_).size();
}

Matrix Matrix::Inverse() const {
  if (rows_ != cols_) throw LinearAlgebraError("cannot invert non-square matrix");
  return Solve(*this, Identity(field_, rows_));
}

bool Matrix::IsZero() const {
  return std::all_of(data_.begin(), data_.end(), [](Symbol s) { return s == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  RequireSameField(a, b);
  if (a.cols_ != b.rows_) throw ParameterError("matrix shape mismatch in product");
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      out.AddScaledRow(r, a(r, k), b.row(k));
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  RequireSameField(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw ParameterError("matrix shape mismatch in sum");
  }
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] ^= b.data_[i];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.rows_ * a.cols_ == 0) return true;
  return a.field_->SameField(*b.field_) && a.data_ == b.data_;
}

Matrix Solve(const Matrix& a, const Matrix& y) {
  RequireSameField(a, y);
  if (a.rows() != y.rows()) throw ParameterError("right-hand side has wrong height");
  if (a.rows() < a.cols()) {
    throw LinearAlgebraError("underdetermined system (" + std::to_string(a.rows()) +
                             " equations, " + std::to_string(a.cols()) +
                             " unknowns)");
  }
  const std::size_t n = a.cols();
  const std::size_t lanes = y.cols();
  Matrix aug(a.field(), a.rows(), n + lanes);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::copy_n(a.row(r).begin(), n, aug.row(r).begin());
    std::copy_n(y.row(r).begin(), lanes, aug.row(r).begin() + static_cast<std::ptrdiff_t>(n));
  }
  const auto pivots = RowReduce(aug, n);
  if (pivots.size() < n) {
    throw LinearAlgebraError("singular system: rank " +
                             std::to_string(pivots.size()) + " < " +
                             std::to_string(n));
  }
  for (std::size_t r = n; r < aug.rows(); ++r) {
    for (std::size_t l = 0; l < lanes; ++l) {
      if (aug(r, n + l) != 0) throw LinearAlgebraError("inconsistent system");
    }
  }
  return aug.Block(0, n, n, lanes);
}

std::vector<Symbol> Solve(const Matrix& a, std::span<const Symbol> y) {
  Matrix rhs(a.field(), y.size(), 1, std::vector<Symbol>(y.begin(), y.end()));
  Matrix x = Solve(a, rhs);
  return x.data();
}

std::vector<std::size_t> IndependentRows(const Matrix& m) {
  // Incremental elimination against a reduced basis.
  const GaloisField& f = *m.field();
  std::vector<std::vector<Symbol>> basis;
  std::vector<std::size_t> pivot_col;
  std::vector<std::size_t> picked;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Symbol> v(m.row(r).begin(), m.row(r).end());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Symbol c = v[pivot_col[i]];
      if (c != 0) f.Axpy(c, basis[i], v);
    }
    auto it = std::find_if(v.begin(), v.end(), [](Symbol s) { return s != 0; });
    if (it == v.end()) continue;
    const auto pc = static_cast<std::size_t>(it - v.begin());
    f.Scale(f.Inv(v[pc]), v);
    basis.push_back(std::move(v));
    pivot_col.push_back(pc);
    picked.push_back(r);
  }
  return picked;
}

}  // namespace bfr
