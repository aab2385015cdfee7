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

#include "bfr/reed_solomon.hpp"

#include <set>
#include <string>
#include <vector>

namespace bfr {

ReedSolomon::ReedSolomon(FieldPtr field, std::size_t n, std::size_t k)
    : field_(std::move(field)), n_(n), k_(k) {
  if (k_ == 0) throw ParameterError("Reed-Solomon message length must be positive");
  if (k_ > n_) {
    throw ParameterError("Reed-Solomon needs K <= N (K=" + std::to_string(k_) +
                         ", N=" + std::to_string(n_) + ")");
  }
  if (n_ > field_->order()) {
    throw ParameterError("field GF(2^" + std::to_string(field_->bits()) +
                         ") has fewer than N=" + std::to_string(n_) +
                         " distinct evaluation points");
  }
  std::vector<Symbol> points(n_);
  for (std::size_t i = 0; i < n_; ++i) points[i] = field_->Exp(i);
  const Matrix v = Matrix::Vandermonde(field_, points, k_);
  generator_ = v * v.Block(0, 0, k_, k_).Inverse();
}

Matrix ReedSolomon::Encode(const Matrix& message) const {
  if (message.rows() != k_) {
    throw ParameterError("message has " + std::to_string(message.rows()) +
                         " symbols, expected " + std::to_string(k_));
  }
  return generator_ * message;
}

Matrix ReedSolomon::Decode(std::span<const std::size_t> positions,
                           const Matrix& values) const {
  const std::set<std::size_t> uniq(positions.begin(), positions.end());
  if (uniq.size() != positions.size()) throw ParameterError("duplicate codeword positions");
  if (positions.size() < k_) {
    throw ParameterError("need at least K=" + std::to_string(k_) + " positions, got " +
                         std::to_string(positions.size()));
  }
  return Solve(generator_.SelectRows(positions), values);
}

}  // namespace bfr
