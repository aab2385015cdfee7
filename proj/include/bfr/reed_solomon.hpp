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

#include "bfr/matrix.hpp"

namespace bfr {

/// Systematic [N, K] Reed-Solomon code over GaloisField, evaluation points
/// g^0 .. g^(N-1) for the field's primitive element g. The first K codeword
/// symbols are the message itself.
class ReedSolomon {
 public:
  /// Throws ParameterError if K > N, K == 0 or the field has fewer than N
  /// nonzero elements.
  ReedSolomon(FieldPtr field, std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  const FieldPtr& field() const { return field_; }
  /// N x K systematic generator; any K rows are invertible.
  const Matrix& generator() const { return generator_; }

  /// message: K x L (L independent lanes). Returns N x L.
  Matrix Encode(const Matrix& message) const;

  /// Recovers the K x L message from codeword rows at `positions`. Needs at
  /// least K distinct positions; extra positions are checked for consistency.
  Matrix Decode(std::span<const std::size_t> positions, const Matrix& values) const;

 private:
  FieldPtr field_;
  std::size_t n_;
  std::size_t k_;
  Matrix generator_;
};

}  // namespace bfr
