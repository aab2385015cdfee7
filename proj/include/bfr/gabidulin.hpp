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
#include <map>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bfr/block_design.hpp"
#include "bfr/extension_field.hpp"
#include "bfr/regen_codes.hpp"

namespace bfr {

/// f(x) = sum_i a_i x^(q^i) over GF(q^m).
class LinearizedPoly {
 public:
  explicit LinearizedPoly(std::vector<ExtElement> coeffs);

  std::size_t q_degree() const { return coeffs_.size() - 1; }
  const std::vector<ExtElement>& coeffs() const { return coeffs_; }
  ExtElement operator()(const ExtElement& x) const;

 private:
  std::vector<ExtElement> coeffs_;
};

/// The first n polynomial-basis elements x^0 .. x^(n-1); needs n <= m.
std::vector<ExtElement> BasisPoints(const ExtFieldPtr& field, std::size_t n);

/// Evaluations of the linearized polynomial with coefficients `message` at
/// `points`. Throws ParameterError if the points are dependent over the base
/// field or there are fewer points than coefficients.
std::vector<ExtElement> GabEncode(std::span<const ExtElement> message,
                                  std::span<const ExtElement> points);

struct Evaluation {
  ExtElement point;
  ExtElement value;
};

/// Recovers k coefficients from evaluations whose points span rank >= k over
/// the base field; throws InsufficientRankError otherwise.
std::vector<ExtElement> GabDecode(std::span<const Evaluation> evals, std::size_t k);

/// Striped forms. A stripe is m consecutive columns of a base-field matrix
/// read as one extension element per row, so an R x (S m) matrix carries S
/// independent codewords.
Matrix GabEncodeStripes(const ExtFieldPtr& field, const Matrix& message,
                        std::span<const ExtElement> points);
Matrix GabDecodeStripes(const ExtFieldPtr& field, std::span<const ExtElement> points,
                        const Matrix& values, std::size_t k);

/// What a collector sees of each part of a placement design.
struct RankProfileQuery {
  std::size_t b_c = 0;
  std::size_t k_c = 0;
  /// availability[t]: accessed blocks containing point t.
  std::vector<std::size_t> availability;
};

RankProfileQuery MakeRankQuery(const Design& design, std::span<const std::size_t> blocks,
                               std::size_t k_c);

/// sum over points t of sum_{j <= k_c r'_t} a_j.
std::size_t AccumulatedRank(const RankProfileQuery& query, const RegenParams& sub);

/// A class of block subsets with the same multiset of per-point deficits
/// r - r'_t.
struct CollectionShape {
  std::map<std::size_t, std::size_t> deficits;  // deficit -> number of points
  std::size_t rank = 0;
  std::size_t count = 0;  // block subsets with this shape
  std::vector<std::size_t> example_blocks;
};

struct MinRankReport {
  std::size_t rho = 0;
  std::size_t b_c = 0;
  std::size_t min_rank = 0;
  std::vector<std::size_t> worst_blocks;  // an accessed subset attaining the min
  std::vector<CollectionShape> shapes;
};

/// Enumerates every (b - rho)-subset of blocks.
MinRankReport MinRankOverCollections(const Design& design, const RegenParams& sub,
                                     std::size_t rho, std::size_t k_c);

/// Per-rho table {rho, b_c, min_rank, k_max, worst_blocks, shapes} for
/// rho = 0 .. b - 1.
nlohmann::json FeasibilityReport(const Design& design, const RegenParams& sub,
                                 std::size_t k_c);

}  // namespace bfr
