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
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bfr/errors.hpp"

namespace bfr {

/// An incidence structure: `v` points and a list of blocks, each a sorted set
/// of point indices. The nominal (kappa, lambda) are what the design claims
/// to be; validate_bibd checks the claim.
struct Design {
  std::size_t v = 0;
  std::size_t kappa = 0;
  std::size_t lambda = 0;
  std::vector<std::vector<std::size_t>> blocks;

  /// Replication degree lambda (v - 1) / (kappa - 1).
  std::size_t r() const;
  std::size_t b() const { return blocks.size(); }

  friend bool operator==(const Design&, const Design&) = default;
};

struct BibdReport {
  bool ok = false;
  std::size_t r = 0;  // replication degree implied by (v, kappa, lambda)
  std::size_t b = 0;  // block count implied by (v, kappa, lambda)
  std::vector<std::string> violations;
};

bool IsPrime(std::size_t p);

/// The projective plane of order p over the p-element field: points and lines
/// are normalized homogeneous coordinate triples, both sorted
/// lexicographically. Throws ParameterError unless p is prime.
Design BuildProjectivePlane(std::size_t p);

/// The three-point design {{0,1},{0,2},{1,2}}: a (3,2,1)-BIBD with the
/// unique-intersection property that is not a projective plane.
Design TriangleDesign();

/// Exhaustive check that `d` is a (v, kappa, lambda)-BIBD. Never throws;
/// every problem is listed in the report.
BibdReport ValidateBibd(const Design& d, std::size_t v, std::size_t kappa,
                        std::size_t lambda);

/// Indices of blocks containing point t, ascending.
std::vector<std::size_t> BlocksThroughPoint(const Design& d, std::size_t t);

/// The unique point shared by blocks i and j. Throws ParameterError when
/// i == j or the blocks do not meet in exactly one point.
std::size_t CommonPoint(const Design& d, std::size_t i, std::size_t j);

void to_json(nlohmann::json& j, const Design& d);
void from_json(const nlohmann::json& j, Design& d);

}  // namespace bfr
