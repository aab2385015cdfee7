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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bfr/block_design.hpp"
#include "bfr/extension_field.hpp"
#include "bfr/reed_solomon.hpp"
#include "bfr/regen_codes.hpp"

namespace bfr {

enum class Construction { kTranspose, kPlane, kGabidulinPlane };

std::string ToString(Construction c);
Construction ConstructionFromString(const std::string& s);

/// System parameters (n, b, M, k, rho, alpha, d, sigma, beta) and the values
/// derived from them. For the Gabidulin variant M = K counts extension
/// symbols; elsewhere M counts base-field symbols.
struct BfrParams {
  Construction construction = Construction::kPlane;
  std::size_t n = 0;
  std::size_t b = 0;
  std::size_t M = 0;
  std::size_t k = 0;
  std::size_t rho = 0;
  std::size_t alpha = 0;
  std::size_t d = 0;
  std::size_t sigma = 1;
  std::size_t beta = 1;

  std::size_t c = 0;    // n / b
  std::size_t b_c = 0;  // b - rho
  std::size_t k_c = 0;  // k / b_c
  std::size_t b_r = 0;  // b - sigma
  std::size_t d_r = 0;  // d / b_r

  std::optional<RegenParams> sub;
  std::optional<Design> design;

  // Gabidulin outer code [N, K] over GF(q^m).
  std::size_t gab_n = 0;
  std::size_t gab_k = 0;
  std::size_t ext_degree = 0;

  std::size_t gamma() const { return d * beta; }

  /// Throws ParameterError naming the first violated condition.
  void Validate() const;

  friend bool operator==(const BfrParams&, const BfrParams&) = default;
};

/// Two-block transpose code: alpha = d = n/2, M = k d - (k/2)^2.
BfrParams BuildTranspose(std::size_t n, std::size_t k);

/// Places v sub-codewords over the blocks of `design` (a projective plane or
/// any lambda = 1 design whose blocks meet in one point).
BfrParams BuildDesignPlacement(const Design& design, const RegenParams& sub);

/// Projective plane of prime order p.
BfrParams BuildPlanePlacement(std::size_t p, const RegenParams& sub);

/// Gabidulin-precoded plane placement tolerating rho erased blocks at
/// collection. K is the minimum accumulated rank over all (b - rho)-subsets.
/// k_c defaults to k_sub / r. rho = 0 returns the plain plane placement.
BfrParams BuildGabidulinPlane(std::size_t p, const RegenParams& sub, std::size_t rho,
                              std::optional<std::size_t> k_c = std::nullopt);

/// One sub-node of one part stored by a system node.
struct SubNodeRef {
  std::size_t part = 0;
  std::size_t sub_node = 0;
  friend bool operator==(const SubNodeRef&, const SubNodeRef&) = default;
};

/// Nodes of all blocks; content[block][node] is alpha x L.
struct SystemState {
  std::vector<std::vector<Matrix>> content;
  std::vector<bool> alive;
  std::size_t lanes = 0;

  friend bool operator==(const SystemState&, const SystemState&) = default;
};

/// Nodes chosen in one block, for collection or as repair helpers.
struct NodeChoice {
  std::size_t block = 0;
  std::vector<std::size_t> nodes;
};

struct RepairResult {
  Matrix content;
  std::size_t downloaded = 0;  // symbols per lane
  std::vector<std::size_t> per_helper;
};

class BfrCode {
 public:
  /// `psi` overrides the sub-code's default encoding matrix.
  BfrCode(FieldPtr field, BfrParams params, std::optional<Matrix> psi = std::nullopt);

  const BfrParams& params() const { return params_; }
  const FieldPtr& field() const { return field_; }
  /// Null for the transpose code.
  const RegeneratingCode* sub_code() const { return sub_.get(); }
  const ExtFieldPtr& ext_field() const { return ext_; }
  /// Lane counts must be multiples of this (the extension degree for the
  /// Gabidulin variant).
  std::size_t lane_multiple() const { return ext_ ? ext_->degree() : 1; }

  std::vector<SubNodeRef> Placement(std::size_t block, std::size_t node) const;

  /// file: M x L. Gabidulin variant: each group of m lanes is one stripe of
  /// K extension symbols.
  SystemState Encode(const Matrix& file) const;

  /// Marks a block dead and discards its contents. At most sigma blocks may
  /// be dead at once.
  void FailBlock(SystemState& state, std::size_t block) const;

  /// Exactly b_c live blocks with k_c distinct nodes each.
  Matrix Collect(const SystemState& state, std::span<const NodeChoice> choice) const;

  /// Lowest-indexed collection choice over the first b_c live blocks.
  std::vector<NodeChoice> DefaultCollection(const SystemState& state) const;

  /// Repair helpers: d_r distinct nodes from each of the b_r live blocks
  /// other than `block`.
  RepairResult RepairNode(const SystemState& state, std::size_t block, std::size_t node,
                          std::span<const NodeChoice> helpers) const;
  std::vector<NodeChoice> DefaultHelpers(const SystemState& state, std::size_t block) const;

  /// Repairs every node of a dead block with default helpers and revives it.
  /// Returns the total download.
  std::size_t RepairBlock(SystemState& state, std::size_t block) const;

  /// Evaluation-point coordinates of stored row `row` of (block, node) for
  /// the Gabidulin variant: the base-field combination of codeword symbols
  /// it holds.
  std::vector<Symbol> StoredPoint(std::size_t block, std::size_t node, std::size_t row) const;

 private:
  void CheckState(const SystemState& state) const;
  std::size_t PartPosition(std::size_t part, std::size_t block) const;
  Matrix EncodePlane(const Matrix& parts_message) const;
  Matrix CollectTranspose(const SystemState& state, std::span<const NodeChoice> choice) const;
  Matrix CollectPlane(const SystemState& state, std::span<const NodeChoice> choice) const;
  Matrix CollectGabidulin(const SystemState& state, std::span<const NodeChoice> choice) const;

  FieldPtr field_;
  BfrParams params_;
  std::unique_ptr<RegeneratingCode> sub_;
  std::optional<ReedSolomon> rs_;
  ExtFieldPtr ext_;
  Matrix sub_generator_;
  std::vector<std::vector<std::size_t>> through_;  // blocks through each point
};

void to_json(nlohmann::json& j, const BfrParams& p);
void from_json(const nlohmann::json& j, BfrParams& p);

}  // namespace bfr
