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

#include "bfr/matrix.hpp"
#include "bfr/reed_solomon.hpp"

namespace bfr {

enum class CodeKind { kMsr, kMbr, kMds };

std::string ToString(CodeKind kind);
CodeKind CodeKindFromString(const std::string& s);

/// Parameters of a sub-code [n, k, d, alpha, beta] with message size M.
/// Product-matrix codes are scalar (beta = 1).
struct RegenParams {
  CodeKind kind = CodeKind::kMbr;
  std::size_t n_sub = 0;
  std::size_t k_sub = 0;
  std::size_t d_sub = 0;
  std::size_t alpha_sub = 0;
  std::size_t beta_sub = 1;
  std::size_t msg_size = 0;

  /// Product-matrix MBR: alpha = d, M = k d - k (k - 1) / 2.
  static RegenParams Mbr(std::size_t n, std::size_t k, std::size_t d);
  /// Product-matrix MSR at d = 2k - 2: alpha = k - 1, M = k (k - 1).
  static RegenParams Msr(std::size_t n, std::size_t k);
  /// Scalar MDS code repaired by full decoding: alpha = 1, d = k, M = k.
  static RegenParams Mds(std::size_t n, std::size_t k);

  /// Throws ParameterError on any violated invariant.
  void Validate() const;

  friend bool operator==(const RegenParams&, const RegenParams&) = default;
};

/// Useful symbols contributed by the j-th contacted node (1-based) when a
/// collector accumulates nodes of one sub-codeword.
std::size_t RankProfile(const RegenParams& params, std::size_t j);

/// Exact-repair regenerating code acting on multi-lane symbols: a message is
/// an M x L matrix, a node holds an alpha x L matrix, and every operation
/// acts independently and identically on each lane.
class RegeneratingCode {
 public:
  virtual ~RegeneratingCode() = default;

  const RegenParams& params() const { return params_; }
  const FieldPtr& field() const { return field_; }
  /// Encoding matrix recorded in descriptors (Psi for product-matrix codes,
  /// the systematic generator for MDS).
  const Matrix& psi() const { return psi_; }

  virtual std::vector<Matrix> Encode(const Matrix& message) const = 0;

  /// The beta x L symbols that `helper` (storing `content`) sends towards the
  /// repair of node `failed`.
  virtual Matrix HelperMessage(std::size_t helper, const Matrix& content,
                               std::size_t failed) const = 0;

  /// Rebuilds node `failed` from exactly d distinct helpers' messages.
  virtual Matrix Repair(std::size_t failed, std::span<const std::size_t> helpers,
                        std::span<const Matrix> messages) const = 0;

  /// Recovers the message from exactly k distinct nodes.
  virtual Matrix Collect(std::span<const std::size_t> nodes,
                         std::span<const Matrix> contents) const = 0;

  /// Non-degeneracy conditions of psi that exact repair and collection rely
  /// on; empty when all hold.
  virtual std::vector<std::string> StructuralDefects() const = 0;

  /// (n alpha) x M matrix: row i * alpha + s expresses stored symbol s of
  /// node i as a combination of message symbols.
  Matrix Generator() const;

  struct RepairOutcome {
    Matrix content;
    std::size_t downloaded = 0;  // symbols moved from helpers, per lane
  };
  /// Runs the helper side for every helper, then Repair, counting the
  /// symbols that cross the network.
  RepairOutcome RepairFromHelpers(std::size_t failed,
                                  std::span<const std::size_t> helpers,
                                  std::span<const Matrix> helper_contents) const;

 protected:
  RegeneratingCode(FieldPtr field, RegenParams params, Matrix psi);

  void CheckNode(std::size_t i) const;
  void CheckHelpers(std::size_t failed, std::span<const std::size_t> helpers,
                    std::size_t count) const;
  void CheckCollect(std::span<const std::size_t> nodes,
                    std::span<const Matrix> contents) const;

  FieldPtr field_;
  RegenParams params_;
  Matrix psi_;
};

/// Default Psi: Vandermonde rows on g^0, g^1, ... (n x d); for MDS codes the
/// systematic Reed-Solomon generator.
Matrix DefaultPsi(const FieldPtr& field, const RegenParams& params);

/// Builds the code for `params`, with `psi` overriding the default encoding
/// matrix (shape-checked only; see StructuralDefects).
std::unique_ptr<RegeneratingCode> MakeRegeneratingCode(
    FieldPtr field, const RegenParams& params,
    std::optional<Matrix> psi = std::nullopt);

void to_json(nlohmann::json& j, const RegenParams& p);
void from_json(const nlohmann::json& j, RegenParams& p);

}  // namespace bfr
