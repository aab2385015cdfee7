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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bfr/system.hpp"

namespace bfr {

enum class VerifyLevel { kQuick, kExhaustive };

VerifyLevel VerifyLevelFromString(const std::string& s);

struct VerifyCheck {
  std::string name;
  bool ok = true;
  /// Reported but not counted against the verdict.
  bool informational = false;
  std::string detail;
  nlohmann::json counterexample;
};

struct VerifyReport {
  bool ok = true;
  std::vector<VerifyCheck> checks;
  nlohmann::json measured;
  /// First failed non-informational check, if any.
  const VerifyCheck* FirstFailure() const;
};

/// Runs the property suite on the described code: design, parameters,
/// exact repair with bandwidth ledger, collection universality, Psi
/// structure, operating point and flow-graph oracle. With `stored`, also
/// audits stored shards against one another.
VerifyReport Verify(const SystemDescriptor& desc, VerifyLevel level, std::uint64_t seed,
                    const std::optional<StoredSystem>& stored = std::nullopt);

void to_json(nlohmann::json& j, const VerifyReport& r);

}  // namespace bfr
