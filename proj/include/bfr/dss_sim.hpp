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
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "bfr/bfr_code.hpp"

namespace bfr {

enum class EventKind { kBlockFail, kRepairAll, kCollect };

struct TraceEvent {
  std::uint64_t time = 0;
  EventKind kind = EventKind::kCollect;
  std::optional<std::size_t> block;
  /// Collect: the collection choice. RepairAll: helpers used for every node.
  std::optional<std::vector<NodeChoice>> choices;
};

struct Trace {
  std::uint64_t seed = 0;
  std::vector<TraceEvent> events;
};

struct RepairEntry {
  std::uint64_t time = 0;
  std::size_t block = 0;
  std::size_t node = 0;
  std::size_t downloaded = 0;
};

struct BandwidthLedger {
  std::vector<RepairEntry> repairs;
  std::size_t total = 0;
};

struct SimReport {
  bool ok = true;
  std::size_t collects = 0;
  std::size_t collect_successes = 0;
  std::size_t repairs = 0;
  std::size_t exact_repairs = 0;
  std::size_t gamma = 0;
  BandwidthLedger ledger;
  /// Set on the first wrong collect or repair; the run stops there.
  std::optional<nlohmann::json> counterexample;
};

/// Throws ParameterError naming the first event that breaks the trace rules:
/// at most one dead block, repairs only of the dead block, collections over
/// b_c live blocks with k_c nodes each.
void ValidateTrace(const BfrCode& code, const Trace& trace);

/// Validates, encodes `file` and replays the trace against the fresh state.
SimReport RunTrace(const BfrCode& code, const Matrix& file, const Trace& trace);

/// Reproducible random trace of `length` events.
Trace RandomTrace(std::uint64_t seed, std::size_t length, const BfrParams& params);

void to_json(nlohmann::json& j, const NodeChoice& c);
void from_json(const nlohmann::json& j, NodeChoice& c);
void to_json(nlohmann::json& j, const TraceEvent& e);
void from_json(const nlohmann::json& j, TraceEvent& e);
void to_json(nlohmann::json& j, const Trace& t);
void from_json(const nlohmann::json& j, Trace& t);
void to_json(nlohmann::json& j, const SimReport& r);

}  // namespace bfr
