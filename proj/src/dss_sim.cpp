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

#include "bfr/dss_sim.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace bfr {
namespace {

std::string At(std::size_t i) { return "event " + std::to_string(i) + ": "; }

void Require(bool ok, const std::string& msg) {
  if (!ok) throw ParameterError(msg);
}

void CheckNodes(const BfrParams& p, const NodeChoice& c, std::size_t want, const std::string& where) {
  Require(c.nodes.size() == want, where + "block " + std::to_string(c.block) + " needs " +
                                      std::to_string(want) + " nodes");
  std::set<std::size_t> s(c.nodes.begin(), c.nodes.end());
  Require(s.size() == c.nodes.size(), where + "repeated node");
  Require(*s.rbegin() < p.c, where + "node index out of range");
}

std::vector<std::size_t> Sample(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

nlohmann::json FirstDifference(const Matrix& want, const Matrix& got) {
  for (std::size_t r = 0; r < want.rows(); ++r) {
    for (std::size_t c = 0; c < want.cols(); ++c) {
      if (want(r, c) != got(r, c)) {
        return {{"row", r}, {"lane", c}, {"expected", want(r, c)}, {"got", got(r, c)}};
      }
    }
  }
  return nullptr;
}

}  // namespace

void ValidateTrace(const BfrCode& code, const Trace& trace) {
  const BfrParams& p = code.params();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t dead = kNone;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& e = trace.events[i];
    const std::string where = At(i);
    if (i > 0) Require(e.time >= trace.events[i - 1].time, where + "time runs backwards");
    switch (e.kind) {
      case EventKind::kBlockFail:
        Require(e.block.has_value(), where + "failure without a block");
        Require(*e.block < p.b, where + "block out of range");
        Require(dead == kNone, where + "a block is already down");
        dead = *e.block;
        break;
      case EventKind::kRepairAll:
        Require(dead != kNone, where + "nothing to repair");
        Require(!e.block || *e.block == dead, where + "repair names a live block");
        if (e.choices) {
          Require(e.choices->size() == p.b_r, where + "repair needs b_r helper blocks");
          std::set<std::size_t> seen;
          for (const auto& c : *e.choices) {
            Require(c.block < p.b && c.block != dead, where + "helper block is not live");
            Require(seen.insert(c.block).second, where + "helper block repeated");
            CheckNodes(p, c, p.d_r, where);
          }
        }
        dead = kNone;
        break;
      case EventKind::kCollect:
        if (e.choices) {
          Require(e.choices->size() == p.b_c, where + "collection needs b_c blocks");
          std::set<std::size_t> seen;
          for (const auto& c : *e.choices) {
            Require(c.block < p.b && c.block != dead,
                    where + "collection reads a dead block");
            Require(seen.insert(c.block).second, where + "collection block repeated");
            CheckNodes(p, c, p.k_c, where);
          }
        } else {
          Require(p.b - (dead == kNone ? 0 : 1) >= p.b_c, where + "too few live blocks to collect");
        }
        break;
    }
  }
}

SimReport RunTrace(const BfrCode& code, const Matrix& file, const Trace& trace) {
  ValidateTrace(code, trace);
  const BfrParams& p = code.params();
  const SystemState reference = code.Encode(file);
  SystemState state = reference;
  SimReport rep;
  rep.gamma = p.gamma();
  std::optional<std::size_t> dead;
  for (std::size_t i = 0; i < trace.events.size() && rep.ok; ++i) {
    const auto& e = trace.events[i];
    switch (e.kind) {
      case EventKind::kBlockFail:
        code.FailBlock(state, *e.block);
        dead = *e.block;
        break;
      case EventKind::kRepairAll: {
        const std::size_t blk = *dead;
        const auto helpers = e.choices ? *e.choices : code.DefaultHelpers(state, blk);
        std::vector<Matrix> repaired;
        for (std::size_t node = 0; node < p.c; ++node) {
          const auto r = code.RepairNode(state, blk, node, helpers);
          ++rep.repairs;
          rep.ledger.repairs.push_back({e.time, blk, node, r.downloaded});
          rep.ledger.total += r.downloaded;
          if (r.content == reference.content[blk][node] && r.downloaded == rep.gamma) {
            ++rep.exact_repairs;
          } else {
            rep.ok = false;
            rep.counterexample = nlohmann::json{{"event", i},
                                                {"kind", "repair"},
                                                {"block", blk},
                                                {"node", node},
                                                {"helpers", helpers},
                                                {"downloaded", r.downloaded},
                                                {"gamma", rep.gamma},
                                                {"difference", FirstDifference(
                                                                   reference.content[blk][node],
                                                                   r.content)}};
            break;
          }
          repaired.push_back(r.content);
        }
        if (!rep.ok) break;
        for (std::size_t node = 0; node < p.c; ++node) {
          state.content[blk][node] = std::move(repaired[node]);
        }
        state.alive[blk] = true;
        dead.reset();
        break;
      }
      case EventKind::kCollect: {
        const auto choice = e.choices ? *e.choices : code.DefaultCollection(state);
        ++rep.collects;
        const Matrix got = code.Collect(state, choice);
        if (got == file) {
          ++rep.collect_successes;
        } else {
          rep.ok = false;
          rep.counterexample = nlohmann::json{{"event", i},
                                              {"kind", "collect"},
                                              {"choice", choice},
                                              {"difference", FirstDifference(file, got)}};
        }
        break;
      }
    }
  }
  return rep;
}

Trace RandomTrace(std::uint64_t seed, std::size_t length, const BfrParams& params) {
  std::mt19937_64 rng(seed);
  Trace t;
  t.seed = seed;
  std::optional<std::size_t> dead;
  for (std::size_t i = 0; i < length; ++i) {
    TraceEvent e;
    e.time = i;
    // With rho = 0 nothing can be collected while a block is down.
    const bool structural = rng() % 2 == 0 || (dead && params.b - 1 < params.b_c);
    if (structural && !dead) {
      e.kind = EventKind::kBlockFail;
      e.block = rng() % params.b;
      dead = e.block;
    } else if (structural && dead) {
      e.kind = EventKind::kRepairAll;
      e.block = dead;
      std::vector<NodeChoice> helpers;
      for (std::size_t blk = 0; blk < params.b; ++blk) {
        if (blk != *dead) helpers.push_back({blk, Sample(rng, params.c, params.d_r)});
      }
      e.choices = std::move(helpers);
      dead.reset();
    } else {
      e.kind = EventKind::kCollect;
      std::vector<std::size_t> live;
      for (std::size_t blk = 0; blk < params.b; ++blk) {
        if (!dead || blk != *dead) live.push_back(blk);
      }
      std::vector<NodeChoice> choice;
      for (std::size_t idx : Sample(rng, live.size(), params.b_c)) {
        choice.push_back({live[idx], Sample(rng, params.c, params.k_c)});
      }
      e.choices = std::move(choice);
    }
    t.events.push_back(std::move(e));
  }
  return t;
}

void to_json(nlohmann::json& j, const NodeChoice& c) {
  j = nlohmann::json{{"block", c.block}, {"nodes", c.nodes}};
}

void from_json(const nlohmann::json& j, NodeChoice& c) {
  j.at("block").get_to(c.block);
  j.at("nodes").get_to(c.nodes);
}

namespace {

const char* KindName(EventKind k) {
  switch (k) {
    case EventKind::kBlockFail: return "BlockFail";
    case EventKind::kRepairAll: return "RepairAll";
    case EventKind::kCollect: return "Collect";
  }
  return "?";
}

}  // namespace

void to_json(nlohmann::json& j, const TraceEvent& e) {
  j = nlohmann::json{{"time", e.time}, {"kind", KindName(e.kind)}};
  if (e.block) j["block"] = *e.block;
  if (e.choices) j["choices"] = *e.choices;
}

void from_json(const nlohmann::json& j, TraceEvent& e) {
  e = TraceEvent{};
  j.at("time").get_to(e.time);
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "BlockFail") {
    e.kind = EventKind::kBlockFail;
  } else if (kind == "RepairAll") {
    e.kind = EventKind::kRepairAll;
  } else if (kind == "Collect") {
    e.kind = EventKind::kCollect;
  } else {
    throw ParameterError("unknown trace event kind '" + kind + "'");
  }
  if (j.contains("block")) e.block = j.at("block").get<std::size_t>();
  if (j.contains("choices")) e.choices = j.at("choices").get<std::vector<NodeChoice>>();
}

void to_json(nlohmann::json& j, const Trace& t) {
  j = nlohmann::json{{"seed", t.seed}, {"events", t.events}};
}

void from_json(const nlohmann::json& j, Trace& t) {
  t.seed = j.value("seed", std::uint64_t{0});
  j.at("events").get_to(t.events);
}

void to_json(nlohmann::json& j, const SimReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.ledger.repairs) {
    entries.push_back(
        {{"time", e.time}, {"block", e.block}, {"node", e.node}, {"downloaded", e.downloaded}});
  }
  j = nlohmann::json{{"ok", r.ok},
                     {"collects", r.collects},
                     {"collect_successes", r.collect_successes},
                     {"repairs", r.repairs},
                     {"exact_repairs", r.exact_repairs},
                     {"gamma", r.gamma},
                     {"ledger", {{"repairs", entries}, {"total", r.ledger.total}}}};
  if (r.counterexample) j["counterexample"] = *r.counterexample;
}

}  // namespace bfr
