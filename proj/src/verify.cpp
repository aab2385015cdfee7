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

#include "bfr/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "bfr/bounds.hpp"
#include "bfr/dss_sim.hpp"

namespace bfr {
namespace {

// Above this many combinations the exhaustive level samples instead.
constexpr std::size_t kExhaustiveCap = 20000;
constexpr std::size_t kQuickSamples = 16;

std::vector<std::vector<std::size_t>> Subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i);
    }
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Calls fn on every tuple of indices into `sizes`, or on `samples` random
// tuples when the product exceeds the cap or `samples` is set.
template <typename Fn>
std::size_t ForTuples(const std::vector<std::size_t>& sizes, std::optional<std::size_t> samples,
                      std::mt19937_64& rng, Fn fn) {
  std::size_t total = 1;
  for (std::size_t s : sizes) total = std::min(kExhaustiveCap + 1, total * s);
  std::vector<std::size_t> idx(sizes.size(), 0);
  if (!samples && total <= kExhaustiveCap) {
    for (std::size_t n = 0; n < total; ++n) {
      if (!fn(idx)) return n + 1;
      for (std::size_t i = 0; i < idx.size() && ++idx[i] == sizes[i]; ++i) idx[i] = 0;
    }
    return total;
  }
  const std::size_t count = samples.value_or(kExhaustiveCap);
  for (std::size_t n = 0; n < count; ++n) {
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = rng() % sizes[i];
    if (!fn(idx)) return n + 1;
  }
  return count;
}

VerifyCheck Named(std::string name) {
  VerifyCheck c;
  c.name = std::move(name);
  return c;
}

nlohmann::json Diff(const Matrix& want, const Matrix& got) {
  for (std::size_t r = 0; r < want.rows(); ++r) {
    for (std::size_t c = 0; c < want.cols(); ++c) {
      if (want(r, c) != got(r, c)) {
        return {{"row", r}, {"lane", c}, {"expected", want(r, c)}, {"got", got(r, c)}};
      }
    }
  }
  return nullptr;
}

Matrix RandomFile(const BfrCode& code, std::mt19937_64& rng) {
  Matrix f(code.field(), code.params().M, code.lane_multiple());
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < f.cols(); ++c) f(r, c) = static_cast<Symbol>(rng() & code.field()->order());
  }
  return f;
}

bool IsProjectivePlane(const Design& d) {
  const std::size_t p = d.kappa - 1;
  return p >= 2 && d.v == p * p + p + 1 && d.blocks.size() == d.v;
}

VerifyCheck CheckDesign(const BfrParams& p) {
  VerifyCheck c = Named("design");
  if (!p.design) {
    c.detail = "no placement design";
    return c;
  }
  const auto& d = *p.design;
  const BibdReport rep = ValidateBibd(d, d.v, d.kappa, 1);
  if (!rep.ok) {
    c.ok = false;
    c.detail = rep.violations.front();
    c.counterexample = {{"violations", rep.violations}};
    return c;
  }
  c.detail = "(" + std::to_string(d.v) + ", " + std::to_string(d.kappa) + ", 1) design";
  return c;
}

VerifyCheck CheckRepair(const BfrCode& code, const SystemState& state, VerifyLevel level,
                        std::mt19937_64& rng) {
  VerifyCheck c = Named("exact-repair");
  const auto& p = code.params();
  const auto helper_sets = Subsets(p.c, p.d_r);
  std::size_t repairs = 0;
  for (std::size_t blk = 0; blk < p.b && c.ok; ++blk) {
    SystemState broken = state;
    code.FailBlock(broken, blk);
    std::vector<std::size_t> others;
    for (std::size_t o = 0; o < p.b; ++o) {
      if (o != blk) others.push_back(o);
    }
    for (std::size_t node = 0; node < p.c && c.ok; ++node) {
      std::optional<std::size_t> samples;
      if (level == VerifyLevel::kQuick) samples = 2;
      repairs += ForTuples(
          std::vector<std::size_t>(others.size(), helper_sets.size()), samples, rng,
          [&](const std::vector<std::size_t>& idx) {
            std::vector<NodeChoice> helpers;
            for (std::size_t i = 0; i < others.size(); ++i) {
              helpers.push_back({others[i], helper_sets[idx[i]]});
            }
            nlohmann::json ce;
            try {
              const RepairResult r = code.RepairNode(broken, blk, node, helpers);
              if (r.content == state.content[blk][node]) return true;
              ce = {{"block", blk}, {"node", node}, {"helpers", helpers},
                    {"difference", Diff(state.content[blk][node], r.content)}};
            } catch (const Error& e) {
              ce = {{"block", blk}, {"node", node}, {"helpers", helpers}, {"error", e.what()}};
            }
            c.ok = false;
            c.detail = "repair of node (" + std::to_string(blk) + ", " + std::to_string(node) +
                       ") is not exact";
            c.counterexample = ce;
            return false;
          });
    }
  }
  if (c.ok) c.detail = std::to_string(repairs) + " repairs bit-identical";
  return c;
}

VerifyCheck CheckLedger(const BfrCode& code, const Matrix& file, std::uint64_t seed) {
  VerifyCheck c = Named("bandwidth-ledger");
  const auto& p = code.params();
  Trace t;
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    t.events.push_back({2 * blk, EventKind::kBlockFail, blk, {}});
    t.events.push_back({2 * blk + 1, EventKind::kRepairAll, blk, {}});
  }
  const Trace rnd = RandomTrace(seed, 20, p);
  for (auto e : rnd.events) {
    e.time += 2 * p.b;
    t.events.push_back(e);
  }
  SimReport rep;
  try {
    rep = RunTrace(code, file, t);
  } catch (const Error& e) {
    c.ok = false;
    c.detail = e.what();
    return c;
  }
  for (const auto& e : rep.ledger.repairs) {
    if (e.downloaded != p.gamma()) {
      c.ok = false;
      c.detail = "repair downloaded " + std::to_string(e.downloaded) + " symbols, gamma is " +
                 std::to_string(p.gamma());
      c.counterexample = {{"block", e.block}, {"node", e.node}, {"downloaded", e.downloaded}};
      return c;
    }
  }
  if (!rep.ok) {
    c.ok = false;
    c.detail = "trace replay failed";
    c.counterexample = rep.counterexample.value_or(nullptr);
    return c;
  }
  c.detail = std::to_string(rep.repairs) + " node repairs at gamma = " + std::to_string(p.gamma());
  return c;
}

VerifyCheck CheckCollection(const BfrCode& code, const SystemState& state, const Matrix& file,
                            VerifyLevel level, std::mt19937_64& rng) {
  VerifyCheck c = Named("collection");
  const auto& p = code.params();
  const auto block_sets = Subsets(p.b, p.b_c);
  const auto node_sets = Subsets(p.c, p.k_c);
  std::optional<std::size_t> samples;
  if (level == VerifyLevel::kQuick) samples = kQuickSamples;
  std::vector<std::size_t> sizes(p.b_c + 1, node_sets.size());
  sizes[0] = block_sets.size();
  const std::size_t n = ForTuples(sizes, samples, rng, [&](const std::vector<std::size_t>& idx) {
    std::vector<NodeChoice> choice;
    for (std::size_t i = 0; i < p.b_c; ++i) {
      choice.push_back({block_sets[idx[0]][i], node_sets[idx[i + 1]]});
    }
    nlohmann::json ce;
    try {
      const Matrix got = code.Collect(state, choice);
      if (got == file) return true;
      ce = {{"choice", choice}, {"difference", Diff(file, got)}};
    } catch (const Error& e) {
      ce = {{"choice", choice}, {"error", e.what()}};
    }
    c.ok = false;
    c.detail = "collection returned the wrong file";
    c.counterexample = ce;
    return false;
  });
  if (c.ok) c.detail = std::to_string(n) + " collections recovered the file";
  return c;
}

VerifyCheck CheckPsi(const SystemDescriptor& desc, const BfrCode& code) {
  VerifyCheck c = Named("psi-structure");
  if (!code.sub_code()) {
    c.detail = "no sub-code";
    return c;
  }
  auto defects = code.sub_code()->StructuralDefects();
  if (desc.psi_generator && desc.params.sub->kind != CodeKind::kMds &&
      *desc.psi_generator == code.field()->Exp(1)) {
    const Matrix want = DefaultPsi(code.field(), *desc.params.sub);
    const Matrix& got = code.sub_code()->psi();
    if (!(want == got)) {
      const nlohmann::json d = Diff(want, got);
      defects.push_back("Psi differs from the Vandermonde matrix of its generator at row " +
                        d["row"].dump() + ", column " + d["lane"].dump());
    }
  }
  if (!defects.empty()) {
    c.ok = false;
    c.detail = defects.front();
    c.counterexample = {{"defects", defects}};
  } else {
    c.detail = "all non-degeneracy conditions hold";
  }
  return c;
}

VerifyCheck CheckOperatingPoint(const BfrParams& p, nlohmann::json& measured) {
  VerifyCheck c = Named("operating-point");
  const Rational M(static_cast<std::int64_t>(p.M));
  const Rational alpha(static_cast<std::int64_t>(p.alpha));
  const Rational gamma(static_cast<std::int64_t>(p.gamma()));
  measured["alpha"] = p.alpha;
  measured["gamma"] = p.gamma();
  measured["M"] = p.M;
  if (p.construction == Construction::kGabidulinPlane) {
    c.informational = true;
    c.detail = "M counts extension symbols; reported without a bound comparison";
    return c;
  }
  const auto msr = MsrPoint(p.b, p.k, p.d, M, p.rho);
  const auto mbr = MbrPoint(p.b, p.k, p.d, M, p.rho);
  measured["bound_msr"] = {{"alpha", ToString(msr.alpha)}, {"gamma", ToString(msr.gamma)}};
  measured["bound_mbr"] = {{"alpha", ToString(mbr.alpha)}, {"gamma", ToString(mbr.gamma)}};
  const bool at_msr = msr.alpha == alpha && msr.gamma == gamma;
  const bool at_mbr = mbr.alpha == alpha && mbr.gamma == gamma;
  if (at_msr || at_mbr) {
    c.detail = std::string("(alpha, gamma) equals the ") + (at_msr ? "MSR" : "MBR") + " point";
    measured["point"] = at_msr ? "msr" : "mbr";
    return c;
  }
  c.ok = false;
  c.detail = "(alpha, gamma) = (" + std::to_string(p.alpha) + ", " + std::to_string(p.gamma()) +
             ") is at neither bound point";
  c.counterexample = measured;
  // Only the transpose and projective-plane placements claim an extreme point.
  const bool claims = p.construction == Construction::kTranspose ||
                      (p.design && IsProjectivePlane(*p.design) &&
                       p.sub->kind != CodeKind::kMds);
  c.informational = !claims;
  return c;
}

VerifyCheck CheckOracle(const BfrParams& p, nlohmann::json& measured) {
  VerifyCheck c = Named("flow-oracle");
  if (p.construction == Construction::kGabidulinPlane) {
    c.informational = true;
    c.detail = "skipped for the rank-metric layer";
    return c;
  }
  const Rational alpha(static_cast<std::int64_t>(p.alpha));
  const Rational beta(static_cast<std::int64_t>(p.beta));
  const Rational closed = FilesizeBoundGeneral(p.b, p.k, p.d, alpha, beta);
  const OrderMinimum flow = MinOverFailureOrders(p.b, p.k, p.d, alpha, beta);
  measured["oracle"] = {{"closed_form", ToString(closed)},
                        {"max_flow", ToString(flow.value)},
                        {"orders", flow.orders}};
  if (!(flow.value == closed)) {
    c.ok = false;
    c.detail = "max-flow " + ToString(flow.value) + " differs from the closed form " +
               ToString(closed);
    c.counterexample = {{"order", flow.order}};
    return c;
  }
  c.detail = "max-flow over " + std::to_string(flow.orders) + " failure orders equals " +
             ToString(closed);
  if (!(closed == Rational(static_cast<std::int64_t>(p.M)))) {
    c.detail += "; M = " + std::to_string(p.M) + " is below the bound";
  }
  return c;
}

struct Mismatch {
  std::size_t block = 0;
  std::size_t node = 0;
  RepairResult repair;
  std::vector<NodeChoice> helpers;
};

// First stored node that differs from its repair by default helpers.
std::optional<Mismatch> FirstMismatch(const BfrCode& code, const SystemState& s) {
  const auto& p = code.params();
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    SystemState broken = s;
    code.FailBlock(broken, blk);
    const auto helpers = code.DefaultHelpers(broken, blk);
    for (std::size_t node = 0; node < p.c; ++node) {
      RepairResult r = code.RepairNode(broken, blk, node, helpers);
      if (!(r.content == s.content[blk][node])) return Mismatch{blk, node, std::move(r), helpers};
    }
  }
  return std::nullopt;
}

VerifyCheck CheckShards(const BfrCode& code, const StoredSystem& stored) {
  VerifyCheck c = Named("shard-audit");
  const auto& p = code.params();
  const SystemState& s = stored.state;
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    if (!s.alive[blk]) {
      c.ok = false;
      c.detail = "block " + std::to_string(blk) + " has no shards";
      c.counterexample = {{"block", blk}};
      return c;
    }
  }
  const auto first = FirstMismatch(code, s);
  if (!first) {
    c.detail = "every stored node equals its repair from the other blocks";
    return c;
  }
  c.ok = false;
  // Localise: the corrupted node is one whose replacement by its repair
  // makes every other node consistent again.
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    SystemState broken = s;
    code.FailBlock(broken, blk);
    const auto helpers = code.DefaultHelpers(broken, blk);
    for (std::size_t node = 0; node < p.c; ++node) {
      const RepairResult r = code.RepairNode(broken, blk, node, helpers);
      if (r.content == s.content[blk][node]) continue;
      SystemState fixed = s;
      fixed.content[blk][node] = r.content;
      if (FirstMismatch(code, fixed)) continue;
      c.detail = "stored node (" + std::to_string(blk) + ", " + std::to_string(node) +
                 ") is corrupted";
      c.counterexample = {{"block", blk}, {"node", node}, {"helpers", helpers},
                          {"difference", Diff(r.content, s.content[blk][node])}};
      return c;
    }
  }
  c.detail = "stored node (" + std::to_string(first->block) + ", " + std::to_string(first->node) +
             ") disagrees with its repair";
  c.counterexample = {{"block", first->block}, {"node", first->node}, {"helpers", first->helpers},
                      {"difference", Diff(first->repair.content, s.content[first->block][first->node])}};
  return c;
}

}  // namespace

VerifyLevel VerifyLevelFromString(const std::string& s) {
  if (s == "quick") return VerifyLevel::kQuick;
  if (s == "exhaustive") return VerifyLevel::kExhaustive;
  throw ParameterError("unknown verify level '" + s + "'");
}

const VerifyCheck* VerifyReport::FirstFailure() const {
  for (const auto& c : checks) {
    if (!c.ok && !c.informational) return &c;
  }
  return nullptr;
}

VerifyReport Verify(const SystemDescriptor& desc, VerifyLevel level, std::uint64_t seed,
                    const std::optional<StoredSystem>& stored) {
  VerifyReport rep;
  auto finish = [&rep]() {
    rep.ok = rep.FirstFailure() == nullptr;
    return rep;
  };
  rep.checks.push_back(CheckDesign(desc.params));
  if (!rep.checks.back().ok) return finish();

  std::optional<BfrCode> code;
  try {
    code.emplace(DescriptorField(desc), desc.params, desc.psi);
    rep.checks.push_back({"parameters", true, false, "consistent", nullptr});
  } catch (const Error& e) {
    rep.checks.push_back({"parameters", false, false, e.what(), nullptr});
    return finish();
  }

  std::mt19937_64 rng(seed);
  const Matrix file = RandomFile(*code, rng);
  const SystemState state = code->Encode(file);
  rep.checks.push_back(CheckRepair(*code, state, level, rng));
  rep.checks.push_back(CheckLedger(*code, file, seed));
  rep.checks.push_back(CheckCollection(*code, state, file, level, rng));
  rep.checks.push_back(CheckPsi(desc, *code));
  rep.checks.push_back(CheckOperatingPoint(desc.params, rep.measured));
  rep.checks.push_back(CheckOracle(desc.params, rep.measured));
  if (stored) rep.checks.push_back(CheckShards(*code, *stored));
  return finish();
}

void to_json(nlohmann::json& j, const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json e = {{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}};
    if (c.informational) e["informational"] = true;
    if (!c.counterexample.is_null()) e["counterexample"] = c.counterexample;
    checks.push_back(e);
  }
  j = nlohmann::json{{"ok", r.ok}, {"checks", checks}, {"measured", r.measured}};
  if (const VerifyCheck* f = r.FirstFailure()) {
    j["counterexample"] = {{"check", f->name}, {"detail", f->detail}, {"data", f->counterexample}};
  }
}

}  // namespace bfr
