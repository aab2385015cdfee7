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

#include "bfr/bfr_code.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "bfr/gabidulin.hpp"

namespace bfr {
namespace {

std::string Str(std::size_t v) { return std::to_string(v); }

[[noreturn]] void Bad(const std::string& msg) { throw ParameterError(msg); }

void Require(bool ok, const std::string& msg) {
  if (!ok) Bad(msg);
}

// Fills the derived counts from the primary ones.
void Derive(BfrParams& p) {
  Require(p.b >= 2, "need at least two blocks");
  Require(p.rho < p.b, "rho must be below b (rho=" + Str(p.rho) + ", b=" + Str(p.b) + ")");
  Require(p.sigma == 1, "only sigma = 1 is supported");
  p.c = p.n / p.b;
  p.b_c = p.b - p.rho;
  p.k_c = p.k / p.b_c;
  p.b_r = p.b - p.sigma;
  p.d_r = p.d / p.b_r;
}

std::size_t SubNodesPerBlock(const Design& design, const RegenParams& sub) {
  const std::size_t r = design.r();
  Require(r >= 2, "design replication degree must be at least 2");
  Require(sub.n_sub % r == 0, "r=" + Str(r) + " must divide n_sub=" + Str(sub.n_sub));
  Require(sub.d_sub % (r - 1) == 0, "r-1=" + Str(r - 1) + " must divide d_sub=" + Str(sub.d_sub));
  return sub.n_sub / r;
}

void CheckPlacementDesign(const Design& design) {
  const BibdReport rep = ValidateBibd(design, design.v, design.kappa, 1);
  if (!rep.ok) Bad("placement design is not a (v, kappa, 1) design: " + rep.violations.front());
  Require(design.blocks.size() == design.v, "placement design must have as many blocks as points");
  for (std::size_t i = 0; i < design.blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < design.blocks.size(); ++j) CommonPoint(design, i, j);
  }
}

}  // namespace

std::string ToString(Construction c) {
  switch (c) {
    case Construction::kTranspose: return "transpose";
    case Construction::kPlane: return "plane";
    case Construction::kGabidulinPlane: return "gabidulin-plane";
  }
  return "?";
}

Construction ConstructionFromString(const std::string& s) {
  if (s == "transpose") return Construction::kTranspose;
  if (s == "plane") return Construction::kPlane;
  if (s == "gabidulin-plane" || s == "gabidulin") return Construction::kGabidulinPlane;
  Bad("unknown construction '" + s + "'");
}

void BfrParams::Validate() const {
  BfrParams p = *this;
  Derive(p);
  Require(n % b == 0, "b=" + Str(b) + " must divide n=" + Str(n));
  Require(k % p.b_c == 0, "b_c=" + Str(p.b_c) + " must divide k=" + Str(k));
  Require(d % p.b_r == 0, "b_r=" + Str(p.b_r) + " must divide d=" + Str(d));
  Require(p.c == c && p.b_c == b_c && p.k_c == k_c && p.b_r == b_r && p.d_r == d_r,
          "derived parameters (c, b_c, k_c, b_r, d_r) are inconsistent");
  Require(M > 0, "file size M must be positive");
  Require(k_c >= 1, "k_c must be positive");
  Require(k_c <= c, "k_c=" + Str(k_c) + " exceeds c=" + Str(c));
  Require(d_r <= c, "d_r=" + Str(d_r) + " exceeds c=" + Str(c));
  Require(d_r >= k_c, "d_r=" + Str(d_r) + " must be at least k_c=" + Str(k_c));
  Require(alpha > 0 && beta > 0, "alpha and beta must be positive");

  if (construction == Construction::kTranspose) {
    Require(b == 2 && rho == 0, "transpose code has b = 2, rho = 0");
    Require(alpha == c && d == c && beta == 1, "transpose code has alpha = d = n/2, beta = 1");
    Require(M == k * d - (k / 2) * (k / 2), "transpose code has M = k d - (k/2)^2");
    Require(!sub && !design, "transpose code takes no sub-code or design");
    return;
  }
  Require(sub.has_value() && design.has_value(), "plane constructions need a sub-code and design");
  sub->Validate();
  const std::size_t r = design->r();
  Require(design->blocks.size() == b, "b must equal the design's block count");
  Require(c == SubNodesPerBlock(*design, *sub), "c must equal n_sub / r");
  Require(alpha == design->kappa * sub->alpha_sub, "alpha must equal kappa alpha_sub");
  Require(d == design->kappa * sub->d_sub, "d must equal kappa d_sub");
  Require(beta == sub->beta_sub, "beta must equal beta_sub");
  Require(d_r == sub->d_sub / (r - 1), "d_r must equal d_sub / (r - 1)");
  if (construction == Construction::kPlane) {
    Require(rho == 0, "plain plane placement has rho = 0");
    Require(sub->k_sub % r == 0, "r=" + Str(r) + " must divide k_sub=" + Str(sub->k_sub));
    Require(k == b * (sub->k_sub / r), "k must equal (b / r) k_sub");
    Require(M == design->v * sub->msg_size, "M must equal v M_sub");
    Require(gab_n == 0 && gab_k == 0 && ext_degree == 0, "plain plane placement has no outer code");
  } else {
    Require(rho >= 1, "Gabidulin placement needs rho >= 1");
    Require(gab_n == design->v * sub->msg_size, "N must equal v M_sub");
    Require(gab_k == M && M <= gab_n, "K must equal M and not exceed N");
    Require(ext_degree >= gab_n, "extension degree m must be at least N");
  }
}

BfrParams BuildTranspose(std::size_t n, std::size_t k) {
  Require(n % 2 == 0 && n > 0, "transpose code needs even n, got " + Str(n));
  Require(k % 2 == 0 && k > 0, "transpose code needs even k, got " + Str(k));
  Require(k / 2 <= n / 2, "transpose code needs k/2 <= n/2");
  BfrParams p;
  p.construction = Construction::kTranspose;
  p.n = n;
  p.b = 2;
  p.k = k;
  p.alpha = p.d = n / 2;
  p.beta = 1;
  p.M = k * p.d - (k / 2) * (k / 2);
  Require(p.M > 0, "degenerate transpose code with M = 0");
  Derive(p);
  p.Validate();
  return p;
}

BfrParams BuildDesignPlacement(const Design& design, const RegenParams& sub) {
  sub.Validate();
  CheckPlacementDesign(design);
  const std::size_t r = design.r();
  BfrParams p;
  p.construction = Construction::kPlane;
  p.b = design.blocks.size();
  p.c = SubNodesPerBlock(design, sub);
  Require(sub.k_sub % r == 0, "r=" + Str(r) + " must divide k_sub=" + Str(sub.k_sub));
  p.n = p.b * p.c;
  p.M = design.v * sub.msg_size;
  p.k = p.b * (sub.k_sub / r);
  p.d = design.kappa * sub.d_sub;
  p.alpha = design.kappa * sub.alpha_sub;
  p.beta = sub.beta_sub;
  p.sub = sub;
  p.design = design;
  Derive(p);
  p.Validate();
  return p;
}

BfrParams BuildPlanePlacement(std::size_t p, const RegenParams& sub) {
  return BuildDesignPlacement(BuildProjectivePlane(p), sub);
}

BfrParams BuildGabidulinPlane(std::size_t p, const RegenParams& sub, std::size_t rho,
                              std::optional<std::size_t> k_c) {
  if (rho == 0) return BuildPlanePlacement(p, sub);
  sub.Validate();
  const Design design = BuildProjectivePlane(p);
  const std::size_t b = design.blocks.size(), r = design.r();
  Require(rho < b, "rho=" + Str(rho) + " leaves no block to collect from (b=" + Str(b) + ")");
  if (!k_c) {
    Require(sub.k_sub % r == 0, "default k_c = k_sub / r needs r | k_sub; pass k_c explicitly");
    k_c = sub.k_sub / r;
  }
  BfrParams out;
  out.construction = Construction::kGabidulinPlane;
  out.b = b;
  out.c = SubNodesPerBlock(design, sub);
  out.n = b * out.c;
  out.rho = rho;
  out.k = *k_c * (b - rho);
  out.d = design.kappa * sub.d_sub;
  out.alpha = design.kappa * sub.alpha_sub;
  out.beta = sub.beta_sub;
  out.sub = sub;
  out.design = design;
  const MinRankReport rep = MinRankOverCollections(design, sub, rho, *k_c);
  Require(rep.min_rank > 0, "no K > 0 is feasible for rho=" + Str(rho));
  out.gab_n = design.v * sub.msg_size;
  out.gab_k = out.M = rep.min_rank;
  out.ext_degree = out.gab_n;
  Derive(out);
  out.Validate();
  return out;
}

BfrCode::BfrCode(FieldPtr field, BfrParams params, std::optional<Matrix> psi)
    : field_(std::move(field)), params_(std::move(params)) {
  params_.Validate();
  if (params_.construction == Construction::kTranspose) {
    if (psi) Bad("transpose code takes no Psi");
    rs_.emplace(field_, params_.alpha * params_.alpha, params_.M);
    return;
  }
  sub_ = MakeRegeneratingCode(field_, *params_.sub, std::move(psi));
  sub_generator_ = sub_->Generator();
  for (std::size_t t = 0; t < params_.design->v; ++t) {
    through_.push_back(BlocksThroughPoint(*params_.design, t));
  }
  if (params_.construction == Construction::kGabidulinPlane) {
    ext_ = ExtensionField::Create(field_, params_.ext_degree);
  }
}

std::size_t BfrCode::PartPosition(std::size_t part, std::size_t block) const {
  const auto& th = through_.at(part);
  const auto it = std::find(th.begin(), th.end(), block);
  if (it == th.end()) Bad("block " + Str(block) + " does not contain part " + Str(part));
  return static_cast<std::size_t>(it - th.begin());
}

std::vector<SubNodeRef> BfrCode::Placement(std::size_t block, std::size_t node) const {
  if (block >= params_.b || node >= params_.c) {
    Bad("node (" + Str(block) + ", " + Str(node) + ") out of range");
  }
  std::vector<SubNodeRef> out;
  if (params_.construction == Construction::kTranspose) return out;
  for (std::size_t t : params_.design->blocks[block]) {
    out.push_back({t, PartPosition(t, block) * params_.c + node});
  }
  return out;
}

void BfrCode::CheckState(const SystemState& state) const {
  Require(state.content.size() == params_.b && state.alive.size() == params_.b,
          "system state has the wrong block count");
  for (const auto& blk : state.content) {
    Require(blk.size() == params_.c, "system state has the wrong node count");
    for (const auto& node : blk) {
      Require(node.rows() == params_.alpha && node.cols() == state.lanes,
              "system state node has the wrong shape");
    }
  }
}

SystemState BfrCode::Encode(const Matrix& file) const {
  Require(file.rows() == params_.M,
          "file has " + Str(file.rows()) + " symbols, expected M=" + Str(params_.M));
  if (!file.field()->SameField(*field_)) throw FieldMismatchError("file is over a different field");
  Require(file.cols() > 0 && file.cols() % lane_multiple() == 0,
          "lane count must be a positive multiple of " + Str(lane_multiple()));
  SystemState state;
  state.lanes = file.cols();
  state.alive.assign(params_.b, true);
  const std::size_t a = params_.alpha;
  if (params_.construction == Construction::kTranspose) {
    const Matrix cw = rs_->Encode(file);
    state.content.assign(2, {});
    for (std::size_t i = 0; i < a; ++i) {
      Matrix row(field_, a, file.cols()), col(field_, a, file.cols());
      for (std::size_t j = 0; j < a; ++j) {
        row.SetRows(j, cw.Block(i * a + j, 0, 1, file.cols()));
        col.SetRows(j, cw.Block(j * a + i, 0, 1, file.cols()));
      }
      state.content[0].push_back(std::move(row));
      state.content[1].push_back(std::move(col));
    }
    return state;
  }
  Matrix parts = file;
  if (params_.construction == Construction::kGabidulinPlane) {
    parts = GabEncodeStripes(ext_, file, BasisPoints(ext_, params_.gab_n));
  }
  const RegenParams& sp = *params_.sub;
  std::vector<std::vector<Matrix>> sub_nodes;
  for (std::size_t t = 0; t < params_.design->v; ++t) {
    sub_nodes.push_back(sub_->Encode(parts.Block(t * sp.msg_size, 0, sp.msg_size, parts.cols())));
  }
  state.content.assign(params_.b, {});
  for (std::size_t blk = 0; blk < params_.b; ++blk) {
    for (std::size_t node = 0; node < params_.c; ++node) {
      Matrix content(field_, a, parts.cols());
      const auto place = Placement(blk, node);
      for (std::size_t s = 0; s < place.size(); ++s) {
        content.SetRows(s * sp.alpha_sub, sub_nodes[place[s].part][place[s].sub_node]);
      }
      state.content[blk].push_back(std::move(content));
    }
  }
  return state;
}

void BfrCode::FailBlock(SystemState& state, std::size_t block) const {
  CheckState(state);
  Require(block < params_.b, "block " + Str(block) + " out of range");
  Require(state.alive[block], "block " + Str(block) + " is already dead");
  const auto dead = std::count(state.alive.begin(), state.alive.end(), false);
  Require(static_cast<std::size_t>(dead) < params_.sigma,
          "at most sigma=" + Str(params_.sigma) + " block may be dead at once");
  state.alive[block] = false;
  for (auto& node : state.content[block]) node = Matrix(field_, params_.alpha, state.lanes);
}

std::vector<NodeChoice> BfrCode::DefaultCollection(const SystemState& state) const {
  CheckState(state);
  std::vector<NodeChoice> out;
  for (std::size_t blk = 0; blk < params_.b && out.size() < params_.b_c; ++blk) {
    if (!state.alive[blk]) continue;
    NodeChoice c{blk, {}};
    for (std::size_t i = 0; i < params_.k_c; ++i) c.nodes.push_back(i);
    out.push_back(std::move(c));
  }
  Require(out.size() == params_.b_c, "fewer than b_c live blocks");
  return out;
}

Matrix BfrCode::Collect(const SystemState& state, std::span<const NodeChoice> choice) const {
  CheckState(state);
  Require(choice.size() == params_.b_c,
          "collection needs exactly b_c=" + Str(params_.b_c) + " blocks, got " + Str(choice.size()));
  std::set<std::size_t> blocks;
  for (const auto& c : choice) {
    Require(c.block < params_.b, "block " + Str(c.block) + " out of range");
    Require(blocks.insert(c.block).second, "block " + Str(c.block) + " chosen twice");
    Require(state.alive[c.block], "block " + Str(c.block) + " is dead");
    Require(c.nodes.size() == params_.k_c, "collection needs exactly k_c=" + Str(params_.k_c) +
                                               " nodes in block " + Str(c.block));
    const std::set<std::size_t> uniq(c.nodes.begin(), c.nodes.end());
    Require(uniq.size() == c.nodes.size(), "duplicate node in block " + Str(c.block));
    Require(*uniq.rbegin() < params_.c, "node index out of range in block " + Str(c.block));
  }
  switch (params_.construction) {
    case Construction::kTranspose: return CollectTranspose(state, choice);
    case Construction::kPlane: return CollectPlane(state, choice);
    case Construction::kGabidulinPlane: return CollectGabidulin(state, choice);
  }
  Bad("unknown construction");
}

Matrix BfrCode::CollectTranspose(const SystemState& state,
                                 std::span<const NodeChoice> choice) const {
  const std::size_t a = params_.alpha;
  std::vector<std::size_t> positions;
  std::vector<const Symbol*> rows;
  std::set<std::size_t> seen;
  for (const auto& c : choice) {
    for (std::size_t node : c.nodes) {
      for (std::size_t j = 0; j < a; ++j) {
        const std::size_t pos = c.block == 0 ? node * a + j : j * a + node;
        if (seen.insert(pos).second) {
          positions.push_back(pos);
          rows.push_back(state.content[c.block][node].row(j).data());
        }
      }
    }
  }
  if (positions.size() < params_.M) {
    throw InsufficientRankError("collected " + Str(positions.size()) + " distinct symbols, need " +
                                Str(params_.M));
  }
  Matrix values(field_, positions.size(), state.lanes);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i], rows[i] + state.lanes, values.row(i).begin());
  }
  return rs_->Decode(positions, values);
}

Matrix BfrCode::CollectPlane(const SystemState& state, std::span<const NodeChoice> choice) const {
  const RegenParams& sp = *params_.sub;
  std::vector<std::vector<std::size_t>> ids(params_.design->v);
  std::vector<std::vector<Matrix>> contents(params_.design->v);
  for (const auto& c : choice) {
    for (std::size_t node : c.nodes) {
      const auto place = Placement(c.block, node);
      for (std::size_t s = 0; s < place.size(); ++s) {
        auto& id = ids[place[s].part];
        if (id.size() == sp.k_sub) continue;
        id.push_back(place[s].sub_node);
        contents[place[s].part].push_back(
            state.content[c.block][node].Block(s * sp.alpha_sub, 0, sp.alpha_sub, state.lanes));
      }
    }
  }
  Matrix file(field_, params_.M, state.lanes);
  for (std::size_t t = 0; t < params_.design->v; ++t) {
    if (ids[t].size() < sp.k_sub) {
      throw InsufficientRankError("part " + Str(t) + " reached by " + Str(ids[t].size()) +
                                  " sub-nodes, need " + Str(sp.k_sub));
    }
    file.SetRows(t * sp.msg_size, sub_->Collect(ids[t], contents[t]));
  }
  return file;
}

std::vector<Symbol> BfrCode::StoredPoint(std::size_t block, std::size_t node,
                                         std::size_t row) const {
  Require(params_.construction != Construction::kTranspose, "transpose code has no point map");
  const RegenParams& sp = *params_.sub;
  Require(row < params_.alpha, "row out of range");
  const auto place = Placement(block, node).at(row / sp.alpha_sub);
  const std::size_t width = ext_ ? ext_->degree() : params_.design->v * sp.msg_size;
  std::vector<Symbol> out(width, 0);
  const auto g = sub_generator_.row(place.sub_node * sp.alpha_sub + row % sp.alpha_sub);
  std::copy(g.begin(), g.end(), out.begin() + static_cast<std::ptrdiff_t>(place.part * sp.msg_size));
  return out;
}

Matrix BfrCode::CollectGabidulin(const SystemState& state,
                                 std::span<const NodeChoice> choice) const {
  std::vector<ExtElement> points;
  std::size_t count = 0;
  for (const auto& c : choice) count += c.nodes.size() * params_.alpha;
  Matrix values(field_, count, state.lanes);
  std::size_t r = 0;
  for (const auto& c : choice) {
    for (std::size_t node : c.nodes) {
      for (std::size_t row = 0; row < params_.alpha; ++row) {
        points.push_back(ext_->FromCoords(StoredPoint(c.block, node, row)));
        values.SetRows(r++, state.content[c.block][node].Block(row, 0, 1, state.lanes));
      }
    }
  }
  return GabDecodeStripes(ext_, points, values, params_.gab_k);
}

std::vector<NodeChoice> BfrCode::DefaultHelpers(const SystemState& state,
                                                std::size_t block) const {
  CheckState(state);
  std::vector<NodeChoice> out;
  for (std::size_t blk = 0; blk < params_.b; ++blk) {
    if (blk == block) continue;
    Require(state.alive[blk], "helper block " + Str(blk) + " is dead");
    NodeChoice c{blk, {}};
    for (std::size_t i = 0; i < params_.d_r; ++i) c.nodes.push_back(i);
    out.push_back(std::move(c));
  }
  return out;
}

RepairResult BfrCode::RepairNode(const SystemState& state, std::size_t block, std::size_t node,
                                 std::span<const NodeChoice> helpers) const {
  CheckState(state);
  Require(block < params_.b && node < params_.c, "failed node out of range");
  Require(helpers.size() == params_.b_r, "repair needs helpers from exactly b_r=" +
                                             Str(params_.b_r) + " blocks, got " +
                                             Str(helpers.size()));
  std::set<std::size_t> blocks;
  for (const auto& h : helpers) {
    Require(h.block < params_.b, "helper block out of range");
    Require(h.block != block, "failed block cannot help its own repair");
    Require(blocks.insert(h.block).second, "helper block " + Str(h.block) + " chosen twice");
    Require(state.alive[h.block], "helper block " + Str(h.block) + " is dead");
    Require(h.nodes.size() == params_.d_r, "repair needs exactly d_r=" + Str(params_.d_r) +
                                               " helpers in block " + Str(h.block));
    const std::set<std::size_t> uniq(h.nodes.begin(), h.nodes.end());
    Require(uniq.size() == h.nodes.size(), "duplicate helper in block " + Str(h.block));
    Require(*uniq.rbegin() < params_.c, "helper index out of range in block " + Str(h.block));
  }

  RepairResult out;
  out.content = Matrix(field_, params_.alpha, state.lanes);
  if (params_.construction == Construction::kTranspose) {
    // Row i of block 0 and column j of block 1 meet in x_{i,j}: helper h
    // sends its entry at the failed node's index, which becomes row h.
    for (std::size_t h : helpers[0].nodes) {
      const Matrix& src = state.content[helpers[0].block][h];
      out.content.SetRows(h, src.Block(node, 0, 1, state.lanes));
      out.per_helper.push_back(1);
      out.downloaded += 1;
    }
    return out;
  }

  const RegenParams& sp = *params_.sub;
  const auto lost = Placement(block, node);
  for (std::size_t s = 0; s < lost.size(); ++s) {
    const std::size_t t = lost[s].part;
    std::vector<std::size_t> ids;
    std::vector<Matrix> messages;
    for (const auto& h : helpers) {
      const auto& pts = params_.design->blocks[h.block];
      const auto it = std::find(pts.begin(), pts.end(), t);
      if (it == pts.end()) continue;
      const std::size_t slot = static_cast<std::size_t>(it - pts.begin());
      const std::size_t pos = PartPosition(t, h.block);
      for (std::size_t hn : h.nodes) {
        const std::size_t sub_node = pos * params_.c + hn;
        const Matrix piece = state.content[h.block][hn].Block(slot * sp.alpha_sub, 0,
                                                              sp.alpha_sub, state.lanes);
        ids.push_back(sub_node);
        messages.push_back(sub_->HelperMessage(sub_node, piece, lost[s].sub_node));
        out.per_helper.push_back(messages.back().rows());
        out.downloaded += messages.back().rows();
      }
    }
    out.content.SetRows(s * sp.alpha_sub, sub_->Repair(lost[s].sub_node, ids, messages));
  }
  return out;
}

std::size_t BfrCode::RepairBlock(SystemState& state, std::size_t block) const {
  CheckState(state);
  Require(block < params_.b, "block out of range");
  Require(!state.alive[block], "block " + Str(block) + " is not dead");
  const auto helpers = DefaultHelpers(state, block);
  std::vector<Matrix> repaired;
  std::size_t total = 0;
  for (std::size_t node = 0; node < params_.c; ++node) {
    RepairResult r = RepairNode(state, block, node, helpers);
    total += r.downloaded;
    repaired.push_back(std::move(r.content));
  }
  state.content[block] = std::move(repaired);
  state.alive[block] = true;
  return total;
}

void to_json(nlohmann::json& j, const BfrParams& p) {
  j = nlohmann::json{{"construction", ToString(p.construction)},
                     {"n", p.n},
                     {"b", p.b},
                     {"M", p.M},
                     {"k", p.k},
                     {"rho", p.rho},
                     {"alpha", p.alpha},
                     {"d", p.d},
                     {"sigma", p.sigma},
                     {"beta", p.beta},
                     {"c", p.c},
                     {"b_c", p.b_c},
                     {"k_c", p.k_c},
                     {"b_r", p.b_r},
                     {"d_r", p.d_r},
                     {"gamma", p.gamma()}};
  if (p.sub) j["sub"] = *p.sub;
  if (p.design) j["design"] = *p.design;
  if (p.construction == Construction::kGabidulinPlane) {
    j["gabidulin"] = {{"N", p.gab_n}, {"K", p.gab_k}, {"m", p.ext_degree}};
  }
}

void from_json(const nlohmann::json& j, BfrParams& p) {
  p = BfrParams{};
  p.construction = ConstructionFromString(j.at("construction").get<std::string>());
  j.at("n").get_to(p.n);
  j.at("b").get_to(p.b);
  j.at("M").get_to(p.M);
  j.at("k").get_to(p.k);
  j.at("rho").get_to(p.rho);
  j.at("alpha").get_to(p.alpha);
  j.at("d").get_to(p.d);
  j.at("sigma").get_to(p.sigma);
  j.at("beta").get_to(p.beta);
  if (j.contains("sub")) p.sub = j.at("sub").get<RegenParams>();
  if (j.contains("design")) p.design = j.at("design").get<Design>();
  if (j.contains("gabidulin")) {
    const auto& g = j.at("gabidulin");
    g.at("N").get_to(p.gab_n);
    g.at("K").get_to(p.gab_k);
    g.at("m").get_to(p.ext_degree);
  }
  Derive(p);
}

}  // namespace bfr
