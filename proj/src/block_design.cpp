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

#include "bfr/block_design.hpp"

#include <algorithm>
#include <array>
#include <set>

#include <nlohmann/json.hpp>

#include "bfr/errors.hpp"

namespace bfr {
namespace {

using Triple = std::array<std::size_t, 3>;

// Nonzero triples over Z_p whose first nonzero coordinate is 1, in
// lexicographic order.
std::vector<Triple> NormalizedTriples(std::size_t p) {
  std::vector<Triple> out;
  for (std::size_t x = 0; x < p; ++x) {
    for (std::size_t y = 0; y < p; ++y) {
      for (std::size_t z = 0; z < p; ++z) {
        const Triple t = {x, y, z};
        auto it = std::find_if(t.begin(), t.end(), [](std::size_t c) { return c != 0; });
        if (it != t.end() && *it == 1) out.push_back(t);
      }
    }
  }
  return out;
}

}  // namespace

std::size_t Design::r() const {
  if (kappa < 2) return 0;
  return lambda * (v - 1) / (kappa - 1);
}

bool IsPrime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

Design BuildProjectivePlane(std::size_t p) {
  if (!IsPrime(p)) {
    throw ParameterError("projective plane order must be prime, got " +
                         std::to_string(p));
  }
  const auto points = NormalizedTriples(p);
  const auto lines = NormalizedTriples(p);
  Design d;
  d.v = points.size();
  d.kappa = p + 1;
  d.lambda = 1;
  for (const auto& line : lines) {
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pt = points[i];
      if ((line[0] * pt[0] + line[1] * pt[1] + line[2] * pt[2]) % p == 0) {
        block.push_back(i);
      }
    }
    d.blocks.push_back(std::move(block));
  }
  return d;
}

Design TriangleDesign() {
  Design d;
  d.v = 3;
  d.kappa = 2;
  d.lambda = 1;
  d.blocks = {{0, 1}, {0, 2}, {1, 2}};
  return d;
}

BibdReport ValidateBibd(const Design& d, std::size_t v, std::size_t kappa,
                        std::size_t lambda) {
  BibdReport rep;
  auto fail = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
  if (kappa < 2 || v < kappa || lambda == 0) {
    fail("degenerate parameters (v=" + std::to_string(v) + ", kappa=" +
         std::to_string(kappa) + ", lambda=" + std::to_string(lambda) + ")");
    return rep;
  }
  if (d.v != v) fail("design has v=" + std::to_string(d.v) + ", expected " + std::to_string(v));
  if ((lambda * (v - 1)) % (kappa - 1) != 0) fail("replication degree is not an integer");
  if ((lambda * (v * v - v)) % (kappa * kappa - kappa) != 0) fail("block count is not an integer");
  rep.r = lambda * (v - 1) / (kappa - 1);
  rep.b = lambda * (v * v - v) / (kappa * kappa - kappa);

  std::vector<std::size_t> pair_count(v * v, 0);
  std::vector<std::size_t> replication(v, 0);
  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    const auto& blk = d.blocks[bi];
    const std::set<std::size_t> uniq(blk.begin(), blk.end());
    if (blk.size() != kappa) {
      fail("block " + std::to_string(bi) + " has " + std::to_string(blk.size()) +
           " points, expected " + std::to_string(kappa));
    }
    if (uniq.size() != blk.size()) fail("block " + std::to_string(bi) + " repeats a point");
    bool in_range = true;
    for (std::size_t pt : uniq) {
      if (pt >= v) {
        fail("block " + std::to_string(bi) + " has out-of-range point " + std::to_string(pt));
        in_range = false;
      }
    }
    if (!in_range) continue;
    for (std::size_t pt : uniq) ++replication[pt];
    for (auto a = uniq.begin(); a != uniq.end(); ++a) {
      for (auto b = std::next(a); b != uniq.end(); ++b) ++pair_count[*a * v + *b];
    }
  }
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t b = a + 1; b < v; ++b) {
      if (pair_count[a * v + b] != lambda) {
        fail("pair {" + std::to_string(a) + "," + std::to_string(b) + "} covered " +
             std::to_string(pair_count[a * v + b]) + " times, expected " +
             std::to_string(lambda));
      }
    }
    if (replication[a] != rep.r) {
      fail("point " + std::to_string(a) + " occurs in " + std::to_string(replication[a]) +
           " blocks, expected " + std::to_string(rep.r));
    }
  }
  if (d.blocks.size() != rep.b) {
    fail("design has " + std::to_string(d.blocks.size()) + " blocks, expected " +
         std::to_string(rep.b));
  }
  rep.ok = rep.violations.empty();
  return rep;
}

std::vector<std::size_t> BlocksThroughPoint(const Design& d, std::size_t t) {
  if (t >= d.v) throw ParameterError("point " + std::to_string(t) + " out of range");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    if (std::find(d.blocks[i].begin(), d.blocks[i].end(), t) != d.blocks[i].end()) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t CommonPoint(const Design& d, std::size_t i, std::size_t j) {
  if (i >= d.blocks.size() || j >= d.blocks.size()) {
    throw ParameterError("block index out of range");
  }
  if (i == j) throw ParameterError("common point needs two distinct blocks");
  std::vector<std::size_t> a = d.blocks[i], b = d.blocks[j], both;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  if (both.size() != 1) {
    throw ParameterError("blocks " + std::to_string(i) + " and " + std::to_string(j) +
                         " share " + std::to_string(both.size()) +
                         " points; design is not a projective plane");
  }
  return both.front();
}

void to_json(nlohmann::json& j, const Design& d) {
  j = nlohmann::json{{"v", d.v}, {"kappa", d.kappa}, {"lambda", d.lambda}, {"blocks", d.blocks}};
}

void from_json(const nlohmann::json& j, Design& d) {
  j.at("v").get_to(d.v);
  j.at("kappa").get_to(d.kappa);
  j.at("lambda").get_to(d.lambda);
  j.at("blocks").get_to(d.blocks);
}

}  // namespace bfr
