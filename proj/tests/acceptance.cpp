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

// Acceptance driver: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bfr/bfr_code.hpp"
#include "bfr/bounds.hpp"
#include "bfr/cli.hpp"
#include "bfr/dss_sim.hpp"
#include "bfr/gabidulin.hpp"
#include "bfr/system.hpp"

namespace {

namespace fs = std::filesystem;
using bfr::BfrCode;
using bfr::Matrix;
using bfr::NodeChoice;
using bfr::Rational;
using bfr::RegenParams;
using bfr::Symbol;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failed expectation.
class Checker {
 public:
  void Expect(bool cond, const std::string& what) {
    if (!cond && ok_) {
      ok_ = false;
      first_ = what;
    }
  }
  bool ok() const { return ok_; }
  Outcome Done(const std::string& summary) const {
    return {ok_, ok_ ? summary : summary + "; first failure: " + first_};
  }

 private:
  bool ok_ = true;
  std::string first_;
};

Rational R(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

Matrix RandomFile(const bfr::FieldPtr& f, std::size_t rows, std::size_t lanes, unsigned seed) {
  std::mt19937 rng(seed);
  Matrix m(f, rows, lanes);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < lanes; ++j) m(i, j) = static_cast<Symbol>(rng() & f->order());
  }
  return m;
}

std::vector<std::vector<std::size_t>> Subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    out.push_back(s);
  }
  return out;
}

// Calls fn for every combination of one entry per slot.
void ForEachTuple(std::size_t slots, std::size_t options,
                  const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(slots, 0);
  while (true) {
    fn(idx);
    std::size_t i = 0;
    while (i < slots && ++idx[i] == options) idx[i++] = 0;
    if (i == slots) return;
  }
}

std::size_t CountCollections(const BfrCode& code, const Matrix& file, Checker& chk) {
  const auto& p = code.params();
  const auto state = code.Encode(file);
  const auto per_block = Subsets(p.c, p.k_c);
  std::size_t n = 0;
  for (const auto& blocks : Subsets(p.b, p.b_c)) {
    ForEachTuple(blocks.size(), per_block.size(), [&](const std::vector<std::size_t>& idx) {
      std::vector<NodeChoice> choice;
      for (std::size_t i = 0; i < blocks.size(); ++i) choice.push_back({blocks[i], per_block[idx[i]]});
      chk.Expect(code.Collect(state, choice) == file, "collection " + nlohmann::json(choice).dump());
      ++n;
    });
  }
  return n;
}

struct RepairTally {
  std::size_t repairs = 0;
  std::size_t mismatches = 0;
  std::size_t min_download = SIZE_MAX;
  std::size_t max_download = 0;
};

// Repairs every node of every block from every admissible helper choice.
RepairTally RepairAll(const BfrCode& code, const Matrix& file, Checker& chk) {
  const auto& p = code.params();
  const auto state = code.Encode(file);
  const auto subsets = Subsets(p.c, p.d_r);
  RepairTally t;
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    auto broken = state;
    code.FailBlock(broken, blk);
    for (std::size_t node = 0; node < p.c; ++node) {
      auto helpers = code.DefaultHelpers(broken, blk);
      ForEachTuple(helpers.size(), subsets.size(), [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < helpers.size(); ++i) helpers[i].nodes = subsets[idx[i]];
        const auto r = code.RepairNode(broken, blk, node, helpers);
        const std::size_t counted = std::accumulate(r.per_helper.begin(), r.per_helper.end(),
                                                    std::size_t{0});
        if (r.content != state.content[blk][node]) ++t.mismatches;
        chk.Expect(r.content == state.content[blk][node],
                   "repair of (" + std::to_string(blk) + ", " + std::to_string(node) + ")");
        chk.Expect(counted == r.downloaded, "per-helper download does not add up");
        t.min_download = std::min(t.min_download, counted);
        t.max_download = std::max(t.max_download, counted);
        ++t.repairs;
      });
    }
  }
  return t;
}

Outcome BoundOracle() {
  Checker chk;
  std::size_t cases = 0, interior = 0, interior_below = 0;
  for (std::size_t b : {2u, 3u}) {
    for (std::size_t k : {2u, 3u, 4u, 6u}) {
      if (k % b != 0) continue;
      for (std::size_t d = b - 1; d <= 12; d += b - 1) {
        if (b * d <= (b - 1) * k) continue;
        const std::string tag = "b=" + std::to_string(b) + " k=" + std::to_string(k) +
                                " d=" + std::to_string(d);
        const Rational M(1);
        for (const auto& pt : {bfr::MsrPoint(b, k, d, M), bfr::MbrPoint(b, k, d, M)}) {
          const Rational beta = pt.gamma / R(d);
          const auto flow = bfr::MinOverFailureOrders(b, k, d, pt.alpha, beta);
          const Rational closed = bfr::FilesizeBoundGeneral(b, k, d, pt.alpha, beta);
          chk.Expect(flow.value == closed, tag + " alpha=" + bfr::ToString(pt.alpha) +
                                               ": flow " + bfr::ToString(flow.value) +
                                               " vs closed form " + bfr::ToString(closed));
          chk.Expect(closed == M, tag + ": point does not store M");
          if (b == 2) chk.Expect(bfr::FilesizeBoundB2(k, d, pt.alpha, beta) == closed, tag);
          ++cases;
        }
        // Between the extreme points the closed form is an upper bound on the
        // worst-order cut; report how often it is strict.
        const auto msr = bfr::MsrPoint(b, k, d, M), mbr = bfr::MbrPoint(b, k, d, M);
        const Rational beta = msr.gamma / R(d);
        const Rational lo = msr.alpha, hi = mbr.alpha * beta / (mbr.gamma / R(d));
        for (int s = 1; s < 4; ++s) {
          const Rational alpha = lo + (hi - lo) * Rational(s, 4);
          const Rational flow = bfr::MinOverFailureOrders(b, k, d, alpha, beta).value;
          const Rational closed = bfr::FilesizeBoundGeneral(b, k, d, alpha, beta);
          chk.Expect(flow <= closed, tag + ": flow exceeds the closed form at an interior alpha");
          ++interior;
          if (flow < closed) ++interior_below;
        }
      }
    }
  }
  return chk.Done(std::to_string(cases) + " extreme-point cases exact; interior alpha: " +
                  std::to_string(interior_below) + "/" + std::to_string(interior) +
                  " grid points with the worst order below the closed form");
}

Outcome OperatingPoints() {
  Checker chk;
  auto f = bfr::GaloisField::Default();
  std::ostringstream msg;
  struct Case {
    RegenParams sub;
    bool msr;
    std::size_t alpha, gamma, M;
  };
  for (const Case& c : {Case{RegenParams::Msr(6, 3), true, 6, 12, 42},
                        Case{RegenParams::Mbr(6, 3, 4), false, 12, 12, 63}}) {
    const BfrCode code(f, bfr::BuildPlanePlacement(2, c.sub));
    const auto& p = code.params();
    const Matrix file = RandomFile(f, p.M, 3, 11);
    auto state = code.Encode(file);
    const std::size_t alpha = state.content[0][0].rows();
    const std::size_t M = file.rows();
    chk.Expect(code.Collect(state, code.DefaultCollection(state)) == file, "collection");
    code.FailBlock(state, 0);
    const auto r = code.RepairNode(state, 0, 0, code.DefaultHelpers(state, 0));
    const std::size_t gamma = r.downloaded;
    const auto bound = c.msr ? bfr::MsrPoint(p.b, p.k, p.d, R(M)) : bfr::MbrPoint(p.b, p.k, p.d, R(M));
    chk.Expect(alpha == c.alpha && gamma == c.gamma && M == c.M, "measured triple");
    chk.Expect(bound.alpha == R(alpha) && bound.gamma == R(gamma),
               "bound point (" + bfr::ToString(bound.alpha) + ", " + bfr::ToString(bound.gamma) + ")");
    msg << (c.msr ? "msr" : "mbr") << " (" << alpha << ", " << gamma << ", " << M << ") ";
  }
  return chk.Done(msg.str() + "equal the bound points");
}

Outcome TransposeCode() {
  Checker chk;
  auto f = bfr::GaloisField::Default();
  const BfrCode code(f, bfr::BuildTranspose(8, 4));
  const auto& p = code.params();
  chk.Expect(p.M == p.k * p.d - (p.k / 2) * (p.k / 2) && p.M == 12, "M");
  chk.Expect(p.alpha == 4 && p.gamma() == 4 && p.d * p.beta == 4, "alpha, gamma");
  chk.Expect(bfr::FilesizeBoundB2(p.k, p.d, R(p.alpha), R(p.beta)) == R(p.M), "bound");
  const Matrix file = RandomFile(f, p.M, 5, 12);
  const std::size_t collections = CountCollections(code, file, chk);
  const auto t = RepairAll(code, file, chk);
  chk.Expect(collections == 36, "collection count");
  chk.Expect(t.repairs == 8 && t.min_download == 4 && t.max_download == 4, "repairs");
  return chk.Done("M=12, alpha=gamma=4; " + std::to_string(collections) + " collections, " +
                  std::to_string(t.repairs) + " repairs");
}

Outcome CollectionUniversality() {
  Checker chk;
  auto f = bfr::GaloisField::Default();
  const BfrCode plane(f, bfr::BuildPlanePlacement(2, RegenParams::Msr(6, 3)));
  const std::size_t a = CountCollections(plane, RandomFile(f, plane.params().M, 4, 13), chk);
  const BfrCode toy(f, bfr::BuildDesignPlacement(bfr::TriangleDesign(), RegenParams::Mbr(10, 4, 5)));
  const auto& tp = toy.params();
  chk.Expect(tp.b == 3 && tp.c == 5, "toy layout");
  const std::size_t b = CountCollections(toy, RandomFile(f, tp.M, 4, 14), chk);
  chk.Expect(a == 128 && b == 1000, "collection counts");
  return chk.Done("plane " + std::to_string(a) + "/128, toy " + std::to_string(b) + "/1000");
}

Outcome ExactRepair() {
  Checker chk;
  auto f = bfr::GaloisField::Default();
  std::ostringstream msg;
  for (const auto& sub : {RegenParams::Msr(6, 3), RegenParams::Mbr(6, 3, 4)}) {
    const BfrCode code(f, bfr::BuildPlanePlacement(2, sub));
    const auto t = RepairAll(code, RandomFile(f, code.params().M, 4, 15), chk);
    chk.Expect(t.mismatches == 0 && t.min_download == 12 && t.max_download == 12, "downloads");
    msg << t.repairs << " repairs downloading " << t.min_download << ".." << t.max_download
        << " symbols; ";
  }
  return chk.Done(msg.str() + "all bit-identical");
}

Outcome GammaOrdering() {
  Checker chk;
  std::size_t cases = 0;
  for (std::size_t b = 2; b <= 7; ++b) {
    for (std::size_t k = b; k <= 42; k += b) {
      for (std::size_t d = k; d <= 100; ++d) {
        const Rational M(1);
        const Rational bfr_msr = bfr::MsrPoint(b, k, d, M).gamma;
        const auto c = bfr::ClassicalPoints(k, d, M);
        chk.Expect(c.msr >= bfr_msr && bfr_msr >= c.mbr,
                   "b=" + std::to_string(b) + " k=" + std::to_string(k) + " d=" + std::to_string(d));
        ++cases;
      }
    }
  }
  const Rational ratio = bfr::MsrPoint(2, 10, 1000, Rational(1)).gamma /
                         bfr::ClassicalPoints(10, 1000, Rational(1)).mbr;
  chk.Expect(ratio <= Rational(101, 100), "ratio " + bfr::ToString(ratio));
  return chk.Done(std::to_string(cases) + " sweep points ordered; ratio at k=10, d=1000 is " +
                  bfr::ToString(ratio));
}

Outcome GabidulinLayer() {
  Checker chk;
  std::mt19937 rng(16);
  std::size_t decodes = 0;
  auto base = bfr::GaloisField::Default();
  for (std::size_t n = 1; n <= 7; ++n) {
    auto e = bfr::ExtensionField::Create(base, n);
    const auto pts = bfr::BasisPoints(e, n);
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<bfr::ExtElement> msg;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<Symbol> c(n);
        for (auto& s : c) s = static_cast<Symbol>(rng() & base->order());
        msg.push_back(e->FromCoords(c));
      }
      const auto cw = bfr::GabEncode(msg, pts);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) < k) continue;
        std::vector<bfr::Evaluation> ev;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) ev.push_back({pts[i], cw[i]});
        }
        chk.Expect(bfr::GabDecode(ev, k) == msg, "decode N=" + std::to_string(n));
        ++decodes;
      }
    }
  }

  const auto plane = bfr::BuildProjectivePlane(2);
  const std::size_t kappa = 3;
  for (const auto& sub : {RegenParams::Msr(6, 3), RegenParams::Mbr(6, 3, 4)}) {
    const auto one = bfr::MinRankOverCollections(plane, sub, 1, 1);
    for (const auto& s : one.shapes) {
      chk.Expect(s.deficits == std::map<std::size_t, std::size_t>{{1, kappa}}, "rho=1 split");
    }
    const auto two = bfr::MinRankOverCollections(plane, sub, 2, 1);
    for (const auto& s : two.shapes) {
      chk.Expect(s.deficits == std::map<std::size_t, std::size_t>{{1, 2 * kappa - 2}, {2, 1}},
                 "rho=2 split");
    }
  }

  auto f = bfr::GaloisField::Default();
  const BfrCode code(f, bfr::BuildGabidulinPlane(2, RegenParams::Msr(6, 3), 1));
  const auto& p = code.params();
  const Matrix file = RandomFile(f, p.M, code.lane_multiple(), 17);
  const auto state = code.Encode(file);
  std::size_t trials = 0;
  for (; trials < 500; ++trials) {
    std::vector<std::size_t> blocks(p.b);
    std::iota(blocks.begin(), blocks.end(), 0);
    std::shuffle(blocks.begin(), blocks.end(), rng);
    blocks.resize(p.b_c);
    std::vector<NodeChoice> choice;
    for (std::size_t blk : blocks) {
      std::vector<std::size_t> nodes(p.c);
      std::iota(nodes.begin(), nodes.end(), 0);
      std::shuffle(nodes.begin(), nodes.end(), rng);
      nodes.resize(p.k_c);
      choice.push_back({blk, nodes});
    }
    chk.Expect(code.Collect(state, choice) == file, "collection " + nlohmann::json(choice).dump());
  }
  return chk.Done(std::to_string(decodes) + " decodes; rank splits match for rho=1,2; K=" +
                  std::to_string(p.gab_k) + " N=" + std::to_string(p.gab_n) + ", " +
                  std::to_string(trials) + " sampled collections");
}

struct CliRun {
  int code;
  std::string out;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = bfr::RunCli(args, out, err);
  return {code, out.str()};
}

Outcome MutationSensitivity() {
  Checker chk;
  const fs::path dir = fs::temp_directory_path() / "bfr_acceptance_mutations";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  chk.Expect(Cli({"plan", "--construction", "plane", "--p", "2", "--sub", "msr", "--ksub", "3",
                  "--dsub", "4", "--nsub", "6", "--out", p("msr.json")})
                     .code == 0,
             "plan");
  std::vector<std::uint8_t> input(2000);
  std::mt19937 rng(18);
  for (auto& x : input) x = static_cast<std::uint8_t>(rng());
  bfr::WriteBytes(p("in.bin"), input);
  chk.Expect(Cli({"encode", "--descriptor", p("msr.json"), "--in", p("in.bin"), "--out", p("s")}).code == 0,
             "encode");
  chk.Expect(Cli({"verify", "--descriptor", p("msr.json"), "--shards", p("s")}).code == 0,
             "unmodified system verifies");

  std::vector<std::string> caught;
  const auto expect_caught = [&](const std::string& name, const std::vector<std::string>& args) {
    const CliRun r = Cli(args);
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    const bool ok = r.code == 1 && j.is_object() && j.contains("counterexample");
    chk.Expect(ok, name + " mutation not detected");
    if (ok) caught.push_back(name + "->" + j["counterexample"]["check"].get<std::string>());
  };

  const fs::path shard = dir / "s" / bfr::ShardName(3, 1);
  auto raw = bfr::ReadBytes(shard);
  raw[40] ^= 0x01;
  bfr::WriteBytes(shard, raw);
  expect_caught("symbol", {"verify", "--descriptor", p("msr.json"), "--shards", p("s")});

  std::ifstream in(p("msr.json"));
  const auto base = nlohmann::json::parse(in);
  auto psi = base;
  psi["sub"]["psi"][2][1] = psi["sub"]["psi"][2][1].get<int>() ^ 1;
  std::ofstream(p("psi.json")) << psi.dump();
  expect_caught("psi", {"verify", "--descriptor", p("psi.json")});

  auto design = base;
  design["design"]["blocks"][0][0] = 0;
  std::ofstream(p("design.json")) << design.dump();
  expect_caught("design", {"verify", "--descriptor", p("design.json")});

  std::string names;
  for (const auto& c : caught) names += (names.empty() ? "" : ", ") + c;
  return chk.Done(std::to_string(caught.size()) + "/3 mutations detected (" + names + ")");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"bound/oracle agreement", BoundOracle},
      {"operating points", OperatingPoints},
      {"transpose code", TransposeCode},
      {"collection universality", CollectionUniversality},
      {"exact repair and bandwidth ledger", ExactRepair},
      {"gamma ordering and asymptotics", GammaOrdering},
      {"gabidulin layer", GabidulinLayer},
      {"mutation sensitivity", MutationSensitivity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
              << o.detail << " (" << t << ")" << std::endl;
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
