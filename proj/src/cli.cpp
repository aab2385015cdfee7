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

#include "bfr/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "bfr/bounds.hpp"
#include "bfr/dss_sim.hpp"
#include "bfr/verify.hpp"

namespace bfr {
namespace {

namespace fs = std::filesystem;

Rational ParseRational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParameterError("'" + s + "' is not a rational number");
  }
}

std::vector<std::size_t> Sample(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

void Emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParameterError("cannot write " + path);
  f << text;
}

struct Options {
  PlanRequest plan;
  std::string descriptor, in, out, dir, trace, shards, level = "quick", M = "0";
  std::size_t block = 0, b = 0, k = 0, d = 0, rho = 0, curve = 0, length = 100;
  std::uint64_t seed = 0;
  bool seeded = false;
};

int CmdPlan(const Options& o, std::ostream& out, std::ostream& err) {
  const SystemDescriptor desc = Plan(o.plan);
  Emit(out, o.out, nlohmann::json(desc).dump(2) + "\n");
  const auto& p = desc.params;
  err << "alpha=" << p.alpha << " gamma=" << p.gamma() << " M=" << p.M;
  if (p.construction != Construction::kGabidulinPlane) {
    const Rational M(static_cast<std::int64_t>(p.M));
    const auto msr = MsrPoint(p.b, p.k, p.d, M, p.rho);
    const auto mbr = MbrPoint(p.b, p.k, p.d, M, p.rho);
    err << " bound_msr=(" << ToString(msr.alpha) << ", " << ToString(msr.gamma) << ")"
        << " bound_mbr=(" << ToString(mbr.alpha) << ", " << ToString(mbr.gamma) << ")";
  } else {
    err << " K=" << p.gab_k << " N=" << p.gab_n;
  }
  err << "\n";
  return kExitOk;
}

int CmdEncode(const Options& o, std::ostream& err) {
  const SystemDescriptor desc = LoadDescriptor(o.descriptor);
  const BfrCode code = BuildCode(desc);
  const auto bytes = ReadBytes(o.in);
  const Matrix file = BytesToFile(code, bytes);
  WriteShards(o.out, code, code.Encode(file), bytes.size());
  err << "wrote " << code.params().n << " shards, " << file.cols() << " lanes\n";
  return kExitOk;
}

int CmdFail(const Options& o, std::ostream& err) {
  const SystemDescriptor desc = LoadDescriptor(o.descriptor);
  const auto& p = desc.params;
  if (o.block >= p.b) throw ParameterError("block " + std::to_string(o.block) + " out of range");
  std::size_t removed = 0;
  for (std::size_t node = 0; node < p.c; ++node) removed += fs::remove(fs::path(o.dir) / ShardName(o.block, node));
  err << "removed " << removed << " shards of block " << o.block << "\n";
  return kExitOk;
}

int CmdRepair(const Options& o, std::ostream& out) {
  const SystemDescriptor desc = LoadDescriptor(o.descriptor);
  const BfrCode code = BuildCode(desc);
  StoredSystem st = ReadShards(o.dir, code);
  const auto& p = code.params();
  std::optional<std::size_t> dead;
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    if (st.state.alive[blk]) continue;
    if (dead) throw ParameterError("more than one block is missing");
    dead = blk;
  }
  if (!dead) throw ParameterError("no block is missing");
  std::vector<NodeChoice> helpers = code.DefaultHelpers(st.state, *dead);
  if (o.seeded) {
    std::mt19937_64 rng(o.seed);
    for (auto& h : helpers) h.nodes = Sample(rng, p.c, p.d_r);
  }
  nlohmann::json ledger = nlohmann::json::array();
  std::size_t total = 0;
  std::vector<Matrix> repaired;
  for (std::size_t node = 0; node < p.c; ++node) {
    const RepairResult r = code.RepairNode(st.state, *dead, node, helpers);
    ledger.push_back({{"block", *dead}, {"node", node}, {"downloaded", r.downloaded}});
    total += r.downloaded;
    repaired.push_back(r.content);
  }
  st.state.content[*dead] = std::move(repaired);
  st.state.alive[*dead] = true;
  WriteShards(o.dir, code, st.state, st.file_bytes, *dead);
  out << nlohmann::json{{"block", *dead}, {"helpers", helpers}, {"repairs", ledger},
                        {"total", total}}
             .dump(2)
      << "\n";
  return kExitOk;
}

int CmdCollect(const Options& o, std::ostream& err) {
  const SystemDescriptor desc = LoadDescriptor(o.descriptor);
  const BfrCode code = BuildCode(desc);
  const StoredSystem st = ReadShards(o.dir, code);
  std::vector<NodeChoice> choice = code.DefaultCollection(st.state);
  if (o.seeded) {
    const auto& p = code.params();
    std::mt19937_64 rng(o.seed);
    std::vector<std::size_t> live;
    for (std::size_t blk = 0; blk < p.b; ++blk) {
      if (st.state.alive[blk]) live.push_back(blk);
    }
    choice.clear();
    for (std::size_t i : Sample(rng, live.size(), p.b_c)) {
      choice.push_back({live[i], Sample(rng, p.c, p.k_c)});
    }
  }
  const Matrix file = code.Collect(st.state, choice);
  WriteBytes(o.out, FileToBytes(file, st.file_bytes));
  err << "collected " << st.file_bytes << " bytes from " << nlohmann::json(choice).dump() << "\n";
  return kExitOk;
}

int CmdBounds(const Options& o, std::ostream& out) {
  out << BoundsCsv(o.b, o.k, o.d, ParseRational(o.M), o.rho, o.curve);
  return kExitOk;
}

int CmdVerify(const Options& o, std::ostream& out) {
  const SystemDescriptor desc = LoadDescriptor(o.descriptor);
  std::optional<StoredSystem> stored;
  if (!o.shards.empty()) {
    try {
      stored = ReadShards(o.shards, BuildCode(desc));
    } catch (const ParameterError&) {
      // Unreadable shards under an invalid descriptor surface as check failures.
      stored.reset();
    }
  }
  const VerifyReport rep = Verify(desc, VerifyLevelFromString(o.level), o.seed, stored);
  Emit(out, o.out, nlohmann::json(rep).dump(2) + "\n");
  return rep.ok ? kExitOk : kExitFailed;
}

int CmdSim(const Options& o, std::ostream& out) {
  const SystemDescriptor desc = LoadDescriptor(o.descriptor);
  const BfrCode code = BuildCode(desc);
  Trace trace;
  if (!o.trace.empty()) {
    std::ifstream in(o.trace);
    if (!in) throw ParameterError("cannot open trace " + o.trace);
    try {
      trace = nlohmann::json::parse(in).get<Trace>();
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError(std::string("trace: ") + e.what());
    }
  } else {
    trace = RandomTrace(o.seed, o.length, code.params());
  }
  std::mt19937_64 rng(o.seed);
  Matrix file(code.field(), code.params().M, code.lane_multiple());
  for (std::size_t r = 0; r < file.rows(); ++r) {
    for (std::size_t c = 0; c < file.cols(); ++c) file(r, c) = static_cast<Symbol>(rng() & code.field()->order());
  }
  const SimReport rep = RunTrace(code, file, trace);
  Emit(out, o.out, nlohmann::json(rep).dump(2) + "\n");
  return rep.ok ? kExitOk : kExitFailed;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block failure resilient regenerating codes"};
  app.require_subcommand(1);
  Options o;

  auto* plan = app.add_subcommand("plan", "Build a code and print its descriptor");
  plan->add_option("--construction", o.plan.construction, "transpose | plane | gabidulin-plane");
  plan->add_option("--p", o.plan.p, "Projective plane order (prime)");
  plan->add_option("--design", o.plan.design, "plane | triangle");
  plan->add_option("--n", o.plan.n, "Nodes (transpose)");
  plan->add_option("--k", o.plan.k, "Nodes read by a collector (transpose)");
  plan->add_option("--sub", o.plan.sub, "Sub-code kind: msr | mbr | mds");
  plan->add_option("--ksub", o.plan.k_sub, "Sub-code k");
  plan->add_option("--dsub", o.plan.d_sub, "Sub-code d");
  plan->add_option("--nsub", o.plan.n_sub, "Sub-code n");
  plan->add_option("--rho", o.plan.rho, "Erased blocks tolerated at collection");
  plan->add_option("--kc", o.plan.k_c, "Nodes read per block (Gabidulin layer)");
  plan->add_option("--w", o.plan.w, "Base field GF(2^w)");
  plan->add_option("--out", o.out, "Descriptor path (default stdout)");

  auto* encode = app.add_subcommand("encode", "Encode a file into shard files");
  encode->add_option("--descriptor", o.descriptor)->required();
  encode->add_option("--in", o.in)->required();
  encode->add_option("--out", o.out, "Shard directory")->required();

  auto* fail = app.add_subcommand("fail", "Delete the shards of one block");
  fail->add_option("--descriptor", o.descriptor)->required();
  fail->add_option("--dir", o.dir)->required();
  fail->add_option("--block", o.block)->required();

  auto* repair = app.add_subcommand("repair", "Regenerate the missing block");
  repair->add_option("--descriptor", o.descriptor)->required();
  repair->add_option("--dir", o.dir)->required();
  repair->add_option("--seed", o.seed, "Random helper choice");

  auto* collect = app.add_subcommand("collect", "Reconstruct the file from shards");
  collect->add_option("--descriptor", o.descriptor)->required();
  collect->add_option("--dir", o.dir)->required();
  collect->add_option("--out", o.out)->required();
  collect->add_option("--seed", o.seed, "Random node choice");

  auto* bounds = app.add_subcommand("bounds", "Operating points and trade-off curve as CSV");
  bounds->add_option("--b", o.b)->required();
  bounds->add_option("--k", o.k)->required();
  bounds->add_option("--d", o.d)->required();
  bounds->add_option("--M", o.M, "File size, integer or p/q")->required();
  bounds->add_option("--rho", o.rho);
  bounds->add_option("--curve", o.curve, "Trade-off samples");

  auto* verify = app.add_subcommand("verify", "Run the property suite on a descriptor");
  verify->add_option("--descriptor", o.descriptor)->required();
  verify->add_option("--level", o.level, "quick | exhaustive");
  verify->add_option("--seed", o.seed);
  verify->add_option("--shards", o.shards, "Also audit this shard directory");
  verify->add_option("--out", o.out);

  auto* sim = app.add_subcommand("sim", "Replay a failure/repair trace");
  sim->add_option("--descriptor", o.descriptor)->required();
  sim->add_option("--trace", o.trace, "Trace JSON (default: random)");
  sim->add_option("--length", o.length, "Random trace length");
  sim->add_option("--seed", o.seed);
  sim->add_option("--out", o.out);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (auto* sc : {repair, collect}) {
    if (sc->parsed() && sc->count("--seed")) o.seeded = true;
  }

  try {
    if (plan->parsed()) return CmdPlan(o, out, err);
    if (encode->parsed()) return CmdEncode(o, err);
    if (fail->parsed()) return CmdFail(o, err);
    if (repair->parsed()) return CmdRepair(o, out);
    if (collect->parsed()) return CmdCollect(o, err);
    if (bounds->parsed()) return CmdBounds(o, out);
    if (verify->parsed()) return CmdVerify(o, out);
    if (sim->parsed()) return CmdSim(o, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace bfr
