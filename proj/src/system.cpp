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

#include "bfr/system.hpp"

#include <array>
#include <fstream>
#include <iterator>

namespace bfr {
namespace {

constexpr std::array<char, 4> kMagic = {'B', 'F', 'R', 'S'};
constexpr std::string_view kFormat = "bfr-system/1";

void Require(bool ok, const std::string& msg) {
  if (!ok) throw ParameterError(msg);
}

template <typename T>
void PutLe(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <typename T>
T GetLe(std::span<const std::uint8_t> in, std::size_t& pos) {
  Require(pos + sizeof(T) <= in.size(), "shard is truncated");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(T{in[pos + i]} << (8 * i));
  pos += sizeof(T);
  return v;
}

std::size_t BytesPerSymbol(unsigned w) {
  Require(w == 8 || w == 16, "file I/O needs w = 8 or 16 (w=" + std::to_string(w) + ")");
  return w / 8;
}

RegenParams SubFromRequest(const PlanRequest& r) {
  if (r.sub == "msr") {
    Require(r.d_sub == 0 || r.d_sub == 2 * r.k_sub - 2, "MSR sub-codes need d_sub = 2 k_sub - 2");
    return RegenParams::Msr(r.n_sub, r.k_sub);
  }
  if (r.sub == "mbr") return RegenParams::Mbr(r.n_sub, r.k_sub, r.d_sub);
  if (r.sub == "mds") return RegenParams::Mds(r.n_sub, r.k_sub);
  throw ParameterError("unknown sub-code kind '" + r.sub + "'");
}

}  // namespace

SystemDescriptor Plan(const PlanRequest& req) {
  const FieldPtr field = GaloisField::Create(req.w);
  BfrParams params;
  if (req.construction == "transpose") {
    params = BuildTranspose(req.n, req.k);
  } else if (req.construction == "plane") {
    const RegenParams sub = SubFromRequest(req);
    if (req.design == "triangle") {
      params = BuildDesignPlacement(TriangleDesign(), sub);
    } else {
      Require(req.design == "plane", "unknown design '" + req.design + "'");
      params = BuildPlanePlacement(req.p, sub);
    }
  } else if (req.construction == "gabidulin-plane" || req.construction == "gabidulin") {
    params = BuildGabidulinPlane(req.p, SubFromRequest(req), req.rho, req.k_c);
  } else {
    throw ParameterError("unknown construction '" + req.construction + "'");
  }
  return Describe(BfrCode(field, params));
}

SystemDescriptor Describe(const BfrCode& code) {
  SystemDescriptor d;
  d.w = code.field()->bits();
  d.poly = code.field()->polynomial();
  d.params = code.params();
  if (code.sub_code()) {
    d.psi = code.sub_code()->psi();
    if (code.params().sub->kind != CodeKind::kMds) d.psi_generator = code.field()->Exp(1);
  }
  return d;
}

FieldPtr DescriptorField(const SystemDescriptor& d) { return GaloisField::Create(d.w, d.poly); }

BfrCode BuildCode(const SystemDescriptor& d) {
  return BfrCode(DescriptorField(d), d.params, d.psi);
}

void to_json(nlohmann::json& j, const SystemDescriptor& d) {
  nlohmann::json field = {{"w", d.w}, {"poly", d.poly}};
  if (d.params.ext_degree) field["m"] = d.params.ext_degree;
  nlohmann::json params = d.params;
  j = nlohmann::json{{"format", kFormat},
                     {"field", field},
                     {"construction", params.at("construction")}};
  for (const char* key : {"design", "sub", "gabidulin"}) {
    if (params.contains(key)) {
      j[key] = params.at(key);
      params.erase(key);
    }
  }
  params.erase("construction");
  j["params"] = params;
  if (d.psi) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < d.psi->rows(); ++r) {
      rows.push_back(std::vector<Symbol>(d.psi->row(r).begin(), d.psi->row(r).end()));
    }
    j["sub"]["psi"] = rows;
  }
  if (d.psi_generator) j["psi_generator"] = *d.psi_generator;
}

void from_json(const nlohmann::json& j, SystemDescriptor& d) {
  Require(j.value("format", std::string()) == kFormat, "not a bfr-system/1 descriptor");
  d = SystemDescriptor{};
  j.at("field").at("w").get_to(d.w);
  j.at("field").at("poly").get_to(d.poly);
  nlohmann::json params = j.at("params");
  params["construction"] = j.at("construction");
  for (const char* key : {"design", "sub", "gabidulin"}) {
    if (j.contains(key)) params[key] = j.at(key);
  }
  d.params = params.get<BfrParams>();
  if (j.contains("sub") && j.at("sub").contains("psi")) {
    const auto rows = j.at("sub").at("psi").get<std::vector<std::vector<std::uint32_t>>>();
    const FieldPtr field = DescriptorField(d);
    Require(!rows.empty(), "empty Psi");
    Matrix psi(field, rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Require(rows[r].size() == psi.cols(), "ragged Psi");
      for (std::size_t c = 0; c < psi.cols(); ++c) {
        Require(field->Contains(rows[r][c]), "Psi entry outside the field");
        psi(r, c) = static_cast<Symbol>(rows[r][c]);
      }
    }
    d.psi = std::move(psi);
  }
  if (j.contains("psi_generator")) d.psi_generator = j.at("psi_generator").get<Symbol>();
}

SystemDescriptor LoadDescriptor(const std::filesystem::path& path) {
  std::ifstream in(path);
  Require(in.good(), "cannot open descriptor " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("descriptor " + path.string() + ": " + e.what());
  }
  try {
    return j.get<SystemDescriptor>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("descriptor " + path.string() + ": " + e.what());
  }
}

void SaveDescriptor(const std::filesystem::path& path, const SystemDescriptor& d) {
  std::ofstream out(path);
  Require(out.good(), "cannot write " + path.string());
  out << nlohmann::json(d).dump(2) << '\n';
}

Matrix BytesToFile(const BfrCode& code, std::span<const std::uint8_t> bytes) {
  const std::size_t per = BytesPerSymbol(code.field()->bits());
  const std::size_t M = code.params().M, step = code.lane_multiple();
  const std::size_t symbols = (bytes.size() + per - 1) / per;
  std::size_t lanes = (symbols + M - 1) / M;
  lanes = std::max<std::size_t>(step, (lanes + step - 1) / step * step);
  Matrix file(code.field(), M, lanes);
  for (std::size_t i = 0; i < symbols; ++i) {
    Symbol s = 0;
    for (std::size_t b = 0; b < per && i * per + b < bytes.size(); ++b) {
      s |= static_cast<Symbol>(bytes[i * per + b] << (8 * b));
    }
    file(i % M, i / M) = s;
  }
  return file;
}

std::vector<std::uint8_t> FileToBytes(const Matrix& file, std::uint64_t file_bytes) {
  const std::size_t per = BytesPerSymbol(file.field()->bits());
  const std::size_t M = file.rows();
  Require(file_bytes <= M * file.cols() * per, "file length exceeds the decoded data");
  std::vector<std::uint8_t> out(file_bytes);
  for (std::size_t i = 0; i < file_bytes; ++i) {
    const std::size_t sym = i / per;
    out[i] = static_cast<std::uint8_t>(file(sym % M, sym / M) >> (8 * (i % per)));
  }
  return out;
}

std::string ShardName(std::size_t block, std::size_t node) {
  return "b" + std::to_string(block) + "_n" + std::to_string(node) + ".shard";
}

void WriteShard(const std::filesystem::path& path, const ShardHeader& h, const Matrix& content) {
  const std::size_t per = BytesPerSymbol(h.w);
  std::vector<std::uint8_t> buf(kMagic.begin(), kMagic.end());
  PutLe(buf, h.version);
  PutLe(buf, h.w);
  PutLe(buf, h.block);
  PutLe(buf, h.node);
  PutLe(buf, h.alpha);
  PutLe(buf, h.lanes);
  PutLe(buf, h.file_bytes);
  for (Symbol s : content.data()) {
    if (per == 1) {
      buf.push_back(static_cast<std::uint8_t>(s));
    } else {
      PutLe(buf, s);
    }
  }
  WriteBytes(path, buf);
}

Matrix ReadShard(const std::filesystem::path& path, const FieldPtr& field, ShardHeader* header) {
  const auto buf = ReadBytes(path);
  const std::string where = "shard " + path.string() + ": ";
  Require(buf.size() >= 4 && std::equal(kMagic.begin(), kMagic.end(), buf.begin()),
          where + "bad magic");
  std::size_t pos = 4;
  ShardHeader h;
  h.version = GetLe<std::uint16_t>(buf, pos);
  h.w = GetLe<std::uint16_t>(buf, pos);
  h.block = GetLe<std::uint32_t>(buf, pos);
  h.node = GetLe<std::uint32_t>(buf, pos);
  h.alpha = GetLe<std::uint32_t>(buf, pos);
  h.lanes = GetLe<std::uint32_t>(buf, pos);
  h.file_bytes = GetLe<std::uint64_t>(buf, pos);
  Require(h.version == 1, where + "unsupported version");
  Require(h.w == field->bits(), where + "symbol width differs from the descriptor");
  const std::size_t per = BytesPerSymbol(h.w);
  Require(buf.size() - pos == std::size_t{h.alpha} * h.lanes * per, where + "wrong payload size");
  Matrix m(field, h.alpha, h.lanes);
  for (std::size_t r = 0; r < h.alpha; ++r) {
    for (std::size_t c = 0; c < h.lanes; ++c) {
      const Symbol s = per == 1 ? buf[pos++] : GetLe<std::uint16_t>(buf, pos);
      Require(field->Contains(s), where + "symbol outside the field");
      m(r, c) = s;
    }
  }
  if (header) *header = h;
  return m;
}

void WriteShards(const std::filesystem::path& dir, const BfrCode& code, const SystemState& state,
                 std::uint64_t file_bytes, std::optional<std::size_t> only_block) {
  std::filesystem::create_directories(dir);
  const auto& p = code.params();
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    if (only_block && blk != *only_block) continue;
    Require(state.alive[blk], "cannot write shards of dead block " + std::to_string(blk));
    for (std::size_t node = 0; node < p.c; ++node) {
      ShardHeader h;
      h.w = static_cast<std::uint16_t>(code.field()->bits());
      h.block = static_cast<std::uint32_t>(blk);
      h.node = static_cast<std::uint32_t>(node);
      h.alpha = static_cast<std::uint32_t>(p.alpha);
      h.lanes = static_cast<std::uint32_t>(state.lanes);
      h.file_bytes = file_bytes;
      WriteShard(dir / ShardName(blk, node), h, state.content[blk][node]);
    }
  }
}

StoredSystem ReadShards(const std::filesystem::path& dir, const BfrCode& code) {
  const auto& p = code.params();
  StoredSystem out;
  out.state.content.assign(p.b, {});
  out.state.alive.assign(p.b, false);
  std::optional<std::uint32_t> lanes;
  std::optional<std::uint64_t> bytes;
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    std::size_t present = 0;
    for (std::size_t node = 0; node < p.c; ++node) {
      present += std::filesystem::exists(dir / ShardName(blk, node));
    }
    Require(present == 0 || present == p.c,
            "block " + std::to_string(blk) + " is partially missing");
    out.state.alive[blk] = present == p.c;
    for (std::size_t node = 0; node < p.c; ++node) {
      if (!present) continue;
      ShardHeader h;
      Matrix m = ReadShard(dir / ShardName(blk, node), code.field(), &h);
      Require(h.block == blk && h.node == node && h.alpha == p.alpha,
              "shard " + ShardName(blk, node) + " header does not match its position");
      Require(!lanes || (*lanes == h.lanes && *bytes == h.file_bytes),
              "shards disagree on lane count or file length");
      lanes = h.lanes;
      bytes = h.file_bytes;
      out.state.content[blk].push_back(std::move(m));
    }
  }
  Require(lanes.has_value(), "no shards found in " + dir.string());
  out.state.lanes = *lanes;
  out.file_bytes = *bytes;
  for (std::size_t blk = 0; blk < p.b; ++blk) {
    if (!out.state.alive[blk]) out.state.content[blk].assign(p.c, Matrix(code.field(), p.alpha, *lanes));
  }
  return out;
}

std::vector<std::uint8_t> ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  Require(out.good(), "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace bfr
