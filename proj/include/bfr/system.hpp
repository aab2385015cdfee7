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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bfr/bfr_code.hpp"

namespace bfr {

/// Everything needed to rebuild a code: field, parameters and encoding
/// matrix.
struct SystemDescriptor {
  unsigned w = 8;
  std::uint32_t poly = 0;
  BfrParams params;
  std::optional<Matrix> psi;
  std::optional<Symbol> psi_generator;
};

struct PlanRequest {
  std::string construction = "plane";  // transpose | plane | gabidulin-plane
  std::size_t p = 2;
  std::string design = "plane";  // plane | triangle
  std::size_t n = 0;
  std::size_t k = 0;
  std::string sub = "msr";  // msr | mbr | mds
  std::size_t k_sub = 0;
  std::size_t d_sub = 0;
  std::size_t n_sub = 0;
  std::size_t rho = 0;
  std::optional<std::size_t> k_c;
  unsigned w = 8;
};

SystemDescriptor Plan(const PlanRequest& req);

/// Records the code's field and default Psi.
SystemDescriptor Describe(const BfrCode& code);

FieldPtr DescriptorField(const SystemDescriptor& d);
BfrCode BuildCode(const SystemDescriptor& d);

void to_json(nlohmann::json& j, const SystemDescriptor& d);
void from_json(const nlohmann::json& j, SystemDescriptor& d);

SystemDescriptor LoadDescriptor(const std::filesystem::path& path);
void SaveDescriptor(const std::filesystem::path& path, const SystemDescriptor& d);

/// Bytes to an M x L file matrix, L the smallest allowed lane count that
/// holds them, zero padded. Needs w = 8 or 16 (little-endian pairs).
Matrix BytesToFile(const BfrCode& code, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> FileToBytes(const Matrix& file, std::uint64_t file_bytes);

/// Shard header, stored little-endian after the magic "BFRS".
struct ShardHeader {
  std::uint16_t version = 1;
  std::uint16_t w = 8;
  std::uint32_t block = 0;
  std::uint32_t node = 0;
  std::uint32_t alpha = 0;
  std::uint32_t lanes = 0;
  std::uint64_t file_bytes = 0;
};

std::string ShardName(std::size_t block, std::size_t node);
void WriteShard(const std::filesystem::path& path, const ShardHeader& h, const Matrix& content);
Matrix ReadShard(const std::filesystem::path& path, const FieldPtr& field, ShardHeader* header);

struct StoredSystem {
  SystemState state;
  std::uint64_t file_bytes = 0;
};

void WriteShards(const std::filesystem::path& dir, const BfrCode& code, const SystemState& state,
                 std::uint64_t file_bytes, std::optional<std::size_t> only_block = std::nullopt);
/// Blocks with no shard files load as dead; a partially missing block is an
/// error.
StoredSystem ReadShards(const std::filesystem::path& dir, const BfrCode& code);

std::vector<std::uint8_t> ReadBytes(const std::filesystem::path& path);
void WriteBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace bfr
