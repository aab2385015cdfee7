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

#include "bfr/regen_codes.hpp"

#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

using ::bfr::GaloisField;
using ::bfr::Matrix;
using ::bfr::RegenParams;
using ::bfr::Symbol;

Matrix RandomMessage(const bfr::FieldPtr& f, std::size_t rows, std::size_t lanes, unsigned seed) {
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

void ExhaustiveCheck(const RegenParams& p, unsigned seed) {
  auto f = GaloisField::Default();
  auto code = bfr::MakeRegeneratingCode(f, p);
  EXPECT_TRUE(code->StructuralDefects().empty());
  const Matrix msg = RandomMessage(f, p.msg_size, 3, seed);
  const auto nodes = code->Encode(msg);
  ASSERT_EQ(nodes.size(), p.n_sub);
  for (const auto& n : nodes) ASSERT_EQ(n.rows(), p.alpha_sub);

  for (const auto& set : Subsets(p.n_sub, p.k_sub)) {
    std::vector<Matrix> contents;
    for (std::size_t i : set) contents.push_back(nodes[i]);
    ASSERT_EQ(code->Collect(set, contents), msg);
  }
  for (std::size_t failed = 0; failed < p.n_sub; ++failed) {
    for (auto helpers : Subsets(p.n_sub - 1, p.d_sub)) {
      for (auto& h : helpers) h += (h >= failed);
      std::vector<Matrix> contents;
      for (std::size_t h : helpers) contents.push_back(nodes[h]);
      const auto out = code->RepairFromHelpers(failed, helpers, contents);
      ASSERT_EQ(out.content, nodes[failed]);
      ASSERT_EQ(out.downloaded, p.d_sub * p.beta_sub);
    }
  }
}

TEST(RegenParamsTest, Factories) {
  const auto mbr = RegenParams::Mbr(6, 3, 4);
  EXPECT_EQ(mbr.msg_size, 9u);
  EXPECT_EQ(mbr.alpha_sub, 4u);
  const auto mbr2 = RegenParams::Mbr(6, 4, 5);
  EXPECT_EQ(mbr2.msg_size, 14u);
  EXPECT_EQ(mbr2.alpha_sub, 5u);
  const auto msr = RegenParams::Msr(6, 3);
  EXPECT_EQ(msr.d_sub, 4u);
  EXPECT_EQ(msr.alpha_sub, 2u);
  EXPECT_EQ(msr.msg_size, 6u);
  EXPECT_THROW(RegenParams::Mbr(4, 3, 4), bfr::ParameterError);
  EXPECT_THROW(RegenParams::Mbr(6, 4, 3), bfr::ParameterError);
  EXPECT_THROW(RegenParams::Msr(4, 3), bfr::ParameterError);
}

TEST(RankProfileTest, Values) {
  const auto msr = RegenParams::Msr(6, 3);
  EXPECT_EQ(bfr::RankProfile(msr, 1), 2u);
  EXPECT_EQ(bfr::RankProfile(msr, 3), 2u);
  EXPECT_EQ(bfr::RankProfile(msr, 4), 0u);
  const auto mbr = RegenParams::Mbr(6, 3, 4);
  EXPECT_EQ(bfr::RankProfile(mbr, 1), 4u);
  EXPECT_EQ(bfr::RankProfile(mbr, 2), 3u);
  EXPECT_EQ(bfr::RankProfile(mbr, 3), 2u);
  EXPECT_THROW(bfr::RankProfile(mbr, 0), bfr::ParameterError);
  EXPECT_THROW(bfr::RankProfile(mbr, 7), bfr::ParameterError);
  for (const auto& p : {msr, mbr, RegenParams::Mbr(8, 4, 5), RegenParams::Msr(8, 4),
                        RegenParams::Mds(5, 3)}) {
    std::size_t sum = 0;
    for (std::size_t j = 1; j <= p.k_sub; ++j) sum += bfr::RankProfile(p, j);
    EXPECT_EQ(sum, p.msg_size);
  }
}

TEST(PmMbrTest, ExhaustiveSmall) {
  ExhaustiveCheck(RegenParams::Mbr(6, 3, 4), 1);
  ExhaustiveCheck(RegenParams::Mbr(8, 4, 5), 2);
  ExhaustiveCheck(RegenParams::Mbr(8, 2, 6), 3);
}

TEST(PmMsrTest, ExhaustiveSmall) {
  ExhaustiveCheck(RegenParams::Msr(6, 3), 4);
  ExhaustiveCheck(RegenParams::Msr(8, 4), 5);
  ExhaustiveCheck(RegenParams::Msr(7, 2), 6);
}

TEST(MdsTest, ExhaustiveSmall) { ExhaustiveCheck(RegenParams::Mds(7, 4), 7); }

TEST(PmMbrTest, HelperSetIndependence) {
  auto f = GaloisField::Default();
  auto code = bfr::MakeRegeneratingCode(f, RegenParams::Mbr(6, 3, 4));
  const auto nodes = code->Encode(RandomMessage(f, 9, 1, 9));
  const std::vector<std::size_t> h1 = {1, 2, 3, 4}, h2 = {2, 3, 4, 5};
  std::vector<Matrix> c1, c2;
  for (auto h : h1) c1.push_back(nodes[h]);
  for (auto h : h2) c2.push_back(nodes[h]);
  EXPECT_EQ(code->RepairFromHelpers(0, h1, c1).content, nodes[0]);
  EXPECT_EQ(code->RepairFromHelpers(0, h2, c2).content, nodes[0]);
  const std::vector<std::size_t> three = {1, 2, 3};
  c1.pop_back();
  EXPECT_THROW(code->RepairFromHelpers(0, three, c1), bfr::ParameterError);
  const std::vector<std::size_t> dup = {1, 1, 2};
  std::vector<Matrix> cd = {nodes[1], nodes[1], nodes[2]};
  EXPECT_THROW(code->Collect(dup, cd), bfr::ParameterError);
}

TEST(RegenCodeTest, ZeroMessageGivesZeroNodes) {
  auto f = GaloisField::Default();
  for (const auto& p : {RegenParams::Mbr(6, 3, 4), RegenParams::Msr(6, 3)}) {
    auto code = bfr::MakeRegeneratingCode(f, p);
    for (const auto& n : code->Encode(Matrix(f, p.msg_size, 2))) EXPECT_TRUE(n.IsZero());
  }
}

TEST(RegenCodeTest, CorruptedPsiReported) {
  auto f = GaloisField::Default();
  const auto p = RegenParams::Msr(6, 3);
  Matrix psi = bfr::DefaultPsi(f, p);
  psi(2, 3) ^= 1;
  auto code = bfr::MakeRegeneratingCode(f, p, psi);
  EXPECT_FALSE(code->StructuralDefects().empty());
  EXPECT_THROW(bfr::MakeRegeneratingCode(f, p, Matrix(f, 5, 4)), bfr::ParameterError);
}

TEST(RegenCodeTest, GeneratorMatchesEncode) {
  auto f = GaloisField::Default();
  auto code = bfr::MakeRegeneratingCode(f, RegenParams::Msr(6, 3));
  const Matrix g = code->Generator();
  EXPECT_EQ(g.rows(), 12u);
  const Matrix msg = RandomMessage(f, 6, 1, 3);
  const auto nodes = code->Encode(msg);
  EXPECT_EQ((g * msg).Block(4, 0, 2, 1), nodes[2]);
}

TEST(RegenParamsTest, JsonRoundTrip) {
  const auto p = RegenParams::Msr(6, 3);
  const nlohmann::json j = p;
  EXPECT_EQ(j.get<RegenParams>(), p);
}

}  // namespace
