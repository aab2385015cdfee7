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

#include <random>

#include <gtest/gtest.h>

namespace {

using ::bfr::BfrCode;
using ::bfr::EventKind;
using ::bfr::GaloisField;
using ::bfr::Matrix;
using ::bfr::RegenParams;
using ::bfr::Trace;
using ::bfr::TraceEvent;

Matrix RandomFile(const bfr::FieldPtr& f, std::size_t rows, std::size_t lanes, unsigned seed) {
  std::mt19937 rng(seed);
  Matrix m(f, rows, lanes);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < lanes; ++j) m(i, j) = static_cast<bfr::Symbol>(rng() & 255);
  }
  return m;
}

TraceEvent Fail(std::uint64_t t, std::size_t blk) { return {t, EventKind::kBlockFail, blk, {}}; }
TraceEvent Repair(std::uint64_t t) { return {t, EventKind::kRepairAll, {}, {}}; }
TraceEvent Collect(std::uint64_t t) { return {t, EventKind::kCollect, {}, {}}; }

TEST(RunTraceTest, FailRepairCollect) {
  auto f = GaloisField::Default();
  const BfrCode code(f, bfr::BuildPlanePlacement(2, RegenParams::Msr(6, 3)));
  const Matrix file = RandomFile(f, 42, 4, 1);
  const Trace t{0, {Fail(0, 0), Repair(1), Collect(2)}};
  const auto rep = bfr::RunTrace(code, file, t);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.collect_successes, 1u);
  EXPECT_EQ(rep.repairs, 2u);
  EXPECT_EQ(rep.ledger.total, 24u);
  EXPECT_TRUE(bfr::RunTrace(code, file, Trace{}).ok);
}

TEST(RunTraceTest, RejectsBadTraces) {
  auto f = GaloisField::Default();
  const BfrCode code(f, bfr::BuildTranspose(8, 4));
  const Matrix file = RandomFile(f, 12, 1, 2);
  EXPECT_THROW(bfr::RunTrace(code, file, Trace{0, {Fail(0, 0), Fail(1, 1)}}), bfr::ParameterError);
  EXPECT_THROW(bfr::RunTrace(code, file, Trace{0, {Repair(0)}}), bfr::ParameterError);
  EXPECT_THROW(bfr::RunTrace(code, file, Trace{0, {Fail(0, 0), Collect(1)}}), bfr::ParameterError);
  EXPECT_THROW(bfr::RunTrace(code, file, Trace{0, {Fail(0, 2)}}), bfr::ParameterError);
  TraceEvent c = Collect(0);
  c.choices = std::vector<bfr::NodeChoice>{{0, {0, 1}}, {1, {0}}};
  EXPECT_THROW(bfr::RunTrace(code, file, Trace{0, {c}}), bfr::ParameterError);
}

TEST(RunTraceTest, RandomTraceOnTranspose) {
  auto f = GaloisField::Default();
  const BfrCode code(f, bfr::BuildTranspose(8, 4));
  const Matrix file = RandomFile(f, 12, 8, 3);
  const auto t = bfr::RandomTrace(7, 100, code.params());
  ASSERT_EQ(t.events.size(), 100u);
  const auto rep = bfr::RunTrace(code, file, t);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.collect_successes, rep.collects);
  EXPECT_GT(rep.repairs, 0u);
  for (const auto& e : rep.ledger.repairs) EXPECT_EQ(e.downloaded, 4u);
}

TEST(RunTraceTest, LedgerMatchesGammaOnBothPlaneInstances) {
  auto f = GaloisField::Default();
  for (const auto& sub : {RegenParams::Msr(6, 3), RegenParams::Mbr(6, 3, 4)}) {
    const BfrCode code(f, bfr::BuildPlanePlacement(2, sub));
    const Matrix file = RandomFile(f, code.params().M, 2, 4);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto rep = bfr::RunTrace(code, file, bfr::RandomTrace(seed, 40, code.params()));
      ASSERT_TRUE(rep.ok);
      for (const auto& e : rep.ledger.repairs) EXPECT_EQ(e.downloaded, code.params().gamma());
      EXPECT_EQ(rep.exact_repairs, rep.repairs);
    }
  }
}

TEST(RandomTraceTest, DeterministicAndValid) {
  const auto p = bfr::BuildGabidulinPlane(2, RegenParams::Msr(6, 3), 1);
  const nlohmann::json a = bfr::RandomTrace(11, 50, p);
  const nlohmann::json b = bfr::RandomTrace(11, 50, p);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, nlohmann::json(bfr::RandomTrace(12, 50, p)));
  EXPECT_TRUE(bfr::RandomTrace(1, 0, p).events.empty());
  const BfrCode code(GaloisField::Default(), p);
  const auto t = bfr::RandomTrace(5, 200, p);
  EXPECT_NO_THROW(bfr::ValidateTrace(code, t));
  for (const auto& e : t.events) {
    if (e.kind != EventKind::kCollect) continue;
    ASSERT_TRUE(e.choices.has_value());
    EXPECT_EQ(e.choices->size(), p.b_c);
    for (const auto& c : *e.choices) EXPECT_EQ(c.nodes.size(), p.k_c);
  }
  EXPECT_EQ(a.get<Trace>().events.size(), 50u);
}

}  // namespace
