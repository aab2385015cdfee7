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

#include "bfr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

#include "bfr/errors.hpp"

namespace bfr {
namespace {

Rational R(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

void Require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

void CheckNonNegative(const Rational& alpha, const Rational& beta) {
  Require(alpha >= 0 && beta >= 0, "alpha and beta must be nonnegative");
}

void CheckBlockParams(std::size_t b, std::size_t k, std::size_t d) {
  Require(b >= 1, "b must be positive");
  Require(k >= 1, "k must be positive");
  Require(k % b == 0, "b must divide k");
  Require(b * d >= (b - 1) * k, "d must be at least (b-1) k / b");
}

// Coefficients c with terms min(alpha, c beta), ascending.
std::vector<std::int64_t> CutCoefficients(std::size_t b, std::size_t k, std::size_t d) {
  std::vector<std::int64_t> c;
  for (std::size_t j = 0; j < b; ++j) {
    for (std::size_t i = 0; i < k / b; ++i) {
      c.push_back(static_cast<std::int64_t>(d) - static_cast<std::int64_t>(j + (b - 1) * i));
    }
  }
  std::sort(c.begin(), c.end());
  return c;
}

Rational PositiveOrThrow(const Rational& den, const char* what) {
  if (den <= 0) throw ParameterError(std::string(what) + ": nonpositive denominator");
  return den;
}

std::size_t EffectiveBlocks(std::size_t b, std::size_t rho) {
  Require(rho < b, "rho must be less than b");
  return b - rho;
}

std::vector<std::size_t> BlockCounts(std::size_t b, std::size_t k) {
  std::vector<std::size_t> n(b, k / b);
  for (std::size_t j = 0; j < k % b; ++j) ++n[j];
  return n;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string ToString(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double ToDouble(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational FilesizeBoundB2(std::size_t k, std::size_t d, Rational alpha, Rational beta) {
  Require(k % 2 == 0, "k must be even");
  Require(2 * d >= k, "d must be at least k/2");
  CheckNonNegative(alpha, beta);
  Rational m = 0;
  for (std::size_t i = 0; i < k / 2; ++i) m += std::min(alpha, R(d - i) * beta);
  for (std::size_t i = 1; i <= k / 2; ++i) m += std::min(alpha, R(d - i) * beta);
  return m;
}

Rational FilesizeBoundGeneral(std::size_t b, std::size_t k, std::size_t d, Rational alpha,
                              Rational beta) {
  CheckBlockParams(b, k, d);
  CheckNonNegative(alpha, beta);
  Rational m = 0;
  for (std::int64_t c : CutCoefficients(b, k, d)) m += std::min(alpha, Rational(c) * beta);
  return m;
}

TradeoffPoint MsrPoint(std::size_t b, std::size_t k, std::size_t d, Rational M, std::size_t rho) {
  const std::size_t bc = EffectiveBlocks(b, rho);
  Require(k % bc == 0, "b - rho must divide k");
  const Rational den =
      PositiveOrThrow(R(k * d) - R(k * k) * (R(bc - 1) / R(bc)), "MSR point");
  return {M / R(k), M * R(d) / den, M};
}

TradeoffPoint MbrPoint(std::size_t b, std::size_t k, std::size_t d, Rational M, std::size_t rho) {
  const std::size_t bc = EffectiveBlocks(b, rho);
  Require(k % bc == 0, "b - rho must divide k");
  const Rational den =
      PositiveOrThrow(R(k * d) - R(k * k) * (R(bc - 1) / R(2 * bc)), "MBR point");
  const Rational a = M * R(d) / den;
  return {a, a, M};
}

TradeoffPoint MsrPointB2(std::size_t k, std::size_t d, Rational M) {
  Require(2 * d >= k + k % 2, "d must be at least ceil(k/2)");
  const std::int64_t kk = static_cast<std::int64_t>(k), dd = static_cast<std::int64_t>(d);
  const std::int64_t den = 2 * kk * dd - kk * kk - (k % 2 ? kk : 0);
  PositiveOrThrow(Rational(den), "MSR point");
  return {M / R(k), Rational(2 * dd) * M / Rational(den), M};
}

TradeoffPoint MbrPointB2(std::size_t k, std::size_t d, Rational M) {
  Require(2 * d >= k + k % 2, "d must be at least ceil(k/2)");
  const std::int64_t kk = static_cast<std::int64_t>(k), dd = static_cast<std::int64_t>(d);
  const std::int64_t den = 4 * dd * kk - kk * kk + (k % 2 ? 1 : 0);
  PositiveOrThrow(Rational(den), "MBR point");
  const Rational a = Rational(4 * dd) * M / Rational(den);
  return {a, a, M};
}

ClassicalGammas ClassicalPoints(std::size_t k, std::size_t d, Rational M) {
  Require(k >= 1, "k must be positive");
  Require(d >= k, "classical points need d >= k");
  return {M * R(d) / (R(k) * R(d - k + 1)), R(2) * M * R(d) / (R(k) * R(2 * d - k + 1))};
}

Rational FlowgraphMincut(std::size_t b, std::size_t k, std::size_t d, Rational alpha,
                         Rational beta, std::span<const std::size_t> order) {
  Require(b >= 2, "the flow graph needs at least two blocks");
  Require(d % (b - 1) == 0, "b - 1 must divide d");
  Require(order.size() == k, "failure sequence must have k entries");
  CheckNonNegative(alpha, beta);
  std::vector<std::size_t> seen(b, 0);
  for (std::size_t blk : order) {
    Require(blk < b, "failure sequence names a block out of range");
    ++seen[blk];
  }
  auto want = BlockCounts(b, k);
  auto got = seen;
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  Require(got == want, "failure sequence must spread k newcomers evenly over the blocks");
  if (alpha == Rational(0) || beta == Rational(0)) return Rational(0);

  const std::int64_t scale = std::lcm(alpha.denominator(), beta.denominator());
  const std::int64_t a = alpha.numerator() * (scale / alpha.denominator());
  const std::int64_t e = beta.numerator() * (scale / beta.denominator());
  const std::int64_t inf = static_cast<std::int64_t>(k) * a + 1;
  const std::size_t d_r = d / (b - 1);

  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, std::int64_t,
                      boost::property<boost::edge_residual_capacity_t, std::int64_t,
                                      boost::property<boost::edge_reverse_t,
                                                      Traits::edge_descriptor>>>>;
  // 0 = source, 1 = collector, newcomer t: in = 2 + 2t, out = 3 + 2t.
  Graph g(2 + 2 * k);
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto add = [&](std::size_t u, std::size_t v, std::int64_t c) {
    const auto fwd = boost::add_edge(u, v, g).first;
    const auto bwd = boost::add_edge(v, u, g).first;
    cap[fwd] = c;
    cap[bwd] = 0;
    rev[fwd] = bwd;
    rev[bwd] = fwd;
  };

  std::vector<std::vector<std::size_t>> by_block(b);
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t in = 2 + 2 * t, out = 3 + 2 * t;
    std::size_t original = 0;
    for (std::size_t blk = 0; blk < b; ++blk) {
      if (blk == order[t]) continue;
      const auto& prev = by_block[blk];
      const std::size_t use = std::min(prev.size(), d_r);
      for (std::size_t i = prev.size() - use; i < prev.size(); ++i) add(3 + 2 * prev[i], in, e);
      original += d_r - use;
    }
    if (original > 0) add(0, in, static_cast<std::int64_t>(original) * e);
    add(in, out, a);
    add(out, 1, inf);
    by_block[order[t]].push_back(t);
  }
  const std::int64_t flow = boost::edmonds_karp_max_flow(g, 0, 1);
  return Rational(flow, scale);
}

OrderMinimum MinOverFailureOrders(std::size_t b, std::size_t k, std::size_t d, Rational alpha,
                                  Rational beta, std::size_t max_enumerated_k) {
  std::vector<std::size_t> order;
  OrderMinimum best;
  if (k > max_enumerated_k) {
    for (std::size_t t = 0; t < k; ++t) order.push_back(t % b);
    best.value = FlowgraphMincut(b, k, d, alpha, beta, order);
    best.order = order;
    best.orders = 1;
    return best;
  }
  const auto counts = BlockCounts(b, k);
  for (std::size_t blk = 0; blk < b; ++blk) order.insert(order.end(), counts[blk], blk);
  do {
    const Rational v = FlowgraphMincut(b, k, d, alpha, beta, order);
    if (best.orders == 0 || v < best.value) {
      best.value = v;
      best.order = order;
    }
    ++best.orders;
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

Rational MinAlpha(std::size_t b, std::size_t k, std::size_t d, Rational beta, Rational M) {
  CheckBlockParams(b, k, d);
  Require(beta >= 0, "beta must be nonnegative");
  Require(M > 0, "M must be positive");
  std::vector<Rational> v;
  for (std::int64_t c : CutCoefficients(b, k, d)) v.push_back(Rational(c) * beta);
  Rational prefix = 0;
  Rational lower = 0;
  for (std::size_t t = 0; t < k; ++t) {
    // On [lower, v[t]] the bound is prefix + (k - t) alpha.
    const Rational a = (M - prefix) / R(k - t);
    if (a <= v[t]) return std::max(a, lower);
    prefix += v[t];
    lower = v[t];
  }
  throw ParameterError("file size " + ToString(M) + " exceeds the bound for every alpha");
}

std::vector<TradeoffPoint> TradeoffCurve(std::size_t b, std::size_t k, std::size_t d, Rational M,
                                         std::size_t samples, std::size_t rho) {
  Require(samples >= 2, "a curve needs at least two samples");
  const std::size_t bc = EffectiveBlocks(b, rho);
  const auto msr = MsrPoint(b, k, d, M, rho);
  const auto mbr = MbrPoint(b, k, d, M, rho);
  std::vector<TradeoffPoint> out;
  for (std::size_t s = 0; s < samples; ++s) {
    const Rational gamma = msr.gamma + (mbr.gamma - msr.gamma) * R(s) / R(samples - 1);
    out.push_back({MinAlpha(bc, k, d, gamma / R(d), M), gamma, M});
  }
  return out;
}

std::string BoundsCsv(std::size_t b, std::size_t k, std::size_t d, Rational M, std::size_t rho,
                      std::size_t samples) {
  const std::size_t bc = EffectiveBlocks(b, rho);
  TradeoffPoint msr, mbr;
  if (bc == 2 && k % 2 == 1) {
    msr = MsrPointB2(k, d, M);
    mbr = MbrPointB2(k, d, M);
  } else {
    msr = MsrPoint(b, k, d, M, rho);
    mbr = MbrPoint(b, k, d, M, rho);
  }
  std::ostringstream os;
  os << "b,k,d,rho,M,alpha_msr,gamma_msr,alpha_mbr,gamma_mbr,gamma_classical_msr,"
        "gamma_classical_mbr\n";
  os << b << ',' << k << ',' << d << ',' << rho << ',' << ToString(M) << ','
     << ToString(msr.alpha) << ',' << ToString(msr.gamma) << ',' << ToString(mbr.alpha) << ','
     << ToString(mbr.gamma) << ',';
  if (d >= k) {
    const auto c = ClassicalPoints(k, d, M);
    os << ToString(c.msr) << ',' << ToString(c.mbr);
  } else {
    os << ',';
  }
  os << '\n';
  if (samples > 0 && k % bc == 0) {
    os << "\ngamma,alpha\n";
    for (const auto& p : TradeoffCurve(b, k, d, M, samples, rho)) {
      os << FormatDouble(ToDouble(p.gamma)) << ',' << FormatDouble(ToDouble(p.alpha)) << '\n';
    }
  }
  return os.str();
}

}  // namespace bfr
