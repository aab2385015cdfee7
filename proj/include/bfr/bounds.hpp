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
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace bfr {

using Rational = boost::rational<std::int64_t>;

std::string ToString(const Rational& r);
double ToDouble(const Rational& r);

struct TradeoffPoint {
  Rational alpha;
  Rational gamma;
  Rational M;
  friend bool operator==(const TradeoffPoint&, const TradeoffPoint&) = default;
};

/// Two-block cut bound; k even, d >= k/2.
Rational FilesizeBoundB2(std::size_t k, std::size_t d, Rational alpha, Rational beta);

/// b-block cut bound: sum over j < b, i < k/b of min(alpha, (d - j - (b-1) i) beta).
Rational FilesizeBoundGeneral(std::size_t b, std::size_t k, std::size_t d, Rational alpha,
                              Rational beta);

/// Block-resilient MSR/MBR points. With rho > 0, b is replaced by b - rho.
TradeoffPoint MsrPoint(std::size_t b, std::size_t k, std::size_t d, Rational M,
                       std::size_t rho = 0);
TradeoffPoint MbrPoint(std::size_t b, std::size_t k, std::size_t d, Rational M,
                       std::size_t rho = 0);

/// b = 2 points, including odd k.
TradeoffPoint MsrPointB2(std::size_t k, std::size_t d, Rational M);
TradeoffPoint MbrPointB2(std::size_t k, std::size_t d, Rational M);

struct ClassicalGammas {
  Rational msr;
  Rational mbr;
};

/// Classical regenerating-code bandwidths; needs d >= k.
ClassicalGammas ClassicalPoints(std::size_t k, std::size_t d, Rational M);

/// Max-flow from the source to a collector attached to k newcomers that
/// replaced failed nodes in the given block order. Each newcomer takes
/// d / (b - 1) helpers from every other block, preferring earlier newcomers;
/// the rest come from original nodes, which are merged into the source.
Rational FlowgraphMincut(std::size_t b, std::size_t k, std::size_t d, Rational alpha,
                         Rational beta, std::span<const std::size_t> order);

struct OrderMinimum {
  Rational value;
  std::vector<std::size_t> order;  // an order attaining the minimum
  std::size_t orders = 0;          // orders evaluated
};

/// Minimum of FlowgraphMincut over all distinct orders in which block j
/// contributes k/b newcomers (the first k mod b blocks one more). Beyond
/// `max_enumerated_k` only the round-robin order is evaluated.
OrderMinimum MinOverFailureOrders(std::size_t b, std::size_t k, std::size_t d, Rational alpha,
                                  Rational beta, std::size_t max_enumerated_k = 8);

/// Smallest alpha with FilesizeBoundGeneral(alpha, beta) >= M; throws if none.
Rational MinAlpha(std::size_t b, std::size_t k, std::size_t d, Rational beta, Rational M);

/// `samples` points with gamma evenly spaced from the MSR to the MBR point.
std::vector<TradeoffPoint> TradeoffCurve(std::size_t b, std::size_t k, std::size_t d, Rational M,
                                         std::size_t samples, std::size_t rho = 0);

/// CSV with a header row, one summary row and, if samples > 0, the curve.
std::string BoundsCsv(std::size_t b, std::size_t k, std::size_t d, Rational M, std::size_t rho,
                      std::size_t samples);

}  // namespace bfr
