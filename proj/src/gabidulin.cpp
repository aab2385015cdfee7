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

#include "bfr/gabidulin.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

namespace bfr {
namespace {

using Coords = ExtensionField::Coords;

// Incremental row echelon basis over the base field.
class BaseSpan {
 public:
  explicit BaseSpan(const GaloisField& f) : f_(f) {}

  std::size_t rank() const { return rows_.size(); }

  // Adds v if independent of the current span; returns whether it did.
  bool Insert(std::span<const Symbol> v) {
    Coords r(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Symbol c = r[pivots_[i]];
      if (c) f_.Axpy(c, rows_[i], r);
    }
    const auto it = std::find_if(r.begin(), r.end(), [](Symbol s) { return s != 0; });
    if (it == r.end()) return false;
    const std::size_t piv = static_cast<std::size_t>(it - r.begin());
    f_.Scale(f_.Inv(r[piv]), r);
    // Keep earlier rows reduced at the new pivot.
    for (auto& row : rows_) {
      if (row[piv]) f_.Axpy(row[piv], r, row);
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
  }

 private:
  const GaloisField& f_;
  std::vector<Coords> rows_;
  std::vector<std::size_t> pivots_;
};

// Solves A X = B over the extension field; A is k x k, B is k x s.
std::vector<std::vector<Coords>> SolveExt(const ExtensionField& e,
                                          std::vector<std::vector<Coords>> a,
                                          std::vector<std::vector<Coords>> b) {
  const std::size_t k = a.size();
  const GaloisField& f = *e.base();
  auto axpy = [&](const Coords& c, const Coords& x, Coords& y) {
    const Coords p = e.MulRaw(c, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = f.Add(y[i], p[i]);
  };
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && ExtensionField::IsZeroRaw(a[piv][col])) ++piv;
    if (piv == k) throw InsufficientRankError("Moore matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Coords inv = e.InvRaw(a[col][col]);
    for (auto& x : a[col]) x = e.MulRaw(inv, x);
    for (auto& x : b[col]) x = e.MulRaw(inv, x);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || ExtensionField::IsZeroRaw(a[r][col])) continue;
      const Coords factor = a[r][col];
      for (std::size_t j = col; j < k; ++j) axpy(factor, a[col][j], a[r][j]);
      for (std::size_t j = 0; j < b[r].size(); ++j) axpy(factor, b[col][j], b[r][j]);
    }
  }
  return b;
}

void CheckPoints(std::span<const ExtElement> points, std::size_t k) {
  if (k == 0) throw ParameterError("Gabidulin message must be nonempty");
  if (k > points.size()) {
    throw ParameterError("Gabidulin code needs K <= N (K=" + std::to_string(k) +
                         ", N=" + std::to_string(points.size()) + ")");
  }
  if (RankOverBase(points) != points.size()) {
    throw ParameterError("Gabidulin evaluation points are dependent over the base field");
  }
}

Coords StripeOf(const Matrix& m, std::size_t row, std::size_t stripe, std::size_t deg) {
  const auto r = m.row(row);
  return Coords(r.begin() + static_cast<std::ptrdiff_t>(stripe * deg),
                r.begin() + static_cast<std::ptrdiff_t>((stripe + 1) * deg));
}

void CheckStripes(const ExtFieldPtr& field, const Matrix& m) {
  if (!m.field()->SameField(*field->base())) throw FieldMismatchError("stripe matrix field differs");
  if (m.cols() % field->degree() != 0) {
    throw ParameterError("lane count " + std::to_string(m.cols()) +
                         " is not a multiple of the extension degree " +
                         std::to_string(field->degree()));
  }
}

}  // namespace

LinearizedPoly::LinearizedPoly(std::vector<ExtElement> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ParameterError("linearized polynomial needs a coefficient");
  for (const auto& c : coeffs_) {
    if (!c.field()->SameField(*coeffs_.front().field())) {
      throw FieldMismatchError("coefficients from different fields");
    }
  }
}

ExtElement LinearizedPoly::operator()(const ExtElement& x) const {
  ExtElement acc = x.field()->Zero();
  ExtElement power = x;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    acc = acc + coeffs_[i] * power;
    power = Frobenius(power, 1);
  }
  return acc;
}

std::vector<ExtElement> BasisPoints(const ExtFieldPtr& field, std::size_t n) {
  if (n > field->degree()) {
    throw ParameterError("need m >= N for " + std::to_string(n) + " independent points, m=" +
                         std::to_string(field->degree()));
  }
  std::vector<ExtElement> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(field->BasisElement(i));
  return out;
}

std::vector<ExtElement> GabEncode(std::span<const ExtElement> message,
                                  std::span<const ExtElement> points) {
  CheckPoints(points, message.size());
  const LinearizedPoly f(std::vector<ExtElement>(message.begin(), message.end()));
  std::vector<ExtElement> out;
  for (const auto& g : points) out.push_back(f(g));
  return out;
}

std::vector<ExtElement> GabDecode(std::span<const Evaluation> evals, std::size_t k) {
  if (evals.empty()) throw InsufficientRankError("no evaluations");
  const ExtFieldPtr& field = evals.front().point.field();
  std::vector<ExtElement> points;
  Matrix values(field->base(), evals.size(), field->degree());
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].value.field()->SameField(*field) || !evals[i].point.field()->SameField(*field)) {
      throw FieldMismatchError("evaluations from different fields");
    }
    points.push_back(evals[i].point);
    for (std::size_t j = 0; j < field->degree(); ++j) values(i, j) = evals[i].value.coords()[j];
  }
  const Matrix msg = GabDecodeStripes(field, points, values, k);
  std::vector<ExtElement> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(field->FromCoords(StripeOf(msg, i, 0, field->degree())));
  return out;
}

Matrix GabEncodeStripes(const ExtFieldPtr& field, const Matrix& message,
                        std::span<const ExtElement> points) {
  CheckStripes(field, message);
  CheckPoints(points, message.rows());
  const std::size_t m = field->degree(), k = message.rows(), stripes = message.cols() / m;
  const GaloisField& f = *field->base();
  // frob[j][i] = g_j^(q^i)
  std::vector<std::vector<Coords>> frob(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    Coords p = points[j].coords();
    for (std::size_t i = 0; i < k; ++i) {
      frob[j].push_back(p);
      p = field->FrobeniusRaw(p, 1);
    }
  }
  Matrix out(message.field(), points.size(), message.cols());
  for (std::size_t s = 0; s < stripes; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      const Coords a = StripeOf(message, i, s, m);
      if (ExtensionField::IsZeroRaw(a)) continue;
      for (std::size_t j = 0; j < points.size(); ++j) {
        const Coords prod = field->MulRaw(a, frob[j][i]);
        auto dst = out.row(j).subspan(s * m, m);
        for (std::size_t c = 0; c < m; ++c) dst[c] = f.Add(dst[c], prod[c]);
      }
    }
  }
  return out;
}

Matrix GabDecodeStripes(const ExtFieldPtr& field, std::span<const ExtElement> points,
                        const Matrix& values, std::size_t k) {
  CheckStripes(field, values);
  if (values.rows() != points.size()) throw ParameterError("point/value count mismatch");
  if (k == 0) throw ParameterError("Gabidulin message must be nonempty");
  const std::size_t m = field->degree(), stripes = values.cols() / m;
  BaseSpan span(*field->base());
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < points.size() && chosen.size() < k; ++i) {
    if (!points[i].field()->SameField(*field)) throw FieldMismatchError("point from another field");
    if (span.Insert(points[i].coords())) chosen.push_back(i);
  }
  if (chosen.size() < k) {
    throw InsufficientRankError("evaluation points have rank " + std::to_string(chosen.size()) +
                                " over the base field, need " + std::to_string(k));
  }
  std::vector<std::vector<Coords>> a(k), b(k);
  for (std::size_t r = 0; r < k; ++r) {
    Coords p = points[chosen[r]].coords();
    for (std::size_t i = 0; i < k; ++i) {
      a[r].push_back(p);
      p = field->FrobeniusRaw(p, 1);
    }
    for (std::size_t s = 0; s < stripes; ++s) b[r].push_back(StripeOf(values, chosen[r], s, m));
  }
  const auto x = SolveExt(*field, std::move(a), std::move(b));
  Matrix out(values.field(), k, values.cols());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t s = 0; s < stripes; ++s) {
      std::copy(x[i][s].begin(), x[i][s].end(), out.row(i).begin() + static_cast<std::ptrdiff_t>(s * m));
    }
  }
  return out;
}

RankProfileQuery MakeRankQuery(const Design& design, std::span<const std::size_t> blocks,
                               std::size_t k_c) {
  RankProfileQuery q;
  q.b_c = blocks.size();
  q.k_c = k_c;
  q.availability.assign(design.v, 0);
  for (std::size_t b : blocks) {
    if (b >= design.blocks.size()) throw ParameterError("block " + std::to_string(b) + " out of range");
    for (std::size_t t : design.blocks[b]) ++q.availability[t];
  }
  return q;
}

std::size_t AccumulatedRank(const RankProfileQuery& query, const RegenParams& sub) {
  std::size_t total = 0;
  for (std::size_t avail : query.availability) {
    const std::size_t j_max = std::min(query.k_c * avail, sub.n_sub);
    for (std::size_t j = 1; j <= j_max; ++j) total += RankProfile(sub, j);
  }
  return total;
}

MinRankReport MinRankOverCollections(const Design& design, const RegenParams& sub,
                                     std::size_t rho, std::size_t k_c) {
  const std::size_t b = design.blocks.size();
  if (rho >= b) throw ParameterError("rho must be below the block count");
  const std::size_t r = design.r();
  MinRankReport rep;
  rep.rho = rho;
  rep.b_c = b - rho;
  rep.min_rank = std::numeric_limits<std::size_t>::max();
  std::map<std::map<std::size_t, std::size_t>, std::size_t> shape_index;
  std::vector<std::size_t> idx(rep.b_c);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    const RankProfileQuery q = MakeRankQuery(design, idx, k_c);
    const std::size_t rank = AccumulatedRank(q, sub);
    std::map<std::size_t, std::size_t> deficits;
    for (std::size_t a : q.availability) {
      if (a < r) ++deficits[r - a];
    }
    auto [it, fresh] = shape_index.try_emplace(deficits, rep.shapes.size());
    if (fresh) rep.shapes.push_back({deficits, rank, 0, idx});
    ++rep.shapes[it->second].count;
    if (rank < rep.min_rank) {
      rep.min_rank = rank;
      rep.worst_blocks = idx;
    }
    std::size_t i = rep.b_c;
    while (i > 0 && idx[i - 1] == b - rep.b_c + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < rep.b_c; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(rep.shapes.begin(), rep.shapes.end(),
            [](const CollectionShape& x, const CollectionShape& y) { return x.rank < y.rank; });
  return rep;
}

nlohmann::json FeasibilityReport(const Design& design, const RegenParams& sub, std::size_t k_c) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t rho = 0; rho < design.blocks.size(); ++rho) {
    const MinRankReport rep = MinRankOverCollections(design, sub, rho, k_c);
    nlohmann::json shapes = nlohmann::json::array();
    for (const auto& s : rep.shapes) {
      nlohmann::json def = nlohmann::json::object();
      for (auto [d, n] : s.deficits) def[std::to_string(d)] = n;
      shapes.push_back({{"deficits", def}, {"rank", s.rank}, {"count", s.count},
                        {"example_blocks", s.example_blocks}});
    }
    rows.push_back({{"rho", rho},
                    {"b_c", rep.b_c},
                    {"min_rank", rep.min_rank},
                    {"k_max", rep.min_rank},
                    {"worst_blocks", rep.worst_blocks},
                    {"shapes", shapes}});
  }
  return rows;
}

}  // namespace bfr
