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

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

namespace bfr {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::string Str(std::size_t v) { return std::to_string(v); }

// Lane rows of a node: content row s.
std::span<const Symbol> Lane(const Matrix& m, std::size_t s) { return m.row(s); }

// All k-subsets of [0, n) in lexicographic order, stopping at `limit`.
template <class F>
void ForEachSubset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t Choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > 1'000'000'000) return r;
  }
  return r;
}

// Checks that every k-subset of rows of `m` (restricted to the first `cols`
// columns) is invertible. Skipped beyond 20000 subsets.
void CheckSubsetsInvertible(const Matrix& m, std::size_t k, std::size_t cols,
                            const std::string& what, std::vector<std::string>& out) {
  if (Choose(m.rows(), k) > 20000) return;
  const Matrix sub = m.Block(0, 0, m.rows(), cols);
  ForEachSubset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    if (sub.SelectRows(rows).Rank() < k) {
      std::string s = what + " singular on rows {";
      for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "," : "") + Str(rows[i]);
      out.push_back(s + "}");
      return false;
    }
    return true;
  });
}

// ---------------------------------------------------------------------------
// Product-matrix MBR: node i stores psi_i^T M with M = [[S, T], [T^T, 0]].

class PmMbrCode final : public RegeneratingCode {
 public:
  PmMbrCode(FieldPtr field, RegenParams p, Matrix psi)
      : RegeneratingCode(std::move(field), p, std::move(psi)) {
    const std::size_t k = p.k_sub, d = p.d_sub;
    index_.assign(d * d, kNone);
    std::size_t next = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
        index_[i * d + j] = index_[j * d + i] = next++;
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = k; j < d; ++j) {
        index_[i * d + j] = index_[j * d + i] = next++;
      }
    }
  }

  std::vector<Matrix> Encode(const Matrix& message) const override {
    const std::size_t d = params_.d_sub;
    if (message.rows() != params_.msg_size) {
      throw ParameterError("MBR message has " + Str(message.rows()) + " symbols, expected " +
                           Str(params_.msg_size));
    }
    std::vector<Matrix> nodes;
    for (std::size_t i = 0; i < params_.n_sub; ++i) {
      Matrix node(field_, d, message.cols());
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t a = 0; a < d; ++a) {
          const std::size_t idx = index_[a * d + j];
          if (idx != kNone) node.AddScaledRow(j, psi_(i, a), Lane(message, idx));
        }
      }
      nodes.push_back(std::move(node));
    }
    return nodes;
  }

  Matrix HelperMessage(std::size_t helper, const Matrix& content,
                       std::size_t failed) const override {
    CheckNode(helper);
    CheckNode(failed);
    Matrix out(field_, 1, content.cols());
    for (std::size_t j = 0; j < params_.d_sub; ++j) {
      out.AddScaledRow(0, psi_(failed, j), content.row(j));
    }
    return out;
  }

  Matrix Repair(std::size_t failed, std::span<const std::size_t> helpers,
                std::span<const Matrix> messages) const override {
    CheckHelpers(failed, helpers, params_.d_sub);
    const Matrix rhs = Stack(messages);
    // Psi_rep (M psi_f) = messages; M symmetric so M psi_f is the lost row.
    return Solve(psi_.SelectRows(helpers), rhs);
  }

  Matrix Collect(std::span<const std::size_t> nodes,
                 std::span<const Matrix> contents) const override {
    CheckCollect(nodes, contents);
    const std::size_t k = params_.k_sub, d = params_.d_sub;
    const std::size_t lanes = contents.front().cols();
    const Matrix phi = psi_.SelectRows(nodes).Block(0, 0, k, k);
    const Matrix delta = psi_.SelectRows(nodes).Block(0, k, k, d - k);
    const Matrix phi_inv = phi.Inverse();
    // Phi T = trailing columns of the contents.
    std::vector<Matrix> t_cols;  // t_cols[c]: column c of T, k x L
    for (std::size_t c = 0; c < d - k; ++c) {
      Matrix rhs(field_, k, lanes);
      for (std::size_t i = 0; i < k; ++i) rhs.SetRows(i, contents[i].Block(k + c, 0, 1, lanes));
      t_cols.push_back(phi_inv * rhs);
    }
    // Phi S = leading columns minus Delta T^T.
    std::vector<Matrix> s_cols;
    for (std::size_t c = 0; c < k; ++c) {
      Matrix rhs(field_, k, lanes);
      for (std::size_t i = 0; i < k; ++i) {
        rhs.SetRows(i, contents[i].Block(c, 0, 1, lanes));
        for (std::size_t e = 0; e < d - k; ++e) {
          rhs.AddScaledRow(i, delta(i, e), t_cols[e].row(c));
        }
      }
      s_cols.push_back(phi_inv * rhs);
    }
    Matrix msg(field_, params_.msg_size, lanes);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) msg.SetRows(index_[i * d + j], s_cols[j].Block(i, 0, 1, lanes));
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = k; j < d; ++j) {
        msg.SetRows(index_[i * d + j], t_cols[j - k].Block(i, 0, 1, lanes));
      }
    }
    return msg;
  }

  std::vector<std::string> StructuralDefects() const override {
    std::vector<std::string> out;
    CheckSubsetsInvertible(psi_, params_.d_sub, params_.d_sub, "Psi", out);
    CheckSubsetsInvertible(psi_, params_.k_sub, params_.k_sub, "Phi", out);
    return out;
  }

 private:
  Matrix Stack(std::span<const Matrix> messages) const {
    Matrix rhs(field_, messages.size(), messages.front().cols());
    for (std::size_t i = 0; i < messages.size(); ++i) {
      if (messages[i].rows() != 1) throw ParameterError("helper message must be one symbol");
      rhs.SetRows(i, messages[i]);
    }
    return rhs;
  }

  std::vector<std::size_t> index_;  // message index of M(a, b), or kNone
};

// ---------------------------------------------------------------------------
// Product-matrix MSR at d = 2k - 2: node i stores psi_i^T [S1; S2] with
// psi_i = [phi_i, lambda_i phi_i].

class PmMsrCode final : public RegeneratingCode {
 public:
  PmMsrCode(FieldPtr field, RegenParams p, Matrix psi)
      : RegeneratingCode(std::move(field), p, std::move(psi)) {
    const std::size_t a = p.alpha_sub;
    index_.assign(a * a, kNone);
    std::size_t next = 0;
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = i; j < a; ++j) index_[i * a + j] = index_[j * a + i] = next++;
    }
  }

  std::size_t S1(std::size_t i, std::size_t j) const { return index_[i * params_.alpha_sub + j]; }
  std::size_t S2(std::size_t i, std::size_t j) const {
    const std::size_t a = params_.alpha_sub;
    return a * (a + 1) / 2 + index_[i * a + j];
  }

  Symbol LambdaOf(std::size_t i) const {
    const Symbol lead = psi_(i, 0);
    if (lead == 0) return 0;
    return field_->Div(psi_(i, params_.alpha_sub), lead);
  }

  std::vector<Matrix> Encode(const Matrix& message) const override {
    const std::size_t a = params_.alpha_sub;
    if (message.rows() != params_.msg_size) {
      throw ParameterError("MSR message has " + Str(message.rows()) + " symbols, expected " +
                           Str(params_.msg_size));
    }
    std::vector<Matrix> nodes;
    for (std::size_t i = 0; i < params_.n_sub; ++i) {
      Matrix node(field_, a, message.cols());
      for (std::size_t j = 0; j < a; ++j) {
        for (std::size_t r = 0; r < a; ++r) {
          node.AddScaledRow(j, psi_(i, r), Lane(message, S1(r, j)));
          node.AddScaledRow(j, psi_(i, a + r), Lane(message, S2(r, j)));
        }
      }
      nodes.push_back(std::move(node));
    }
    return nodes;
  }

  Matrix HelperMessage(std::size_t helper, const Matrix& content,
                       std::size_t failed) const override {
    CheckNode(helper);
    CheckNode(failed);
    Matrix out(field_, 1, content.cols());
    for (std::size_t j = 0; j < params_.alpha_sub; ++j) {
      out.AddScaledRow(0, psi_(failed, j), content.row(j));
    }
    return out;
  }

  Matrix Repair(std::size_t failed, std::span<const std::size_t> helpers,
                std::span<const Matrix> messages) const override {
    CheckHelpers(failed, helpers, params_.d_sub);
    const std::size_t a = params_.alpha_sub;
    Matrix rhs(field_, messages.size(), messages.front().cols());
    for (std::size_t i = 0; i < messages.size(); ++i) rhs.SetRows(i, messages[i]);
    // x = [S1 phi_f; S2 phi_f]
    const Matrix x = Solve(psi_.SelectRows(helpers), rhs);
    const Symbol lambda = LambdaOf(failed);
    Matrix out = x.Block(0, 0, a, x.cols());
    for (std::size_t j = 0; j < a; ++j) out.AddScaledRow(j, lambda, x.row(a + j));
    return out;
  }

  Matrix Collect(std::span<const std::size_t> nodes,
                 std::span<const Matrix> contents) const override {
    CheckCollect(nodes, contents);
    const std::size_t k = params_.k_sub, a = params_.alpha_sub;
    const std::size_t lanes = contents.front().cols();
    const GaloisField& f = *field_;
    std::vector<Symbol> lambda(k);
    for (std::size_t i = 0; i < k; ++i) lambda[i] = LambdaOf(nodes[i]);

    // y(i, j) = content_i . phi_j = P_ij + lambda_i Q_ij.
    auto y = [&](std::size_t i, std::size_t j) {
      Matrix out(field_, 1, lanes);
      for (std::size_t s = 0; s < a; ++s) out.AddScaledRow(0, psi_(nodes[j], s), contents[i].row(s));
      return out;
    };
    std::vector<Matrix> p(k * k), q(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const Matrix yij = y(i, j), yji = y(j, i);
        const Symbol diff = f.Sub(lambda[i], lambda[j]);
        if (diff == 0) throw LinearAlgebraError("MSR collection needs distinct lambdas");
        Matrix qij = yij + yji;
        f.Scale(f.Inv(diff), qij.row(0));
        Matrix pij = yij;
        pij.AddScaledRow(0, lambda[i], qij.row(0));
        p[i * k + j] = p[j * k + i] = pij;
        q[i * k + j] = q[j * k + i] = qij;
      }
    }
    // For each node i: Phi_{-i} (S phi_i) = [P_ij]_{j != i}.
    auto recover_columns = [&](const std::vector<Matrix>& pq) {
      std::vector<Matrix> cols;  // cols[i] = S phi_i, a x L
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < k; ++j) {
          if (j != i) others.push_back(nodes[j]);
        }
        Matrix rhs(field_, a, lanes);
        std::size_t r = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (j != i) rhs.SetRows(r++, pq[i * k + j]);
        }
        cols.push_back(Solve(psi_.SelectRows(others).Block(0, 0, a, a), rhs));
      }
      // Phi_A S = rows (S phi_i)^T over the first a nodes; S symmetric.
      std::vector<std::size_t> first(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(a));
      const Matrix phi_inv = psi_.SelectRows(first).Block(0, 0, a, a).Inverse();
      std::vector<Matrix> s_cols;
      for (std::size_t c = 0; c < a; ++c) {
        Matrix rhs(field_, a, lanes);
        for (std::size_t i = 0; i < a; ++i) rhs.SetRows(i, cols[i].Block(c, 0, 1, lanes));
        s_cols.push_back(phi_inv * rhs);
      }
      return s_cols;
    };
    const auto s1 = recover_columns(p);
    const auto s2 = recover_columns(q);
    Matrix msg(field_, params_.msg_size, lanes);
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = i; j < a; ++j) {
        msg.SetRows(S1(i, j), s1[j].Block(i, 0, 1, lanes));
        msg.SetRows(S2(i, j), s2[j].Block(i, 0, 1, lanes));
      }
    }
    return msg;
  }

  std::vector<std::string> StructuralDefects() const override {
    std::vector<std::string> out;
    const std::size_t a = params_.alpha_sub;
    std::set<Symbol> seen;
    for (std::size_t i = 0; i < params_.n_sub; ++i) {
      if (psi_(i, 0) == 0) {
        out.push_back("Psi row " + Str(i) + " has a zero leading entry");
        continue;
      }
      const Symbol lambda = LambdaOf(i);
      for (std::size_t j = 0; j < a; ++j) {
        if (psi_(i, a + j) != field_->Mul(lambda, psi_(i, j))) {
          out.push_back("Psi row " + Str(i) + " is not of the form [phi, lambda phi]");
          break;
        }
      }
      if (!seen.insert(lambda).second) out.push_back("lambda of row " + Str(i) + " repeats");
    }
    CheckSubsetsInvertible(psi_, params_.d_sub, params_.d_sub, "Psi", out);
    CheckSubsetsInvertible(psi_, a, a, "Phi", out);
    return out;
  }

 private:
  std::vector<std::size_t> index_;  // symmetric alpha x alpha index map
};

// ---------------------------------------------------------------------------
// Scalar MDS sub-code: repair downloads one symbol from k helpers and
// re-encodes.

class MdsCode final : public RegeneratingCode {
 public:
  MdsCode(FieldPtr field, RegenParams p, Matrix psi)
      : RegeneratingCode(std::move(field), p, std::move(psi)) {}

  std::vector<Matrix> Encode(const Matrix& message) const override {
    if (message.rows() != params_.msg_size) throw ParameterError("MDS message has wrong length");
    const Matrix cw = psi_ * message;
    std::vector<Matrix> nodes;
    for (std::size_t i = 0; i < params_.n_sub; ++i) nodes.push_back(cw.Block(i, 0, 1, cw.cols()));
    return nodes;
  }

  Matrix HelperMessage(std::size_t helper, const Matrix& content,
                       std::size_t failed) const override {
    CheckNode(helper);
    CheckNode(failed);
    return content;
  }

  Matrix Repair(std::size_t failed, std::span<const std::size_t> helpers,
                std::span<const Matrix> messages) const override {
    CheckHelpers(failed, helpers, params_.d_sub);
    const Matrix msg = Collect(helpers, messages);
    return psi_.Block(failed, 0, 1, psi_.cols()) * msg;
  }

  Matrix Collect(std::span<const std::size_t> nodes,
                 std::span<const Matrix> contents) const override {
    CheckCollect(nodes, contents);
    Matrix rhs(field_, nodes.size(), contents.front().cols());
    for (std::size_t i = 0; i < nodes.size(); ++i) rhs.SetRows(i, contents[i]);
    return Solve(psi_.SelectRows(nodes), rhs);
  }

  std::vector<std::string> StructuralDefects() const override {
    std::vector<std::string> out;
    CheckSubsetsInvertible(psi_, params_.k_sub, params_.k_sub, "generator", out);
    return out;
  }
};

}  // namespace

std::string ToString(CodeKind kind) {
  switch (kind) {
    case CodeKind::kMsr: return "msr";
    case CodeKind::kMbr: return "mbr";
    case CodeKind::kMds: return "mds";
  }
  return "?";
}

CodeKind CodeKindFromString(const std::string& s) {
  if (s == "msr" || s == "MSR") return CodeKind::kMsr;
  if (s == "mbr" || s == "MBR") return CodeKind::kMbr;
  if (s == "mds" || s == "MDS") return CodeKind::kMds;
  throw ParameterError("unknown sub-code kind '" + s + "'");
}

RegenParams RegenParams::Mbr(std::size_t n, std::size_t k, std::size_t d) {
  RegenParams p;
  p.kind = CodeKind::kMbr;
  p.n_sub = n;
  p.k_sub = k;
  p.d_sub = d;
  p.alpha_sub = d;
  p.beta_sub = 1;
  p.msg_size = k * d - k * (k > 0 ? k - 1 : 0) / 2;
  p.Validate();
  return p;
}

RegenParams RegenParams::Msr(std::size_t n, std::size_t k) {
  if (k < 2) throw ParameterError("MSR sub-code needs k >= 2");
  RegenParams p;
  p.kind = CodeKind::kMsr;
  p.n_sub = n;
  p.k_sub = k;
  p.d_sub = 2 * k - 2;
  p.alpha_sub = k - 1;
  p.beta_sub = 1;
  p.msg_size = k * (k - 1);
  p.Validate();
  return p;
}

RegenParams RegenParams::Mds(std::size_t n, std::size_t k) {
  RegenParams p;
  p.kind = CodeKind::kMds;
  p.n_sub = n;
  p.k_sub = k;
  p.d_sub = k;
  p.alpha_sub = 1;
  p.beta_sub = 1;
  p.msg_size = k;
  p.Validate();
  return p;
}

void RegenParams::Validate() const {
  auto bad = [](const std::string& m) { throw ParameterError(m); };
  if (k_sub == 0) bad("sub-code needs k >= 1");
  if (beta_sub != 1) bad("sub-codes are scalar (beta = 1)");
  if (!(n_sub > d_sub)) bad("sub-code needs n > d (n=" + Str(n_sub) + ", d=" + Str(d_sub) + ")");
  if (d_sub < k_sub) bad("sub-code needs d >= k (d=" + Str(d_sub) + ", k=" + Str(k_sub) + ")");
  switch (kind) {
    case CodeKind::kMbr:
      if (alpha_sub != d_sub) bad("MBR sub-code needs alpha = d beta");
      if (msg_size != k_sub * d_sub - k_sub * (k_sub - 1) / 2) bad("MBR message size must be kd - k(k-1)/2");
      break;
    case CodeKind::kMsr:
      if (k_sub < 2) bad("MSR sub-code needs k >= 2");
      if (d_sub != 2 * k_sub - 2) bad("MSR sub-code is implemented for d = 2k - 2 only");
      if (alpha_sub != k_sub - 1) bad("MSR sub-code needs alpha = k - 1");
      if (msg_size != k_sub * (k_sub - 1)) bad("MSR message size must be k(k-1)");
      break;
    case CodeKind::kMds:
      if (alpha_sub != 1 || d_sub != k_sub || msg_size != k_sub) {
        bad("MDS sub-code needs alpha = 1, d = k, M = k");
      }
      break;
  }
}

std::size_t RankProfile(const RegenParams& params, std::size_t j) {
  if (j < 1 || j > params.n_sub) {
    throw ParameterError("rank profile index " + Str(j) + " outside [1, " + Str(params.n_sub) + "]");
  }
  if (j > params.k_sub) return 0;
  switch (params.kind) {
    case CodeKind::kMbr: return params.alpha_sub - (j - 1) * params.beta_sub;
    case CodeKind::kMsr:
    case CodeKind::kMds: return params.alpha_sub;
  }
  return 0;
}

RegeneratingCode::RegeneratingCode(FieldPtr field, RegenParams params, Matrix psi)
    : field_(std::move(field)), params_(params), psi_(std::move(psi)) {}

void RegeneratingCode::CheckNode(std::size_t i) const {
  if (i >= params_.n_sub) throw ParameterError("sub-node " + Str(i) + " out of range");
}

void RegeneratingCode::CheckHelpers(std::size_t failed, std::span<const std::size_t> helpers,
                                    std::size_t count) const {
  CheckNode(failed);
  if (helpers.size() != count) {
    throw ParameterError("repair needs exactly " + Str(count) + " helpers, got " +
                         Str(helpers.size()));
  }
  std::set<std::size_t> seen;
  for (std::size_t h : helpers) {
    CheckNode(h);
    if (h == failed) throw ParameterError("failed node cannot help its own repair");
    if (!seen.insert(h).second) throw ParameterError("duplicate helper " + Str(h));
  }
}

void RegeneratingCode::CheckCollect(std::span<const std::size_t> nodes,
                                    std::span<const Matrix> contents) const {
  if (nodes.size() != params_.k_sub) {
    throw ParameterError("collection needs exactly " + Str(params_.k_sub) + " nodes, got " +
                         Str(nodes.size()));
  }
  if (contents.size() != nodes.size()) throw ParameterError("node/content count mismatch");
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    CheckNode(nodes[i]);
    if (!seen.insert(nodes[i]).second) throw ParameterError("duplicate node " + Str(nodes[i]));
    if (contents[i].rows() != params_.alpha_sub || contents[i].cols() != contents[0].cols()) {
      throw ParameterError("node content has wrong shape");
    }
  }
}

Matrix RegeneratingCode::Generator() const {
  const auto nodes = Encode(Matrix::Identity(field_, params_.msg_size));
  Matrix g(field_, params_.n_sub * params_.alpha_sub, params_.msg_size);
  for (std::size_t i = 0; i < nodes.size(); ++i) g.SetRows(i * params_.alpha_sub, nodes[i]);
  return g;
}

RegeneratingCode::RepairOutcome RegeneratingCode::RepairFromHelpers(
    std::size_t failed, std::span<const std::size_t> helpers,
    std::span<const Matrix> helper_contents) const {
  if (helpers.size() != helper_contents.size()) throw ParameterError("helper/content count mismatch");
  CheckHelpers(failed, helpers, params_.d_sub);
  std::vector<Matrix> messages;
  RepairOutcome out;
  for (std::size_t i = 0; i < helpers.size(); ++i) {
    messages.push_back(HelperMessage(helpers[i], helper_contents[i], failed));
    out.downloaded += messages.back().rows();
  }
  out.content = Repair(failed, helpers, messages);
  return out;
}

Matrix DefaultPsi(const FieldPtr& field, const RegenParams& params) {
  params.Validate();
  if (params.n_sub > field->order()) {
    throw ParameterError("field GF(2^" + Str(field->bits()) + ") too small for n=" +
                         Str(params.n_sub) + " distinct evaluation points");
  }
  if (params.kind == CodeKind::kMds) {
    return ReedSolomon(field, params.n_sub, params.k_sub).generator();
  }
  std::vector<Symbol> points(params.n_sub);
  for (std::size_t i = 0; i < params.n_sub; ++i) points[i] = field->Exp(i);
  Matrix psi = Matrix::Vandermonde(field, points, params.d_sub);
  if (params.kind == CodeKind::kMsr) {
    std::set<Symbol> lambdas;
    for (std::size_t i = 0; i < params.n_sub; ++i) lambdas.insert(psi(i, params.alpha_sub));
    if (lambdas.size() != params.n_sub) {
      throw ParameterError("field too small: MSR lambdas x_i^alpha are not distinct");
    }
  }
  return psi;
}

std::unique_ptr<RegeneratingCode> MakeRegeneratingCode(FieldPtr field, const RegenParams& params,
                                                       std::optional<Matrix> psi) {
  params.Validate();
  Matrix m = psi ? std::move(*psi) : DefaultPsi(field, params);
  const std::size_t want_cols = params.kind == CodeKind::kMds ? params.k_sub : params.d_sub;
  if (m.rows() != params.n_sub || m.cols() != want_cols) {
    throw ParameterError("Psi has shape " + Str(m.rows()) + "x" + Str(m.cols()) + ", expected " +
                         Str(params.n_sub) + "x" + Str(want_cols));
  }
  if (!m.field()->SameField(*field)) throw FieldMismatchError("Psi is over a different field");
  switch (params.kind) {
    case CodeKind::kMbr: return std::make_unique<PmMbrCode>(field, params, std::move(m));
    case CodeKind::kMsr: return std::make_unique<PmMsrCode>(field, params, std::move(m));
    case CodeKind::kMds: return std::make_unique<MdsCode>(field, params, std::move(m));
  }
  throw ParameterError("unknown sub-code kind");
}

void to_json(nlohmann::json& j, const RegenParams& p) {
  j = nlohmann::json{{"kind", ToString(p.kind)}, {"n_sub", p.n_sub},     {"k_sub", p.k_sub},
                     {"d_sub", p.d_sub},         {"alpha_sub", p.alpha_sub}, {"beta_sub", p.beta_sub},
                     {"msg_size", p.msg_size}};
}

void from_json(const nlohmann::json& j, RegenParams& p) {
  p.kind = CodeKindFromString(j.at("kind").get<std::string>());
  j.at("n_sub").get_to(p.n_sub);
  j.at("k_sub").get_to(p.k_sub);
  j.at("d_sub").get_to(p.d_sub);
  j.at("alpha_sub").get_to(p.alpha_sub);
  j.at("beta_sub").get_to(p.beta_sub);
  j.at("msg_size").get_to(p.msg_size);
  p.Validate();
}

}  // namespace bfr
