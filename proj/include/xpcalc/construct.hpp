// Copyright 2026 The xpcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xpcalc/codes.hpp"
#include "xpcalc/embed.hpp"
#include "xpcalc/logic.hpp"
#include "xpcalc/phaseops.hpp"
#include "xpcalc/ringalg.hpp"

namespace xpcalc {

struct CanonicalImplementation {
  DiagProduct target;    // CP product on k qubits
  DiagProduct rp_terms;  // RP product on n qubits, supports of size <= t
  DiagProduct cp_terms;  // the same operator as CP gates
  std::size_t max_support = 0;
};

namespace detail {

// Re-expand an RP product into RP terms of support <= t via CP gates.
inline DiagProduct bounded_rp(const DiagProduct& rp) { return to_rp(to_cp(rp)); }

inline CanonicalImplementation finish_canonical(DiagProduct target, const DiagProduct& lifted) {
  CanonicalImplementation c;
  c.target = std::move(target);
  c.cp_terms = to_cp(lifted);
  c.rp_terms = to_rp(c.cp_terms);
  c.max_support = std::max(c.rp_terms.max_support(), c.cp_terms.max_support());
  return c;
}

}  // namespace detail

/// Logical P_i at level t: RP_N(2, z_i) with z_i the i-th logical Z.
inline CanonicalImplementation canonical_phase_op(const CssCode& code, std::size_t i, unsigned t) {
  const std::uint64_t N = precision(t);
  if (i >= code.k()) throw Error("logical index " + std::to_string(i) + " out of range (k=" +
                                 std::to_string(code.k()) + ")");
  DiagProduct target(N, code.k(), TermKind::CP);
  BitVec e(code.k(), 0);
  e[i] = 1;
  target.add(e, 2);
  DiagProduct lifted(N, code.n, TermKind::RP);
  lifted.add(code.LZ[i], 2);
  return detail::finish_canonical(target, lifted);
}

/// Implementation of a CP product on the logical qubits by gates of support <= t.
inline CanonicalImplementation canonical_cp_op(const CssCode& code, const DiagProduct& target, unsigned t) {
  const std::uint64_t N = precision(t);
  if (target.n != code.k()) throw Error("target acts on " + std::to_string(target.n) + " qubits, code has k=" +
                                        std::to_string(code.k()));
  if (target.N != N) throw Error("target precision does not match 2^t");
  const DiagProduct rp = to_rp(target);
  DiagProduct lifted(N, code.n, TermKind::RP);
  for (const auto& [u, q] : rp.terms) {
    BitVec w(code.n, 0);
    for (auto i : support(u)) w = xor_bits(w, code.LZ[i]);
    lifted.add(w, static_cast<std::int64_t>(q));
  }
  auto c = detail::finish_canonical(target, lifted);
  c.cp_terms.add_phase(static_cast<std::int64_t>(target.phase));
  return c;
}

// ---------------------------------------------------------------------------
// Toric codes

/// k-dimensional toric code of side d: qubits are the edges of the periodic grid Z_d^k,
/// X-checks are vertex stars, logical X_i is the set of direction-i edges leaving the
/// hyperplane x_i = d-1 and logical Z_i is the direction-i line through the origin.
/// Edge (x, i) has index i d^k + sum_j x_j d^j.
inline CssCode toric_code(std::size_t k, std::size_t d) {
  if (k < 1) throw Error("toric_code: k must be at least 1");
  if (d < 2) throw Error("toric_code: d must be at least 2");
  std::size_t cells = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (cells > (std::size_t{1} << 20) / d) throw Error("toric_code: too many qubits");
    cells *= d;
  }
  const std::size_t n = k * cells;
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = 1; i < k; ++i) stride[i] = stride[i - 1] * d;
  auto coord = [&](std::size_t x, std::size_t i) { return (x / stride[i]) % d; };
  auto shift = [&](std::size_t x, std::size_t i, std::size_t by) {
    const std::size_t c = coord(x, i);
    return x - c * stride[i] + ((c + by) % d) * stride[i];
  };
  auto edge = [&](std::size_t x, std::size_t i) { return i * cells + x; };

  BitMatrix SX;
  for (std::size_t x = 0; x < cells; ++x) {
    BitVec s(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
      s[edge(x, i)] ^= 1;
      s[edge(shift(x, i, d - 1), i)] ^= 1;
    }
    SX.push_back(std::move(s));
  }
  BitMatrix LX(k, BitVec(n, 0)), LZ(k, BitVec(n, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t x = 0; x < cells; ++x)
      if (coord(x, i) == d - 1) LX[i][edge(x, i)] = 1;
    for (std::size_t a = 0; a < d; ++a) LZ[i][edge(a * stride[i], i)] = 1;
  }
  CssCode c = build_code(SX, LX, n, DependentRows::Drop);
  return with_logical_z(std::move(c), LZ);
}

// ---------------------------------------------------------------------------
// Transversal code construction

struct ConstructedCode {
  CssCode code;
  std::uint64_t N = 2;
  unsigned t = 1;
  DiagProduct target;          // without global phase
  std::uint64_t phase = 0;     // global phase divided out of the requested target
  BitMatrix supports;          // per embedded qubit, its support on the toric-code qubits
  ZVec exponents;              // per embedded qubit j, apply P^{exponents[j]}
  bool exact_residue = false;  // true when the fallback (identity-only reduction) was used
};

namespace detail {

inline ZVec halve_over(const DiagProduct& rp, const BitMatrix& V, std::uint64_t N) {
  ZVec q(V.size(), 0);
  for (std::size_t j = 0; j < V.size(); ++j) {
    auto it = rp.terms.find(V[j]);
    if (it == rp.terms.end()) continue;
    if (it->second % 2) throw Error("target needs an odd phase-rotation coefficient; raise the level");
    q[j] = (it->second / 2) % N;
  }
  for (const auto& kv : rp.terms)
    if (std::find(V.begin(), V.end(), kv.first) == V.end()) throw Error("canonical term outside the embedding");
  return q;
}

inline BitMatrix restrict_columns(const BitMatrix& M, const std::vector<std::size_t>& cols) {
  BitMatrix out;
  for (const auto& r : M) {
    BitVec s(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) s[j] = r[cols[j]];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Build a code with a transversal implementation (single-qubit phase gates) of `target`
/// from the k-dimensional toric code of side d.
inline ConstructedCode construct_code(const DiagProduct& target_in, std::size_t d) {
  const std::size_t k = target_in.n;
  if (k < 1) throw Error("construct: target must act on at least one qubit");
  const std::uint64_t N = target_in.N;
  const unsigned t = log2_exact(N);
  ConstructedCode out;
  out.N = N;
  out.t = t;
  out.phase = target_in.phase;
  out.target = target_in;
  out.target.phase = 0;

  const CssCode T = toric_code(k, d);
  std::vector<std::size_t> S;
  for (std::size_t q = 0; q < T.n; ++q)
    for (const auto& z : T.LZ)
      if (z[q]) {
        S.push_back(q);
        break;
      }
  BitMatrix SXr;
  for (auto& r : detail::restrict_columns(T.SX, S))
    if (!is_zero(r)) SXr.push_back(r);
  CssCode R = build_code(SXr, detail::restrict_columns(T.LX, S), S.size(), DependentRows::Drop);
  R = with_logical_z(std::move(R), detail::restrict_columns(T.LZ, S));

  const CanonicalImplementation canon = canonical_cp_op(R, out.target, t);
  const Embedding V = weight_vectors(R.n, t);
  const ZVec q = detail::halve_over(canon.rp_terms, V.V, N);
  const CssCode ER = embed_code(R, V);
  const ZnMatrix K_M = logical_identities(ER, t).K_M;

  // Lower-level logical operators RP_N(4, u L_Z) may be traded away when choosing the support.
  ZnMatrix K = K_M;
  for (std::uint64_t ub = 1; ub < (std::uint64_t{1} << k); ++ub) {
    BitVec w(R.n, 0);
    for (std::size_t i = 0; i < k; ++i)
      if ((ub >> i) & 1u) w = xor_bits(w, R.LZ[i]);
    DiagProduct lifted(N, R.n, TermKind::RP);
    lifted.add(w, 4);
    K.push(detail::halve_over(detail::bounded_rp(lifted), V.V, N));
  }

  auto build = [&](const ZVec& z) {
    BitMatrix keep;
    ZVec ex;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (z[j]) {
        keep.push_back(V.V[j]);
        ex.push_back(z[j]);
      }
    return std::make_pair(make_embedding(R.n, keep), ex);
  };

  auto [E, ex] = build(residue(howell(K), q));
  CssCode C = embed_code(R, E, DependentRows::Drop);
  auto op = search_by_action(C, t, out.target);
  if (op) {
    out.exponents = op->z;
  } else {
    std::tie(E, ex) = build(residue(K_M, q));
    C = embed_code(R, E, DependentRows::Drop);
    out.exponents = ex;
    out.exact_residue = true;
  }
  out.code = std::move(C);
  for (const auto& v : E.V) {
    BitVec s(T.n, 0);
    for (auto j : support(v)) s[S[j]] = 1;
    out.supports.push_back(std::move(s));
  }
  return out;
}

}  // namespace xpcalc
