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
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xpcalc/codes.hpp"
#include "xpcalc/logic.hpp"
#include "xpcalc/phaseops.hpp"
#include "xpcalc/ringalg.hpp"

namespace xpcalc {

/// Rows of V are supports of phase-rotation gates; embedded qubit j stands for row j.
struct Embedding {
  std::size_t n = 0;
  BitMatrix V;

  std::size_t size() const { return V.size(); }

  bool downward_closed() const {
    for (const auto& v : V) {
      bool ok = true;
      detail::for_each_subset(v, weight(v), [&](const BitVec& u, std::size_t) {
        if (ok && std::find(V.begin(), V.end(), u) == V.end()) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  }
};

inline Embedding make_embedding(std::size_t n, BitMatrix V) {
  for (std::size_t i = 0; i < V.size(); ++i) {
    if (V[i].size() != n) throw Error("embedding row has wrong length");
    if (is_zero(V[i])) throw Error("embedding rows must be nonzero");
    for (std::size_t j = 0; j < i; ++j)
      if (V[j] == V[i]) throw Error("embedding rows must be distinct");
  }
  return {n, std::move(V)};
}

/// All length-n vectors of weight 1..t, by weight then lexicographically (by support).
inline Embedding weight_vectors(std::size_t n, unsigned t) {
  if (t < 1) throw Error("weight_vectors: t must be at least 1");
  Embedding e{n, {}};
  for (std::size_t w = 1; w <= std::min<std::size_t>(t, n); ++w)
    for_each_combination(n, w, [&](const std::vector<std::size_t>& idx) { e.V.push_back(indicator(n, idx)); });
  return e;
}

/// Parse "(0,3)(1,2)(4)" into cycle indicator vectors. Every qubit must appear exactly once.
inline Embedding parse_cycles(const std::string& text, std::size_t n) {
  Embedding e{n, {}};
  std::vector<int> seen(n, 0);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> void { throw Error("bad cycle string \"" + text + "\": " + why); };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<std::size_t> idx;
    std::string cur;
    auto flush = [&] {
      if (cur.empty()) return;
      const auto q = std::stoul(cur);
      if (q >= n) fail("qubit " + cur + " out of range");
      if (seen[q]++) fail("qubit " + cur + " appears twice");
      idx.push_back(q);
      cur.clear();
    };
    while (i < text.size() && text[i] != ')') {
      const char c = text[i++];
      if (std::isdigit(static_cast<unsigned char>(c)))
        cur += c;
      else if (c == ',' || c == ' ')
        flush();
      else
        fail(std::string("unexpected character '") + c + "'");
    }
    if (i >= text.size()) fail("unterminated cycle");
    ++i;
    flush();
    if (idx.empty()) fail("empty cycle");
    e.V.push_back(indicator(n, idx));
    skip_ws();
  }
  for (std::size_t q = 0; q < n; ++q)
    if (!seen[q]) fail("qubit " + std::to_string(q) + " is not covered; list fixed points as (" + std::to_string(q) + ")");
  return e;
}

/// v V^T mod 2
inline BitVec embed_bits(const Embedding& E, const BitVec& x) {
  if (x.size() != E.n) throw Error("embed: vector length does not match embedding");
  BitVec out(E.size());
  for (std::size_t j = 0; j < E.size(); ++j) out[j] = dot2(x, E.V[j]);
  return out;
}

/// The embedded code with X-checks S_X V^T and X-logicals L_X V^T.
inline CssCode embed_code(const CssCode& code, const Embedding& E, DependentRows policy = DependentRows::Reject) {
  if (E.n != code.n) throw Error("embedding length does not match code length");
  BitMatrix SX, LX;
  for (const auto& r : code.SX) SX.push_back(embed_bits(E, r));
  for (const auto& r : code.LX) LX.push_back(embed_bits(E, r));
  try {
    return build_code(SX, LX, E.size(), policy);
  } catch (const Error& e) {
    throw Error(std::string("embedded code is degenerate (is V full rank?): ") + e.what());
  }
}

/// Image of w^p X^x prod_v RP_N(2 z[v], v) under the embedding: XP_N(p | x V^T | z).
inline XpOp embed_op(const Embedding& E, std::uint64_t N, std::int64_t p, const BitVec& x, const ZVec& z) {
  if (z.size() != E.size()) throw Error("embed_op: z must have one entry per row of V");
  return make_xp(N, p, embed_bits(E, x), z);
}

/// The RP product prod_v RP_N(2 z[v], v) on the original qubits, optionally as CP gates.
inline DiagProduct interpret_embedded(const Embedding& E, const ZVec& z, std::uint64_t N, bool as_cp = false) {
  if (z.size() != E.size()) throw Error("interpret_embedded: z must have one entry per row of V");
  DiagProduct rp(N, E.n, TermKind::RP);
  for (std::size_t j = 0; j < E.size(); ++j) rp.add(E.V[j], 2 * static_cast<std::int64_t>(z[j] % N));
  if (!as_cp) return rp;
  if (!E.downward_closed()) throw Error("CP form needs a downward-closed embedding");
  return to_cp(rp);
}

// ---------------------------------------------------------------------------
// Depth-one search

enum class SearchStatus { Found, NotFound, BudgetExhausted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::NotFound:
      return "not found";
    case SearchStatus::BudgetExhausted:
      return "budget exhausted";
  }
  return "?";
}

/// Clifford level of CP_N(q, v): wt(v) + log2(2N / gcd(q, 2N)) - 1.
inline unsigned cp_level(std::uint64_t q, std::size_t w, std::uint64_t N) {
  const std::uint64_t M = 2 * N;
  q %= M;
  if (q == 0) return 0;
  return static_cast<unsigned>(w + log2_exact(M / gcd_u(q, M)) - 1);
}

inline unsigned action_level(const DiagProduct& d) {
  const DiagProduct cp = to_cp(d);
  unsigned l = 0;
  for (const auto& [v, q] : cp.terms) l = std::max(l, cp_level(q, weight(v), cp.N));
  return l;
}

struct DepthOneOptions {
  std::uint64_t budget = 1'000'000;
  bool same_action = false;   // search start + span(K_M) instead of start + span(K_L)
  std::optional<ZVec> start;  // starting Z-component on the embedded code
};

struct DepthOneResult {
  SearchStatus status = SearchStatus::NotFound;
  Embedding embedding;
  std::uint64_t N = 2;
  ZVec z;             // over the rows of V
  DiagProduct gates;  // RP gates on the original qubits
  DiagProduct action;
  std::uint64_t states = 0;
};

namespace detail {

// One run of the partition search for a fixed starting vector.
inline std::optional<ZVec> partition_dfs(const Embedding& E, const ZnMatrix& K, const ZVec& z, std::uint64_t budget,
                                         std::uint64_t& states, bool& exhausted) {
  const std::size_t m = E.size();
  std::vector<std::vector<std::size_t>> overlaps(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && !is_zero([&] {
            BitVec s(E.n);
            for (std::size_t i = 0; i < E.n; ++i) s[i] = E.V[a][i] & E.V[b][i];
            return s;
          }()))
        overlaps[a].push_back(b);

  std::vector<std::vector<std::uint8_t>> todo{std::vector<std::uint8_t>(m, 1)};
  while (!todo.empty()) {
    auto a = std::move(todo.back());
    todo.pop_back();
    if (states >= budget) {
      exhausted = true;
      return std::nullopt;
    }
    ++states;
    std::vector<std::size_t> order;  // order[new] = old
    for (std::uint8_t cls : {0, 1, 2})
      for (std::size_t j = 0; j < m; ++j)
        if (a[j] == cls) order.push_back(j);
    ZnMatrix P(K.N, m);
    for (const auto& r : K.rows) {
      ZVec pr(m);
      for (std::size_t j = 0; j < m; ++j) pr[j] = r[order[j]];
      P.rows.push_back(std::move(pr));
    }
    ZVec pz(m);
    for (std::size_t j = 0; j < m; ++j) pz[j] = z[order[j]];
    const ZVec res = P.empty() ? pz : residue(howell(P), pz);
    bool valid = true;
    std::optional<std::size_t> branch;
    for (std::size_t j = 0; j < m && valid; ++j) {
      const std::uint8_t cls = a[order[j]];
      if (cls == 0 && res[j] != 0) valid = false;
      if (cls == 1 && res[j] != 0 && !branch) branch = order[j];
    }
    if (!valid) continue;
    if (!branch) {
      ZVec out(m);
      for (std::size_t j = 0; j < m; ++j) out[order[j]] = res[j];
      return out;
    }
    auto a1 = a;
    a1[*branch] = 2;
    for (auto u : overlaps[*branch]) a1[u] = 0;
    auto a2 = a;
    a2[*branch] = 0;
    todo.push_back(std::move(a1));
    todo.push_back(std::move(a2));
  }
  return std::nullopt;
}

}  // namespace detail

/// A depth-one product of phase-rotation gates (supports from `E`) acting as a
/// non-trivial logical operator of level exactly t.
inline DepthOneResult depth_one_search(const CssCode& code, unsigned t, const std::optional<Embedding>& emb = {},
                                       const DepthOneOptions& opt = {}) {
  const std::uint64_t N = precision(t);
  DepthOneResult res;
  res.N = N;
  res.embedding = emb ? *emb : weight_vectors(code.n, t);
  const Embedding& E = res.embedding;
  const CssCode ec = embed_code(code, E, DependentRows::Drop);
  const LogicalGenerators gens = logical_generators(ec, t);

  std::vector<std::size_t> candidates;
  if (!opt.start) {
    for (std::size_t i = 0; i < gens.rows.size(); ++i)
      if (!gens.rows[i].identity && action_level(gens.rows[i].action) == t) candidates.push_back(i);
  } else {
    candidates.push_back(gens.rows.size());
  }
  const ZnMatrix K_M = opt.same_action ? logical_identities(ec, t).K_M : ZnMatrix(N, ec.n);

  bool exhausted = false;
  for (auto c : candidates) {
    const ZVec z = opt.start ? *opt.start : gens.rows[c].z;
    if (z.size() != E.size()) throw Error("start vector must have one entry per row of V");
    ZnMatrix K(N, E.size());
    if (opt.same_action) {
      K = K_M;
    } else {
      for (std::size_t i = 0; i < gens.rows.size(); ++i)
        if (i != c) K.rows.push_back(gens.rows[i].z);
    }
    auto found = detail::partition_dfs(E, K, z, opt.budget, res.states, exhausted);
    if (found) {
      DiagProduct action = logical_action(ec, *found, N);
      if (action_level(action) != t) continue;
      res.status = SearchStatus::Found;
      res.z = *found;
      res.gates = interpret_embedded(E, *found, N);
      res.action = action;
      return res;
    }
    if (exhausted) break;
  }
  res.status = exhausted ? SearchStatus::BudgetExhausted : SearchStatus::NotFound;
  return res;
}

}  // namespace xpcalc
