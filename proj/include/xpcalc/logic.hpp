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
#include "xpcalc/phaseops.hpp"
#include "xpcalc/ringalg.hpp"

namespace xpcalc {

inline std::uint64_t precision(unsigned t) {
  if (t < 1 || t > 31) throw Error("level t must be between 1 and 31");
  return std::uint64_t{1} << t;
}

/// Z-components of a generating set of the diagonal logical identities at precision N.
struct IdentityGenerators {
  std::uint64_t N = 2;
  ZnMatrix K_M;
};

/// K_M = ker_{Z_N}(E_M) with E_M the weight-truncated codeword basis.
inline IdentityGenerators logical_identities(const CssCode& code, unsigned t) {
  const std::uint64_t N = precision(t);
  ZnMatrix E(N, code.n);
  for (const auto& c : codeword_rows(code, t))
    if (c.weight > 0) E.push(to_zvec(c.e));
  if (E.empty()) {
    ZnMatrix I(N, code.n);
    for (std::size_t i = 0; i < code.n; ++i) {
      ZVec r(code.n, 0);
      r[i] = 1;
      I.rows.push_back(r);
    }
    I.howell = true;
    return {N, I};
  }
  return {N, kernel(E)};
}

/// A diagonal XP operator with the given logical action, if one exists.
/// The target is a CP product on k qubits at precision 2^t fixing |0...0>.
inline std::optional<XpOp> search_by_action(const CssCode& code, unsigned t, const DiagProduct& target) {
  const std::uint64_t N = precision(t);
  if (target.n != code.k()) throw Error("target acts on " + std::to_string(target.n) + " qubits, code has k=" +
                                        std::to_string(code.k()));
  if (target.N != N) throw Error("target precision does not match 2^t");
  if (target.phase != 0) throw Error("target must fix |0...0>; divide out the global phase first");
  DiagProduct cp = to_cp(target);
  ZnMatrix E(N, code.n + 1);
  for (const auto& c : codeword_rows(code, t)) {
    const std::uint64_t q = cp.eval(c.v);
    if (q % 2) return std::nullopt;
    ZVec row(code.n + 1);
    row[0] = mod(-static_cast<std::int64_t>(q / 2), N);
    for (std::size_t i = 0; i < code.n; ++i) row[i + 1] = c.e[i];
    E.push(row);
  }
  ZnMatrix K = kernel(E);
  if (K.empty() || K.rows[0][0] != 1) return std::nullopt;
  return diag_xp(N, ZVec(K.rows[0].begin() + 1, K.rows[0].end()));
}

/// Identity generators used by the logical-operator test at level t, expressed at precision 2^t:
/// the level t-1 generators with each row doubled. At t = 2 these are the doubled Z-checks.
inline IdentityGenerators lower_identities(const CssCode& code, unsigned t) {
  const std::uint64_t N = precision(t);
  if (t == 1) return {N, ZnMatrix(N, code.n)};
  ZnMatrix lower = t == 2 ? ZnMatrix::from_bits(2, code.n, code.SZ) : logical_identities(code, t - 1).K_M;
  return {N, howell(rescale(lower, N, 2))};
}

struct CheckStep {
  std::size_t check = 0;  // index of the X-check
  std::uint64_t xz = 0;   // x.z mod N
  ZVec minus_2xz;         // Z-component of the commutator
  bool in_span = false;
};

struct LogicalTest {
  bool logical = true;
  std::vector<CheckStep> steps;
};

/// Logical-operator test, keeping every intermediate value.
inline LogicalTest test_logical(const CssCode& code, const IdentityGenerators& ids, const ZVec& z) {
  const std::uint64_t N = ids.N;
  if (z.size() != code.n) throw Error("z has " + std::to_string(z.size()) + " entries, code has n=" +
                                      std::to_string(code.n));
  LogicalTest res;
  for (std::size_t c = 0; c < code.r(); ++c) {
    const auto comm = xp_diag_commutator(code.SX[c], z, N);
    CheckStep s;
    s.check = c;
    s.xz = (comm.p / 2) % N;
    s.minus_2xz = comm.z;
    s.in_span = ids.K_M.empty() ? is_zero(comm.z) : in_span(ids.K_M, comm.z);
    if (s.xz != 0 || !s.in_span) res.logical = false;
    res.steps.push_back(std::move(s));
  }
  return res;
}

inline bool is_logical(const CssCode& code, const IdentityGenerators& ids, const ZVec& z) {
  return test_logical(code, ids, z).logical;
}

inline bool is_logical(const CssCode& code, unsigned t, const ZVec& z) {
  return is_logical(code, lower_identities(code, t), z);
}

/// Howell basis of {z : x.z = 0 mod N and 2xz in span(K_M)}.
inline ZnMatrix commutant(const ZnMatrix& K_M, const BitVec& x, std::uint64_t N) {
  const std::size_t n = x.size();
  if (K_M.ncols != n && !(K_M.empty() && K_M.ncols == 0)) throw Error("commutant: dimension mismatch");
  const auto supp = support(x);
  const std::size_t m = supp.size();
  if (m == 0) throw Error("commutant: x must be nonzero");
  std::vector<std::size_t> perm = supp;  // perm[new] = old
  for (std::size_t i = 0; i < n; ++i)
    if (!x[i]) perm.push_back(i);
  auto to_new = [&](const ZVec& z) {
    ZVec o(n);
    for (std::size_t j = 0; j < n; ++j) o[j] = z[perm[j]];
    return o;
  };
  auto to_old = [&](const ZVec& z) {
    ZVec o(n);
    for (std::size_t j = 0; j < n; ++j) o[perm[j]] = z[j];
    return o;
  };

  ZnMatrix K(N, n);
  for (const auto& r : K_M.rows) K.push(to_new(r));
  ZnMatrix C0(N, n);
  for (std::size_t i = 0; i < m; ++i) {
    ZVec r(n, 0);
    r[i] = 2 % N;
    C0.push(r);
  }
  ZnMatrix C1 = K.empty() ? ZnMatrix(N, n) : span_intersection(C0, K);

  ZnMatrix C2(N, n);
  for (const auto& r : C1.rows) {
    ZVec h(n, 0);
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < m; ++j) {
      h[j] = r[j] / 2;
      s += h[j];
    }
    h[m - 1] = mod(static_cast<std::int64_t>(h[m - 1]) - static_cast<std::int64_t>(s % N), N);
    C2.push(h);
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    ZVec r(n, 0);
    r[i] = N / 2;
    r[m - 1] = (r[m - 1] + N / 2) % N;
    C2.push(r);
  }
  for (std::size_t i = m; i < n; ++i) {
    ZVec r(n, 0);
    r[i] = 1;
    C2.push(r);
  }
  ZnMatrix out(N, n);
  for (const auto& r : C2.rows) out.push(to_old(r));
  return howell(out);
}

namespace detail {

// Supports v with 1 <= wt(v) <= t, by weight then lexicographically.
inline std::vector<BitVec> action_supports(std::size_t k, unsigned t) {
  std::vector<BitVec> out;
  for (std::size_t w = 1; w <= std::min<std::size_t>(t, k); ++w)
    for_each_combination(k, w, [&](const std::vector<std::size_t>& idx) { out.push_back(indicator(k, idx)); });
  return out;
}

// CP coefficients q_v (mod 2N) over action_supports(k, t), by Moebius subtraction in weight order.
inline std::vector<std::uint64_t> action_coefficients(const CssCode& code, const std::vector<BitVec>& V,
                                                      const ZVec& z, std::uint64_t N) {
  const auto M = static_cast<std::int64_t>(2 * N);
  std::vector<std::uint64_t> q;
  q.reserve(V.size());
  for (std::size_t a = 0; a < V.size(); ++a) {
    std::int64_t qv = 0;
    BitVec e(code.n, 0);
    for (auto i : support(V[a])) e = xor_bits(e, code.LX[i]);
    for (std::size_t j = 0; j < code.n; ++j)
      if (e[j]) qv += 2 * static_cast<std::int64_t>(z[j] % N);
    for (std::size_t b = 0; b < a; ++b)
      if (preceq(V[b], V[a])) qv -= static_cast<std::int64_t>(q[b]);
    q.push_back(mod(qv, static_cast<std::uint64_t>(M)));
  }
  return q;
}

}  // namespace detail

/// CP product on k qubits with the same phase on |v> as XP_N(0|0|z) has on |v>_L.
inline DiagProduct logical_action(const CssCode& code, const ZVec& z, std::uint64_t N) {
  if (z.size() != code.n) throw Error("z length does not match code length");
  const unsigned t = log2_exact(N);
  const auto V = detail::action_supports(code.k(), t);
  const auto q = detail::action_coefficients(code, V, z, N);
  DiagProduct out(N, code.k(), TermKind::CP);
  for (std::size_t a = 0; a < V.size(); ++a) out.add(V[a], static_cast<std::int64_t>(q[a]));
  for (const auto& c : codeword_rows(code, t)) {
    std::uint64_t ph = 0;
    for (std::size_t j = 0; j < code.n; ++j)
      if (c.e[j]) ph += 2 * (z[j] % N);
    if (ph % (2 * N) != out.eval(c.v)) throw Error("z is not a logical operator of this code");
  }
  return out;
}

struct LogicalGenerator {
  ZVec z;
  unsigned level = 0;
  DiagProduct action;
  bool identity = false;  // trivial action, i.e. a member of the logical identity group
};

struct LogicalGenerators {
  std::uint64_t N = 2;
  ZnMatrix K_L;
  std::vector<LogicalGenerator> rows;  // non-trivial actions first, identities last
};

/// Generators of the diagonal logical XP group at level t, with actions.
/// `K_L` is the Howell basis of the group's Z-components. `rows` is the Howell basis of the
/// same span after prefixing each vector with its action coefficients, so that rows with
/// a non-trivial action are reduced against each other and the identities come last.
inline LogicalGenerators logical_generators(const CssCode& code, unsigned t) {
  const std::uint64_t N = precision(t);
  const ZnMatrix K_M = logical_identities(code, t).K_M;
  ZnMatrix K_L(N, code.n);
  for (std::size_t i = 0; i < code.n; ++i) {
    ZVec r(code.n, 0);
    r[i] = 1;
    K_L.rows.push_back(r);
  }
  K_L.howell = true;
  for (const auto& x : code.SX) K_L = span_intersection(K_L, commutant(K_M, x, N));

  const auto V = detail::action_supports(code.k(), t);
  const std::size_t a = V.size();
  ZnMatrix A(N, a + code.n);
  for (const auto& z : K_L.rows) {
    auto q = detail::action_coefficients(code, V, z, N);
    ZVec row(a + code.n);
    for (std::size_t i = 0; i < a; ++i) row[i] = q[i] / 2;
    std::copy(z.begin(), z.end(), row.begin() + static_cast<std::ptrdiff_t>(a));
    A.push(row);
  }
  LogicalGenerators g{N, K_L, {}};
  for (const auto& row : howell(A).rows) {
    LogicalGenerator gen;
    gen.z.assign(row.begin() + static_cast<std::ptrdiff_t>(a), row.end());
    gen.level = clifford_level(gen.z, N);
    gen.action = DiagProduct(N, code.k(), TermKind::CP);
    for (std::size_t i = 0; i < a; ++i) gen.action.add(V[i], static_cast<std::int64_t>(2 * row[i]));
    gen.identity = gen.action.terms.empty();
    g.rows.push_back(std::move(gen));
  }
  return g;
}

}  // namespace xpcalc
