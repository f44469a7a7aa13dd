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

// XP operators, controlled-phase and phase-rotation gates, duality between
// the two gate families, and conjugation by Pauli X strings.
//
// Phases are integer exponents of w = exp(i pi / N) taken mod 2N.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xpcalc/types.hpp"

namespace xpcalc {

/// XP_N(p|x|z) = w^p X^x P^z with P = diag(1, w^2).
struct XpOp {
  std::uint64_t N = 2;
  std::uint64_t p = 0;
  BitVec x;
  ZVec z;

  std::size_t n() const { return x.size(); }
  bool diagonal() const { return is_zero(x); }
  bool operator==(const XpOp&) const = default;
};

inline XpOp make_xp(std::uint64_t N, std::int64_t p, BitVec x, const ZVec& z) {
  if (!is_power_of_two(N)) throw Error("precision must be a power of two");
  if (x.size() != z.size()) throw Error("XP operator: x and z lengths differ");
  XpOp op{N, mod(p, 2 * N), std::move(x), ZVec(z.size())};
  for (std::size_t i = 0; i < z.size(); ++i) op.z[i] = z[i] % N;
  return op;
}

inline XpOp diag_xp(std::uint64_t N, const ZVec& z) { return make_xp(N, 0, BitVec(z.size(), 0), z); }

inline std::string format_xp(const XpOp& op) {
  std::string xs;
  for (auto b : op.x) xs += b ? '1' : '0';
  return "XP_" + std::to_string(op.N) + "(" + std::to_string(op.p) + "|" + xs + "|" + format_digits(op.z) + ")";
}

/// Action on a computational basis state: returns (phase exponent, e xor x).
inline std::pair<std::uint64_t, BitVec> xp_apply(const XpOp& op, const BitVec& e) {
  if (e.size() != op.n()) throw Error("xp_apply: length mismatch");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) s += op.z[i];
  return {(op.p + 2 * s) % (2 * op.N), xor_bits(e, op.x)};
}

/// Product a*b in vector form.
inline XpOp xp_mul(const XpOp& a, const XpOp& b) {
  if (a.N != b.N || a.n() != b.n()) throw Error("xp_mul: operators differ in precision or length");
  const std::uint64_t N = a.N;
  std::int64_t p = static_cast<std::int64_t>(a.p + b.p);
  ZVec z(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    std::int64_t zi = static_cast<std::int64_t>(a.z[i]);
    if (b.x[i]) {
      p += 2 * zi;
      zi = -zi;
    }
    z[i] = mod(zi + static_cast<std::int64_t>(b.z[i]), N);
  }
  return XpOp{N, mod(p, 2 * N), xor_bits(a.x, b.x), z};
}

inline XpOp xp_inverse(const XpOp& a) {
  const std::uint64_t N = a.N;
  std::int64_t p = -static_cast<std::int64_t>(a.p);
  ZVec z(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    std::int64_t zi = static_cast<std::int64_t>(a.z[i]);
    if (a.x[i]) {
      p -= 2 * zi;
      z[i] = mod(zi, N);
    } else {
      z[i] = mod(-zi, N);
    }
  }
  return XpOp{N, mod(p, 2 * N), a.x, z};
}

/// Group commutator of XP_N(0|x|0) with XP_N(0|0|z): XP_N(2 x.z | 0 | -2xz).
inline XpOp xp_diag_commutator(const BitVec& x, const ZVec& z, std::uint64_t N) {
  if (x.size() != z.size()) throw Error("xp_diag_commutator: length mismatch");
  std::uint64_t s = 0;
  ZVec out(z.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i)
    if (x[i]) {
      s += z[i];
      out[i] = mod(-2 * static_cast<std::int64_t>(z[i] % N), N);
    }
  return XpOp{N, (2 * s) % (2 * N), BitVec(z.size(), 0), out};
}

inline std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) {
  while (b) {
    auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Clifford hierarchy level t - log2 gcd(N, z) of a diagonal operator.
inline unsigned clifford_level(const XpOp& op) {
  if (!op.diagonal()) throw Error("clifford_level: operator is not diagonal");
  std::uint64_t g = op.N;
  for (auto zi : op.z) g = gcd_u(g, zi % op.N);
  return log2_exact(op.N) - log2_exact(g);
}

inline unsigned clifford_level(const ZVec& z, std::uint64_t N) { return clifford_level(diag_xp(N, z)); }

// ---------------------------------------------------------------------------
// Controlled-phase and phase-rotation gates

struct CpOp {
  std::uint64_t N = 2;
  std::uint64_t q = 0;
  BitVec v;
};

struct RpOp {
  std::uint64_t N = 2;
  std::uint64_t q = 0;
  BitVec v;
};

/// q * prod_{i in v} e[i] mod 2N
inline std::uint64_t cp_phase(const CpOp& op, const BitVec& e) {
  if (e.size() != op.v.size()) throw Error("cp_phase: length mismatch");
  return preceq(op.v, e) ? op.q % (2 * op.N) : 0;
}

/// q * (xor_{i in v} e[i]) mod 2N
inline std::uint64_t rp_phase(const RpOp& op, const BitVec& e) {
  if (e.size() != op.v.size()) throw Error("rp_phase: length mismatch");
  return dot2(op.v, e) ? op.q % (2 * op.N) : 0;
}

enum class TermKind { CP, RP };

/// Product of CP gates or of RP gates (homogeneous), with a global phase.
/// Terms with equal support are merged; zero coefficients are dropped.
struct DiagProduct {
  std::uint64_t N = 2;
  std::size_t n = 0;
  TermKind kind = TermKind::CP;
  std::map<BitVec, std::uint64_t> terms;
  std::uint64_t phase = 0;

  DiagProduct() = default;
  DiagProduct(std::uint64_t N_, std::size_t n_, TermKind k) : N(N_), n(n_), kind(k) {
    if (!is_power_of_two(N_)) throw Error("precision must be a power of two");
  }

  std::uint64_t M() const { return 2 * N; }

  void add(const BitVec& v, std::int64_t q) {
    if (v.size() != n) throw Error("DiagProduct: support length mismatch");
    const std::uint64_t qq = mod(q, M());
    if (qq == 0) return;
    if (is_zero(v)) {
      if (kind == TermKind::CP) phase = (phase + qq) % M();
      return;
    }
    auto it = terms.find(v);
    if (it == terms.end()) {
      terms.emplace(v, qq);
    } else {
      it->second = (it->second + qq) % M();
      if (it->second == 0) terms.erase(it);
    }
  }

  void add_phase(std::int64_t p) { phase = (phase + mod(p, M())) % M(); }

  void multiply(const DiagProduct& o) {
    if (o.N != N || o.n != n || o.kind != kind) throw Error("DiagProduct: incompatible product");
    for (const auto& [v, q] : o.terms) add(v, static_cast<std::int64_t>(q));
    add_phase(static_cast<std::int64_t>(o.phase));
  }

  DiagProduct inverse() const {
    DiagProduct r(N, n, kind);
    for (const auto& [v, q] : terms) r.add(v, -static_cast<std::int64_t>(q));
    r.add_phase(-static_cast<std::int64_t>(phase));
    return r;
  }

  std::uint64_t eval(const BitVec& e) const {
    std::uint64_t s = phase;
    for (const auto& [v, q] : terms) {
      const bool hit = kind == TermKind::CP ? preceq(v, e) : dot2(v, e) != 0;
      if (hit) s += q;
    }
    return s % M();
  }

  std::size_t max_support() const {
    std::size_t m = 0;
    for (const auto& kv : terms) m = std::max(m, weight(kv.first));
    return m;
  }

  bool operator==(const DiagProduct&) const = default;
};

namespace detail {

// Subsets u of supp(v), 0 != u, with wt(u) <= max_w.
template <class F>
inline void for_each_subset(const BitVec& v, std::size_t max_w, F&& f) {
  auto s = support(v);
  for (std::size_t w = 1; w <= std::min(max_w, s.size()); ++w)
    for_each_combination(s.size(), w, [&](const std::vector<std::size_t>& idx) {
      BitVec u(v.size(), 0);
      for (auto i : idx) u[s[i]] = 1;
      f(u, w);
    });
}

// Weight above which (-2)^{w-1} q vanishes mod 2N for every q.
inline std::size_t duality_cutoff(std::uint64_t N) { return log2_exact(2 * N) + 1; }

inline std::int64_t pow_neg2(std::size_t e) {
  std::int64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= -2;
  return r;
}

}  // namespace detail

/// RP_N(q,v) = prod_{0 != u <= v} CP_N(q (-2)^{wt(u)-1}, u).
inline DiagProduct rp_to_cp(const RpOp& op) {
  DiagProduct out(op.N, op.v.size(), TermKind::CP);
  const auto M = static_cast<std::int64_t>(2 * op.N);
  detail::for_each_subset(op.v, detail::duality_cutoff(op.N), [&](const BitVec& u, std::size_t w) {
    const std::int64_t c = (static_cast<std::int64_t>(op.q % (2 * op.N)) * (detail::pow_neg2(w - 1) % M)) % M;
    out.add(u, c);
  });
  return out;
}

/// CP_N(q,v) = prod_{0 != u <= v} RP_N((q / 2^{wt(v)-1}) (-1)^{wt(u)-1}, u); requires 2^{wt(v)-1} | q.
inline DiagProduct cp_to_rp(const CpOp& op) {
  DiagProduct out(op.N, op.v.size(), TermKind::RP);
  const std::size_t w = weight(op.v);
  const std::uint64_t q = op.q % (2 * op.N);
  if (w == 0) throw Error("cp_to_rp: empty support");
  if (w - 1 >= 63 || q % (std::uint64_t{1} << (w - 1)) != 0)
    throw Error("cp_to_rp: coefficient " + std::to_string(q) + " is not a multiple of 2^(wt(v)-1)");
  const auto s = static_cast<std::int64_t>(q >> (w - 1));
  detail::for_each_subset(op.v, w, [&](const BitVec& u, std::size_t wu) {
    out.add(u, (wu % 2 == 1) ? s : -s);
  });
  return out;
}

inline DiagProduct to_cp(const DiagProduct& d) {
  if (d.kind == TermKind::CP) return d;
  DiagProduct out(d.N, d.n, TermKind::CP);
  out.add_phase(static_cast<std::int64_t>(d.phase));
  for (const auto& [v, q] : d.terms) out.multiply(rp_to_cp(RpOp{d.N, q, v}));
  return out;
}

inline DiagProduct to_rp(const DiagProduct& d) {
  if (d.kind == TermKind::RP) return d;
  DiagProduct out(d.N, d.n, TermKind::RP);
  out.add_phase(static_cast<std::int64_t>(d.phase));
  for (const auto& [v, q] : d.terms) out.multiply(cp_to_rp(CpOp{d.N, q, v}));
  return out;
}

/// X^x CP_N(q,v) X^x as a CP product (with global phase), i.e. the diagonal
/// operator whose phase on e equals that of CP_N(q,v) on e xor x.
inline DiagProduct conjugate_cp_by_xstring(const CpOp& op, const BitVec& x) {
  if (x.size() != op.v.size()) throw Error("conjugate_cp_by_xstring: length mismatch");
  DiagProduct out(op.N, op.v.size(), TermKind::CP);
  BitVec xv(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xv[i] = x[i] & op.v[i];
  const std::size_t wxv = weight(xv);
  const auto q = static_cast<std::int64_t>(op.q % (2 * op.N));
  auto s = support(xv);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.size()); ++m) {
    BitVec target = op.v;
    std::size_t wu = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if ((m >> i) & 1u) {
        target[s[i]] = 0;
        ++wu;
      }
    out.add(target, ((wxv + wu) % 2 == 0) ? q : -q);
  }
  return out;
}

/// X^x RP_N(q,v) X^x = w^{q (x.v mod 2)} RP_N(+-q, v); returns (phase, gate).
inline std::pair<std::uint64_t, RpOp> conjugate_rp_by_xstring(const RpOp& op, const BitVec& x) {
  if (x.size() != op.v.size()) throw Error("conjugate_rp_by_xstring: length mismatch");
  const std::uint64_t M = 2 * op.N;
  if (dot2(x, op.v)) return {op.q % M, RpOp{op.N, (M - op.q % M) % M, op.v}};
  return {0, op};
}

/// Conjugate every term of a product by X^x.
inline DiagProduct conjugate_by_xstring(const DiagProduct& d, const BitVec& x) {
  DiagProduct out(d.N, d.n, d.kind);
  out.add_phase(static_cast<std::int64_t>(d.phase));
  for (const auto& [v, q] : d.terms) {
    if (d.kind == TermKind::CP) {
      out.multiply(conjugate_cp_by_xstring(CpOp{d.N, q, v}, x));
    } else {
      auto [p, g] = conjugate_rp_by_xstring(RpOp{d.N, q, v}, x);
      out.add_phase(static_cast<std::int64_t>(p));
      out.add(g.v, static_cast<std::int64_t>(g.q));
    }
  }
  return out;
}

/// Re-express a product at a larger precision (phases scale by newN / N).
inline DiagProduct lift_precision(const DiagProduct& d, std::uint64_t newN) {
  if (newN < d.N || newN % d.N) throw Error("lift_precision: new precision must be a multiple");
  const auto f = static_cast<std::int64_t>(newN / d.N);
  DiagProduct out(newN, d.n, d.kind);
  for (const auto& [v, q] : d.terms) out.add(v, static_cast<std::int64_t>(q) * f);
  out.add_phase(static_cast<std::int64_t>(d.phase) * f);
  return out;
}

}  // namespace xpcalc
