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
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xpcalc/codes.hpp"
#include "xpcalc/oracle.hpp"
#include "xpcalc/phaseops.hpp"
#include "xpcalc/ringalg.hpp"

namespace xpcalc {

/// Pauli stabiliser code; each generator is XP_2(p|x|z) = i^p X^x Z^z.
struct PauliStabCode {
  std::size_t n = 0;
  std::vector<XpOp> generators;
};

inline XpOp parse_pauli(const std::string& s_in) {
  std::string s = s_in;
  std::int64_t p = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    if (s[0] == '-') p += 2;
    s = s.substr(1);
  }
  if (s.empty()) throw Error("empty Pauli string");
  BitVec x(s.size(), 0);
  ZVec z(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case 'I':
        break;
      case 'X':
        x[i] = 1;
        break;
      case 'Z':
        z[i] = 1;
        break;
      case 'Y':  // Y = i X Z
        x[i] = 1;
        z[i] = 1;
        p += 1;
        break;
      default:
        throw Error("bad character '" + std::string(1, s[i]) + "' in Pauli string \"" + s_in + "\"");
    }
  }
  return make_xp(2, p, x, z);
}

inline std::string format_pauli(const XpOp& g) {
  std::uint64_t ph = g.p;
  std::string body;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (g.x[i] && g.z[i]) {
      body += 'Y';
      ph += 3;
    } else if (g.x[i]) {
      body += 'X';
    } else if (g.z[i]) {
      body += 'Z';
    } else {
      body += 'I';
    }
  }
  ph %= 4;
  const char* pre[4] = {"", "i", "-", "-i"};
  return pre[ph] + body;
}

namespace detail {

inline std::uint8_t symplectic(const XpOp& a, const XpOp& b) {
  unsigned s = 0;
  for (std::size_t i = 0; i < a.n(); ++i) s ^= (a.x[i] & b.z[i]) ^ (a.z[i] & b.x[i]);
  return static_cast<std::uint8_t>(s & 1u);
}

inline ZVec symplectic_row(const XpOp& g) {
  ZVec r(2 * g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    r[i] = g.x[i];
    r[g.n() + i] = g.z[i] & 1u;
  }
  return r;
}

}  // namespace detail

/// One generator per line, optional sign, '#' comments.
inline PauliStabCode parse_stabilizers(const std::string& text) {
  PauliStabCode c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    line = detail::trim(line);
    if (line.empty()) continue;
    XpOp g = parse_pauli(line);
    if (c.generators.empty())
      c.n = g.n();
    else if (g.n() != c.n)
      throw Error("stabiliser generators have different lengths");
    c.generators.push_back(std::move(g));
  }
  if (c.generators.empty()) throw Error("no stabiliser generators given");
  for (std::size_t a = 0; a < c.generators.size(); ++a) {
    const auto& g = c.generators[a];
    std::uint64_t xz = 0;
    for (std::size_t i = 0; i < c.n; ++i) xz += g.x[i] & g.z[i];
    if ((g.p + xz) % 2) throw Error("generator " + std::to_string(a) + " is not Hermitian");
    for (std::size_t b = 0; b < a; ++b)
      if (detail::symplectic(g, c.generators[b]))
        throw Error("generators " + std::to_string(b) + " and " + std::to_string(a) + " anticommute");
  }
  ZnMatrix M(2, 2 * c.n);
  for (const auto& g : c.generators) M.push(detail::symplectic_row(g));
  if (howell(M).size() != c.generators.size()) throw Error("stabiliser generators are dependent");
  return c;
}

struct CanonicalStabilizers {
  std::vector<XpOp> SX;  // generators with independent X-parts, as given
  std::vector<XpOp> SZ;  // diagonal generators, XP_2(2p|0|z)
  BitMatrix LX;          // X-parts of logical X operators
};

/// Split into generators with independent X-parts and diagonal ones; X-logicals complete the X-parts.
inline CanonicalStabilizers canonicalise(const PauliStabCode& stab) {
  const std::size_t n = stab.n;
  CanonicalStabilizers out;
  // echelon rows of X-parts, each with the operator product it stands for
  std::vector<std::pair<BitVec, XpOp>> ech;
  for (const auto& g : stab.generators) {
    BitVec x = g.x;
    XpOp prod = g;
    for (const auto& [row, op] : ech) {
      const std::size_t piv = support(row)[0];
      if (x[piv]) {
        x = xor_bits(x, row);
        prod = xp_mul(prod, op);
      }
    }
    if (is_zero(x)) {
      if (prod.p % 2) throw Error("diagonal stabiliser with imaginary phase");
      out.SZ.push_back(prod);
      continue;
    }
    out.SX.push_back(g);
    const std::size_t piv = support(x)[0];
    for (auto& [row, op] : ech)
      if (row[piv]) {
        row = xor_bits(row, x);
        op = xp_mul(op, prod);
      }
    ech.emplace_back(x, prod);
    std::sort(ech.begin(), ech.end(), [](const auto& a, const auto& b) { return support(a.first)[0] < support(b.first)[0]; });
  }
  ZnMatrix Zs(2, n);
  for (const auto& g : out.SZ) Zs.push(g.z);
  ZnMatrix K = Zs.empty() ? ZnMatrix(2, n) : kernel(Zs);
  if (Zs.empty())
    for (std::size_t i = 0; i < n; ++i) {
      ZVec r(n, 0);
      r[i] = 1;
      K.push(r);
    }
  ZnMatrix SXm(2, n);
  for (const auto& g : out.SX) SXm.push(to_zvec(g.x));
  const ZnMatrix H = SXm.empty() ? SXm : howell(SXm);
  ZnMatrix R(2, n);
  for (const auto& r : K.rows) {
    auto res = H.empty() ? r : residue(H, r);
    if (!is_zero(res)) R.push(res);
  }
  if (!R.empty())
    for (const auto& r : howell(R).rows) out.LX.push_back(to_bits(r));
  return out;
}

/// q with p_i + q.z_i = 0 mod 2 for every diagonal generator XP_2(2p_i|0|z_i).
inline BitVec find_q(const std::vector<XpOp>& SZ, std::size_t n) {
  if (SZ.empty()) return BitVec(n, 0);
  ZnMatrix E(2, n + 1);
  for (const auto& g : SZ) {
    ZVec r(n + 1);
    r[0] = (g.p / 2) % 2;
    for (std::size_t i = 0; i < n; ++i) r[i + 1] = g.z[i] & 1u;
    E.push(r);
  }
  ZnMatrix K = kernel(E);
  if (K.empty() || K.rows[0][0] != 1) throw Error("diagonal stabilisers have inconsistent signs");
  return to_bits(ZVec(K.rows[0].begin() + 1, K.rows[0].end()));
}

struct CssReduction {
  PauliStabCode stab;
  CanonicalStabilizers canon;
  CssCode css;
  BitVec q;
  DiagProduct D;  // N = 4, S/Z/CZ terms
};

namespace detail {

// Stabilised state of a list of commuting Pauli operators, projected from |start>.
inline oracle::DenseState project(const std::vector<XpOp>& ops, const BitVec& start) {
  auto s = oracle::DenseState::basis(start);
  for (const auto& g : ops) {
    BitVec z = to_bits(g.z);
    s = oracle::add(s, oracle::apply_pauli(s, static_cast<unsigned>(g.p), g.x, z));
  }
  const double nn = s.norm();
  if (nn < 1e-9) throw Error("projection onto the code space vanished");
  for (auto& a : s.amp) a /= nn;
  return s;
}

inline unsigned phase_quarter(std::complex<double> r) {
  const double pi = 3.14159265358979323846;
  const double a = std::arg(r);
  const long m = std::lround(a / (pi / 2));
  if (std::abs(std::abs(r) - 1.0) > 1e-6 || std::abs(a - static_cast<double>(m) * pi / 2) > 1e-6)
    throw Error("stabilised state is not a level-2 phase state");
  return static_cast<unsigned>(((m % 4) + 4) % 4);
}

}  // namespace detail

/// Fit D from the phases of the projected codewords P|q + vL_X>. Phases are matched as a mod-4
/// quadratic form in the basis label y plus one level-2 form in v (each codeword carries its own
/// global phase); the canonical kernel element keeps the coefficients of D as small as possible.
inline DiagProduct find_D(const PauliStabCode& stab, const CanonicalStabilizers& canon, const BitVec& q) {
  const std::size_t n = stab.n, k = canon.LX.size();
  if (k > 16) throw Error("find_D: too many logical qubits");
  auto pairs_of = [](std::size_t m) {
    std::vector<std::pair<std::size_t, std::size_t>> p;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) p.emplace_back(a, b);
    return p;
  };
  const auto yp = pairs_of(n), vp = pairs_of(k);
  const std::size_t oy = 1, oyy = oy + n, oc = oyy + yp.size(), ov = oc + 1, ovv = ov + k;
  const std::size_t cols = ovv + vp.size();
  ZnMatrix E(4, cols);
  for (std::uint64_t vb = 0; vb < (std::uint64_t{1} << k); ++vb) {
    BitVec v(k), start = q;
    for (std::size_t i = 0; i < k; ++i) {
      v[i] = (vb >> i) & 1u;
      if (v[i]) start = xor_bits(start, canon.LX[i]);
    }
    const auto S = detail::project(stab.generators, start);
    const auto ref = S.amp[oracle::DenseState::index(start)];
    for (std::size_t m = 0; m < S.amp.size(); ++m) {
      if (std::abs(S.amp[m]) < 1e-9) continue;
      const unsigned ph = detail::phase_quarter(S.amp[m] / ref);
      const BitVec y = S.bits(m);
      ZVec row(cols, 0);
      row[0] = (4 - ph) % 4;
      for (std::size_t j = 0; j < n; ++j) row[oy + j] = y[j];
      for (std::size_t p = 0; p < yp.size(); ++p) row[oyy + p] = 2 * (y[yp[p].first] & y[yp[p].second]);
      row[oc] = 1;
      for (std::size_t i = 0; i < k; ++i) row[ov + i] = v[i];
      for (std::size_t p = 0; p < vp.size(); ++p) row[ovv + p] = 2 * (v[vp[p].first] & v[vp[p].second]);
      E.push(row);
    }
  }
  ZnMatrix K = kernel(E);
  if (K.empty() || K.rows[0][0] != 1) throw Error("stabilised state phases do not fit a level-2 diagonal form");
  const ZVec& sol = K.rows[0];
  DiagProduct D(4, n, TermKind::CP);
  for (std::size_t j = 0; j < n; ++j) D.add(indicator(n, {j}), 2 * static_cast<std::int64_t>(sol[oy + j]));
  for (std::size_t p = 0; p < yp.size(); ++p)
    if (sol[oyy + p] % 2) D.add(indicator(n, {yp[p].first, yp[p].second}), 4);
  return D;
}

/// Map a Pauli stabiliser code C to a CSS code C' with C = D Q C', Q = X^q.
inline CssReduction map_to_css(const PauliStabCode& stab) {
  if (stab.n > 14) throw Error("map_to_css: at most 14 qubits are supported");
  CssReduction red;
  red.stab = stab;
  red.canon = canonicalise(stab);
  BitMatrix SX;
  for (const auto& g : red.canon.SX) SX.push_back(g.x);
  red.css = build_code(SX, red.canon.LX, stab.n);
  red.q = find_q(red.canon.SZ, stab.n);
  red.D = find_D(stab, red.canon, red.q);
  return red;
}

/// Codeword D X^q |v>_L of C as a dense state, built from the CSS code C'.
inline oracle::DenseState reduced_codeword(const CssReduction& red, const BitVec& v) {
  const std::size_t n = red.stab.n;
  oracle::DenseState s = oracle::DenseState::basis(BitVec(n, 0));
  s.amp.assign(s.amp.size(), 0.0);
  const auto words = canonical_codewords(red.css);
  for (const auto& e : words.at(v)) s.amp[oracle::DenseState::index(xor_bits(e, red.q))] += 1.0;
  return oracle::apply_phase(s, oracle::phase_of_product(red.D));
}

/// True when every D X^q |v>_L is fixed by every generator of C.
inline bool verify_reduction(const CssReduction& red, double tol = 1e-9) {
  for (const auto& [v, words] : canonical_codewords(red.css)) {
    (void)words;
    const auto s = reduced_codeword(red, v);
    for (const auto& g : red.stab.generators) {
      const auto gs = oracle::apply_pauli(s, static_cast<unsigned>(g.p), g.x, to_bits(g.z));
      for (std::size_t m = 0; m < s.amp.size(); ++m)
        if (std::abs(gs.amp[m] - s.amp[m]) > tol) return false;
    }
  }
  return true;
}

/// Q B Q^{-1}: a diagonal logical operator of C' carried over to C.
inline DiagProduct transfer_logical(const CssReduction& red, const DiagProduct& op) {
  if (op.n != red.stab.n) throw Error("transfer_logical: operator length mismatch");
  return conjugate_by_xstring(to_cp(op), red.q);
}

/// True when `op` maps each codeword D X^q |v>_L of C to w^{action(v)} times itself.
inline bool verify_transfer(const CssReduction& red, const DiagProduct& op, const DiagProduct& action,
                            double tol = 1e-9) {
  if (action.N != op.N) throw Error("verify_transfer: precision mismatch");
  const auto f = oracle::phase_of_product(op);
  for (const auto& [v, words] : canonical_codewords(red.css)) {
    (void)words;
    const auto s = reduced_codeword(red, v);
    const auto bs = oracle::apply_phase(s, f);
    const auto w = oracle::omega_pow(action.eval(v), action.N);
    for (std::size_t m = 0; m < s.amp.size(); ++m)
      if (std::abs(bs.amp[m] - w * s.amp[m]) > tol) return false;
  }
  return true;
}

/// Minimum weight of a Pauli commuting with all generators but outside the stabiliser group.
inline std::optional<std::size_t> pauli_distance(const PauliStabCode& stab, std::size_t cap = 10) {
  const std::size_t n = stab.n;
  if (n > cap) return std::nullopt;
  ZnMatrix G(2, 2 * n);
  for (const auto& g : stab.generators) G.push(detail::symplectic_row(g));
  G = howell(G);
  std::optional<std::size_t> best;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << (2 * n)); ++m) {
    XpOp p{2, 0, BitVec(n, 0), ZVec(n, 0)};
    std::size_t w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      p.x[i] = (m >> i) & 1u;
      p.z[i] = (m >> (n + i)) & 1u;
      if (p.x[i] || p.z[i]) ++w;
    }
    if (best && w >= *best) continue;
    bool commutes = true;
    for (const auto& g : stab.generators)
      if (detail::symplectic(p, g)) commutes = false;
    if (!commutes || in_span(G, detail::symplectic_row(p))) continue;
    best = w;
  }
  return best;
}

}  // namespace xpcalc
