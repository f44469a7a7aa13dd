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

// CSS code model, codeword enumeration, logical Z operators, text format and
// brute-force distances.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xpcalc/ringalg.hpp"
#include "xpcalc/types.hpp"

namespace xpcalc {

enum class DependentRows { Reject, Drop };

struct CssCode {
  std::size_t n = 0;
  BitMatrix SX;
  BitMatrix LX;
  BitMatrix SZ;
  BitMatrix LZ;

  std::size_t r() const { return SX.size(); }
  std::size_t k() const { return LX.size(); }
};

namespace detail {

inline BitMatrix to_bit_matrix(const ZnMatrix& M) {
  BitMatrix out;
  for (const auto& r : M.rows) out.push_back(to_bits(r));
  return out;
}

}  // namespace detail

/// Matrix product A B^T mod 2.
inline BitMatrix mul_transpose2(const BitMatrix& A, const BitMatrix& B) {
  BitMatrix out(A.size(), BitVec(B.size(), 0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) out[i][j] = dot2(A[i], B[j]);
  return out;
}

/// Logical Z matrix with LZ LX^T = I and LZ SX^T = 0 (mod 2).
inline BitMatrix solve_logical_z(std::size_t n, const BitMatrix& SX, const BitMatrix& LX) {
  const std::size_t k = LX.size();
  if (k == 0) return {};
  ZnMatrix K = kernel(ZnMatrix::from_bits(2, n, SX));
  ZnMatrix A(2, k + n);
  for (const auto& z : K.rows) {
    ZVec row(k + n, 0);
    auto zb = to_bits(z);
    for (std::size_t i = 0; i < k; ++i) row[i] = dot2(LX[i], zb);
    std::copy(z.begin(), z.end(), row.begin() + static_cast<std::ptrdiff_t>(k));
    A.rows.push_back(std::move(row));
  }
  ZnMatrix H = howell(A);
  BitMatrix LZ(k);
  auto piv = pivots(H);
  for (std::size_t i = 0; i < H.size(); ++i) {
    if (piv[i] >= k) continue;
    bool unit = true;
    for (std::size_t c = 0; c < k; ++c)
      if (H.rows[i][c] != (c == piv[i] ? 1u : 0u)) unit = false;
    if (!unit) continue;
    LZ[piv[i]] = to_bits(ZVec(H.rows[i].begin() + static_cast<std::ptrdiff_t>(k), H.rows[i].end()));
  }
  for (const auto& z : LZ)
    if (z.empty()) throw Error("logical Z operators do not exist: LX depends on SX");
  return LZ;
}

/// Build a CSS code from X-checks and X-logicals. Dependent X-check rows are
/// rejected or dropped according to `policy`; a dependent X-logical is always an error.
inline CssCode build_code(BitMatrix SX, BitMatrix LX, std::optional<std::size_t> n_hint = std::nullopt,
                          DependentRows policy = DependentRows::Reject) {
  std::size_t n = n_hint ? *n_hint : (!SX.empty() ? SX[0].size() : (!LX.empty() ? LX[0].size() : 0));
  for (const auto* M : {&SX, &LX})
    for (const auto& row : *M) {
      if (row.size() != n) throw Error("inconsistent row lengths in code matrices");
      for (auto b : row)
        if (b > 1) throw Error("code matrices must be binary");
    }
  CssCode c;
  c.n = n;
  ZnMatrix acc(2, n);
  for (auto& row : SX) {
    if (is_zero(row) || (!acc.empty() && in_span(acc, to_zvec(row)))) {
      if (policy == DependentRows::Drop) continue;
      throw Error("X-check rows are linearly dependent");
    }
    acc.push(to_zvec(row));
    acc = howell(acc);
    c.SX.push_back(row);
  }
  for (auto& row : LX) {
    if (is_zero(row) || (!acc.empty() && in_span(acc, to_zvec(row))))
      throw Error("X-logical row is dependent on the X-checks and earlier X-logicals");
    acc.push(to_zvec(row));
    acc = howell(acc);
    c.LX.push_back(row);
  }
  ZnMatrix G = ZnMatrix::from_bits(2, n, c.SX);
  for (const auto& row : c.LX) G.push(to_zvec(row));
  c.SZ = detail::to_bit_matrix(kernel(G));
  c.LZ = solve_logical_z(n, c.SX, c.LX);
  return c;
}

/// Replace the logical Z matrix, checking LZ LX^T = I and LZ SX^T = 0.
inline CssCode with_logical_z(CssCode c, const BitMatrix& LZ) {
  if (LZ.size() != c.k()) throw Error("LZ must have k rows");
  for (std::size_t i = 0; i < LZ.size(); ++i) {
    if (LZ[i].size() != c.n) throw Error("LZ row length mismatch");
    for (const auto& x : c.SX)
      if (dot2(LZ[i], x)) throw Error("LZ row anticommutes with an X-check");
    for (std::size_t j = 0; j < c.k(); ++j)
      if (dot2(LZ[i], c.LX[j]) != (i == j ? 1 : 0)) throw Error("LZ LX^T is not the identity");
  }
  c.LZ = LZ;
  return c;
}

struct CodewordIndex {
  BitVec u;
  BitVec v;
  BitVec e;
  std::size_t weight = 0;
};

/// All e_uv with wt(u)+wt(v) <= t, ordered by total weight then lexicographically by generator index tuple.
inline std::vector<CodewordIndex> codeword_rows(const CssCode& code, unsigned t) {
  if (t < 1) throw Error("codeword_rows: t must be at least 1");
  const std::size_t r = code.r(), k = code.k(), m = r + k;
  std::vector<CodewordIndex> out;
  for (std::size_t j = 0; j <= std::min<std::size_t>(t, m); ++j) {
    for_each_combination(m, j, [&](const std::vector<std::size_t>& idx) {
      CodewordIndex ci{BitVec(r, 0), BitVec(k, 0), BitVec(code.n, 0), j};
      for (auto i : idx) {
        const BitVec& g = i < r ? code.SX[i] : code.LX[i - r];
        if (i < r)
          ci.u[i] = 1;
        else
          ci.v[i - r] = 1;
        for (std::size_t q = 0; q < code.n; ++q) ci.e[q] ^= g[q];
      }
      out.push_back(std::move(ci));
    });
  }
  return out;
}

/// For each v in Z_2^k, the 2^r basis strings of |v>_L.
inline std::map<BitVec, std::vector<BitVec>> canonical_codewords(const CssCode& code, std::size_t cap = 20) {
  const std::size_t r = code.r(), k = code.k();
  if (r + k > cap) throw Error("canonical_codewords: r+k exceeds enumeration cap");
  std::map<BitVec, std::vector<BitVec>> out;
  for (std::uint64_t vb = 0; vb < (std::uint64_t{1} << k); ++vb) {
    BitVec v(k);
    BitVec base(code.n, 0);
    for (std::size_t i = 0; i < k; ++i) {
      v[i] = (vb >> i) & 1u;
      if (v[i]) base = xor_bits(base, code.LX[i]);
    }
    auto& list = out[v];
    for (std::uint64_t ub = 0; ub < (std::uint64_t{1} << r); ++ub) {
      BitVec e = base;
      for (std::size_t i = 0; i < r; ++i)
        if ((ub >> i) & 1u) e = xor_bits(e, code.SX[i]);
      list.push_back(std::move(e));
    }
  }
  return out;
}

inline BitMatrix logical_z_matrix(const CssCode& code) { return code.LZ; }

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

struct ParsedCodeFile {
  BitMatrix SX;
  BitMatrix LX;
  BitMatrix LZ;                    // optional
  std::vector<std::string> extra;  // lines of trailing sections such as PGATES
};

inline ParsedCodeFile parse_code_file(const std::string& text) {
  ParsedCodeFile f;
  std::istringstream in(text);
  std::string line;
  enum { None, InSX, InLX, InLZ, InExtra } sec = None;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line == "SX") {
      sec = InSX;
      continue;
    }
    if (line == "LX") {
      sec = InLX;
      continue;
    }
    if (line == "LZ") {
      sec = InLZ;
      continue;
    }
    if (line == "PGATES") {
      sec = InExtra;
      continue;
    }
    if (sec == InExtra) {
      f.extra.push_back(line);
      continue;
    }
    if (sec == None) throw Error("line " + std::to_string(lineno) + ": row before any SX/LX header");
    BitVec row;
    try {
      row = parse_bits(line);
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
    (sec == InSX ? f.SX : sec == InLX ? f.LX : f.LZ).push_back(std::move(row));
  }
  std::size_t n = 0;
  bool have = false;
  for (const auto* M : {&f.SX, &f.LX, &f.LZ})
    for (const auto& row : *M) {
      if (!have) {
        n = row.size();
        have = true;
      } else if (row.size() != n) {
        throw Error("inconsistent row lengths");
      }
    }
  return f;
}

inline CssCode parse_code(const std::string& text) {
  auto f = parse_code_file(text);
  CssCode c = build_code(f.SX, f.LX);
  if (!f.LZ.empty()) c = with_logical_z(std::move(c), f.LZ);
  return c;
}

inline std::string bits_to_string(const BitVec& v) {
  std::string s;
  for (auto b : v) s += b ? '1' : '0';
  return s;
}

inline std::string serialize_code(const CssCode& code) {
  std::string s = "SX\n";
  for (const auto& r : code.SX) s += bits_to_string(r) + "\n";
  s += "LX\n";
  for (const auto& r : code.LX) s += bits_to_string(r) + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Distances

struct DistanceResult {
  std::optional<std::size_t> value;  // exact when set
  std::size_t lower_bound = 0;       // every weight below this was excluded
};

struct Distances {
  DistanceResult dX;
  DistanceResult dZ;
};

namespace detail {

using Words = std::vector<std::uint64_t>;

inline Words pack(const BitVec& v) {
  Words w((v.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) w[i / 64] |= std::uint64_t{1} << (i % 64);
  return w;
}

inline std::size_t popcount(const Words& w) {
  std::size_t c = 0;
  for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
  return c;
}

// Minimum weight over span(stab) + nonzero combination of logicals, by Gray-code enumeration.
inline std::size_t min_weight_coset(const BitMatrix& stab, const BitMatrix& logical, std::size_t n) {
  std::vector<Words> gens;
  for (const auto& r : stab) gens.push_back(pack(r));
  for (const auto& r : logical) gens.push_back(pack(r));
  const std::size_t s = stab.size(), m = gens.size();
  Words cur((n + 63) / 64, 0);
  std::uint64_t logical_mask = 0;
  std::size_t best = n + 1;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << m); ++i) {
    const unsigned bit = static_cast<unsigned>(__builtin_ctzll(i));
    for (std::size_t w = 0; w < cur.size(); ++w) cur[w] ^= gens[bit][w];
    if (bit >= s) logical_mask ^= std::uint64_t{1} << (bit - s);
    if (logical_mask) best = std::min(best, popcount(cur));
  }
  return best;
}

// Smallest weight w such that some weight-w vector c satisfies A c = 0 and B c != 0.
inline DistanceResult min_weight_search(const BitMatrix& A, const BitMatrix& B, std::size_t n,
                                        std::uint64_t budget) {
  // column syndromes over the rows of A then B
  const std::size_t ra = A.size(), rb = B.size();
  std::vector<Words> col(n, Words((ra + rb + 63) / 64, 0));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t q = 0; q < n; ++q)
      if (A[i][q]) col[q][i / 64] |= std::uint64_t{1} << (i % 64);
  for (std::size_t i = 0; i < rb; ++i)
    for (std::size_t q = 0; q < n; ++q)
      if (B[i][q]) col[q][(ra + i) / 64] |= std::uint64_t{1} << ((ra + i) % 64);
  const std::size_t words = (ra + rb + 63) / 64;
  auto a_zero_b_nonzero = [&](const Words& s) {
    for (std::size_t i = 0; i < ra; ++i)
      if ((s[i / 64] >> (i % 64)) & 1u) return false;
    for (std::size_t i = 0; i < rb; ++i)
      if ((s[(ra + i) / 64] >> ((ra + i) % 64)) & 1u) return true;
    return false;
  };
  DistanceResult res;
  std::uint64_t spent = 0;
  for (std::size_t w = 1; w <= n; ++w) {
    if (binomial_capped(n, w, budget) > budget - spent) return res;
    bool found = false;
    for_each_combination(n, w, [&](const std::vector<std::size_t>& idx) {
      if (found) return;
      ++spent;
      Words s(words, 0);
      for (auto q : idx)
        for (std::size_t x = 0; x < words; ++x) s[x] ^= col[q][x];
      if (a_zero_b_nonzero(s)) found = true;
    });
    if (found) {
      res.value = w;
      res.lower_bound = w;
      return res;
    }
    res.lower_bound = w + 1;
  }
  return res;
}

}  // namespace detail

/// Exact X and Z distances by enumeration of cosets (when 2^{gens} <= 2^cap_log2)
/// or of low-weight vectors (bounded by `weight_budget` candidates); otherwise unknown.
inline Distances code_distances(const CssCode& code, unsigned cap_log2 = 22,
                                std::uint64_t weight_budget = 50'000'000) {
  Distances d;
  if (code.k() == 0) return d;
  if (code.r() + code.k() <= cap_log2) {
    d.dX.value = detail::min_weight_coset(code.SX, code.LX, code.n);
    d.dX.lower_bound = *d.dX.value;
  } else {
    d.dX = detail::min_weight_search(code.SZ, code.LZ, code.n, weight_budget);
  }
  if (code.SZ.size() + code.k() <= cap_log2) {
    d.dZ.value = detail::min_weight_coset(code.SZ, code.LZ, code.n);
    d.dZ.lower_bound = *d.dZ.value;
  } else {
    d.dZ = detail::min_weight_search(code.SX, code.LX, code.n, weight_budget);
  }
  return d;
}

}  // namespace xpcalc
