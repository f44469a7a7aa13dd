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

// Linear algebra over Z_N for N a power of two: Howell normal form, kernels,
// residues and span intersections.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "xpcalc/types.hpp"

namespace xpcalc {

struct ZnMatrix {
  std::uint64_t N = 2;
  std::size_t ncols = 0;
  std::vector<ZVec> rows;
  bool howell = false;

  ZnMatrix() = default;
  ZnMatrix(std::uint64_t modulus, std::size_t cols) : N(modulus), ncols(cols) {
    if (!is_power_of_two(modulus) || modulus > (std::uint64_t{1} << 32))
      throw Error("modulus must be a power of two no larger than 2^32");
  }
  ZnMatrix(std::uint64_t modulus, std::size_t cols, const std::vector<ZVec>& r) : ZnMatrix(modulus, cols) {
    for (const auto& row : r) push(row);
  }

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  const ZVec& operator[](std::size_t i) const { return rows[i]; }

  void push(const ZVec& row) {
    if (row.size() != ncols) throw Error("row length does not match column count");
    ZVec r(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) r[j] = row[j] % N;
    rows.push_back(std::move(r));
    howell = false;
  }

  static ZnMatrix from_bits(std::uint64_t modulus, std::size_t cols, const BitMatrix& m) {
    ZnMatrix out(modulus, cols);
    for (const auto& r : m) out.push(to_zvec(r));
    return out;
  }
};

namespace detail {

inline std::uint64_t unit_inverse(std::uint64_t u, std::uint64_t N) {
  std::uint64_t inv = u;
  for (int i = 0; i < 6; ++i) inv *= 2 - u * inv;
  return inv & (N - 1);
}

inline std::size_t leading(const ZVec& r) {
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j]) return j;
  return r.size();
}

// r := r - f*p (mod N)
inline void axpy(ZVec& r, std::uint64_t f, const ZVec& p, std::uint64_t N) {
  if (f == 0) return;
  const std::uint64_t m = N - 1;
  const std::uint64_t nf = (N - (f & m)) & m;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (p[j]) r[j] = (r[j] + nf * p[j]) & m;
}

}  // namespace detail

/// Pivot column of each row of a matrix in Howell form.
inline std::vector<std::size_t> pivots(const ZnMatrix& H) {
  std::vector<std::size_t> p;
  p.reserve(H.size());
  for (const auto& r : H.rows) p.push_back(detail::leading(r));
  return p;
}

/// Howell normal form: the unique canonical generating set of the row span.
inline ZnMatrix howell(const ZnMatrix& M) {
  const std::uint64_t N = M.N;
  const std::uint64_t mask = N - 1;
  std::vector<ZVec> work;
  work.reserve(M.rows.size());
  for (const auto& r : M.rows)
    if (!is_zero(r)) work.push_back(r);
  std::sort(work.begin(), work.end(), [](const ZVec& a, const ZVec& b) {
    auto la = detail::leading(a), lb = detail::leading(b);
    if (la != lb) return la < lb;
    return a < b;
  });

  ZnMatrix H(N, M.ncols);
  for (std::size_t j = 0; j < M.ncols && !work.empty(); ++j) {
    std::size_t best = work.size();
    unsigned bestv = 64;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i][j] == 0) continue;
      unsigned v = v2(work[i][j]);
      if (v < bestv) {
        bestv = v;
        best = i;
      }
    }
    if (best == work.size()) continue;
    ZVec p = std::move(work[best]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
    const std::uint64_t h = std::uint64_t{1} << bestv;
    const std::uint64_t inv = detail::unit_inverse(p[j] >> bestv, N);
    for (auto& x : p) x = (x * inv) & mask;

    std::vector<ZVec> next;
    next.reserve(work.size() + 1);
    for (auto& r : work) {
      if (r[j]) detail::axpy(r, r[j] / h, p, N);
      if (!is_zero(r)) next.push_back(std::move(r));
    }
    ZVec ann(p.size());
    for (std::size_t c = 0; c < p.size(); ++c) ann[c] = (p[c] * (N / h)) & mask;
    if (!is_zero(ann)) next.push_back(std::move(ann));
    work = std::move(next);
    H.rows.push_back(std::move(p));
  }

  auto piv = pivots(H);
  for (std::size_t i = 0; i < H.rows.size(); ++i) {
    const std::size_t j = piv[i];
    const std::uint64_t h = H.rows[i][j];
    for (std::size_t a = 0; a < i; ++a) {
      std::uint64_t f = H.rows[a][j] / h;
      if (f) detail::axpy(H.rows[a], f, H.rows[i], N);
    }
  }
  H.howell = true;
  return H;
}

inline ZnMatrix transpose(const ZnMatrix& M) {
  ZnMatrix T(M.N, M.rows.size());
  for (std::size_t j = 0; j < M.ncols; ++j) {
    ZVec r(M.rows.size());
    for (std::size_t i = 0; i < M.rows.size(); ++i) r[i] = M.rows[i][j];
    T.rows.push_back(std::move(r));
  }
  return T;
}

/// Howell basis of {v : v M^T = 0 mod N}.
inline ZnMatrix kernel(const ZnMatrix& M) {
  const std::size_t m = M.rows.size();
  const std::size_t c = M.ncols;
  ZnMatrix A(M.N, m + c);
  for (std::size_t j = 0; j < c; ++j) {
    ZVec r(m + c, 0);
    for (std::size_t i = 0; i < m; ++i) r[i] = M.rows[i][j];
    r[m + j] = 1;
    A.rows.push_back(std::move(r));
  }
  ZnMatrix H = howell(A);
  ZnMatrix K(M.N, c);
  for (const auto& r : H.rows) {
    if (detail::leading(r) < m) continue;
    K.rows.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(m), r.end());
  }
  K.howell = true;
  return K;
}

/// Canonical representative of z modulo span(K).
inline ZVec residue(const ZnMatrix& K, const ZVec& z) {
  if (z.size() != K.ncols) throw Error("residue: dimension mismatch");
  ZnMatrix local;
  const ZnMatrix* Hp = &K;
  if (!K.howell) {
    local = howell(K);
    Hp = &local;
  }
  ZVec r(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) r[j] = z[j] % K.N;
  for (const auto& row : Hp->rows) {
    const std::size_t j = detail::leading(row);
    const std::uint64_t f = r[j] / row[j];
    if (f) detail::axpy(r, f, row, K.N);
  }
  return r;
}

inline bool in_span(const ZnMatrix& K, const ZVec& z) { return is_zero(residue(K, z)); }

/// Howell basis of span(A) intersected with span(B).
inline ZnMatrix span_intersection(const ZnMatrix& A, const ZnMatrix& B) {
  if (A.N != B.N || A.ncols != B.ncols) throw Error("span_intersection: dimension mismatch");
  const std::size_t n = A.ncols;
  ZnMatrix S(A.N, 2 * n);
  for (const auto& r : A.rows) {
    ZVec row(2 * n);
    std::copy(r.begin(), r.end(), row.begin());
    std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(n));
    S.rows.push_back(std::move(row));
  }
  for (const auto& r : B.rows) {
    ZVec row(2 * n, 0);
    std::copy(r.begin(), r.end(), row.begin());
    S.rows.push_back(std::move(row));
  }
  ZnMatrix H = howell(S);
  ZnMatrix out(A.N, n);
  for (const auto& r : H.rows) {
    if (detail::leading(r) < n) continue;
    out.rows.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(n), r.end());
  }
  return howell(out);
}

/// Stack the rows of two matrices with equal shape parameters.
inline ZnMatrix stack(const ZnMatrix& A, const ZnMatrix& B) {
  if (A.N != B.N || A.ncols != B.ncols) throw Error("stack: dimension mismatch");
  ZnMatrix S = A;
  S.howell = false;
  for (const auto& r : B.rows) S.rows.push_back(r);
  return S;
}

/// Reinterpret a matrix at a new modulus by multiplying every entry by `scale`.
inline ZnMatrix rescale(const ZnMatrix& A, std::uint64_t newN, std::uint64_t scale) {
  ZnMatrix out(newN, A.ncols);
  for (const auto& r : A.rows) {
    ZVec s(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) s[j] = (r[j] * scale) % newN;
    if (!is_zero(s)) out.rows.push_back(std::move(s));
  }
  return out;
}

inline std::uint64_t dot(const ZVec& a, const ZVec& b, std::uint64_t N) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = (s + a[i] * b[i]) & (N - 1);
  return s;
}

/// Rank of a binary matrix (mod 2 Howell form).
inline std::size_t rank2(const BitMatrix& m, std::size_t ncols) {
  return howell(ZnMatrix::from_bits(2, ncols, m)).size();
}

}  // namespace xpcalc
