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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xpcalc {

using BitVec = std::vector<std::uint8_t>;
using BitMatrix = std::vector<BitVec>;
using ZVec = std::vector<std::uint64_t>;

/// Raised for malformed input: bad dimensions, bad characters, violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_power_of_two(std::uint64_t N) { return N != 0 && (N & (N - 1)) == 0; }

inline unsigned log2_exact(std::uint64_t N) {
  unsigned t = 0;
  while ((std::uint64_t{1} << t) < N) ++t;
  return t;
}

/// 2-adic valuation; v2(0) is reported as 64.
inline unsigned v2(std::uint64_t a) {
  if (a == 0) return 64;
  unsigned c = 0;
  while ((a & 1u) == 0) {
    a >>= 1;
    ++c;
  }
  return c;
}

inline std::uint64_t mod(std::int64_t a, std::uint64_t N) {
  auto m = static_cast<std::int64_t>(N);
  auto r = a % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

inline std::size_t weight(const BitVec& v) {
  std::size_t w = 0;
  for (auto b : v) w += b ? 1 : 0;
  return w;
}

template <class V>
inline bool is_zero(const V& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

inline BitVec xor_bits(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw Error("bit vector length mismatch");
  BitVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] ^ b[i]) & 1u;
  return r;
}

inline std::uint8_t dot2(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw Error("bit vector length mismatch");
  unsigned s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s ^= (a[i] & b[i]) & 1u;
  return static_cast<std::uint8_t>(s);
}

/// True when supp(u) is contained in supp(v).
inline bool preceq(const BitVec& u, const BitVec& v) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] && !v[i]) return false;
  return true;
}

inline std::vector<std::size_t> support(const BitVec& v) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) s.push_back(i);
  return s;
}

inline BitVec indicator(std::size_t n, const std::vector<std::size_t>& idx) {
  BitVec v(n, 0);
  for (auto i : idx) {
    if (i >= n) throw Error("index out of range");
    v[i] = 1;
  }
  return v;
}

inline BitVec parse_bits(std::string_view s) {
  BitVec v;
  v.reserve(s.size());
  for (char c : s) {
    if (c == '0' || c == '1')
      v.push_back(static_cast<std::uint8_t>(c - '0'));
    else
      throw Error("non-binary character '" + std::string(1, c) + "' in row \"" + std::string(s) + "\"");
  }
  return v;
}

/// Parses a digit string such as "13313113"; a comma separated form "1,3,10" is also accepted.
inline ZVec parse_digits(std::string_view s, std::uint64_t N) {
  ZVec z;
  if (s.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto next = s.find(',', pos);
      auto tok = s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
      if (tok.empty()) throw Error("empty entry in vector \"" + std::string(s) + "\"");
      std::uint64_t x = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') throw Error("bad digit in vector \"" + std::string(s) + "\"");
        x = x * 10 + static_cast<std::uint64_t>(c - '0');
      }
      z.push_back(x % N);
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    return z;
  }
  for (char c : s) {
    if (c < '0' || c > '9') throw Error("bad digit '" + std::string(1, c) + "' in vector");
    z.push_back(static_cast<std::uint64_t>(c - '0') % N);
  }
  return z;
}

template <class V>
inline std::string format_digits(const V& v) {
  bool wide = false;
  for (auto x : v)
    if (x > 9) wide = true;
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (wide && i) s += ',';
    s += std::to_string(static_cast<std::uint64_t>(v[i]));
  }
  return s;
}

inline ZVec to_zvec(const BitVec& b) { return ZVec(b.begin(), b.end()); }

inline BitVec to_bits(const ZVec& z) {
  BitVec b(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) b[i] = static_cast<std::uint8_t>(z[i] & 1u);
  return b;
}

/// Visits every subset of {0..m-1} of size exactly j in lexicographic order of index tuples.
template <class F>
inline void for_each_combination(std::size_t m, std::size_t j, F&& f) {
  if (j > m) return;
  std::vector<std::size_t> idx(j);
  for (std::size_t i = 0; i < j; ++i) idx[i] = i;
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    if (j == 0) return;
    std::size_t i = j;
    while (i > 0 && idx[i - 1] == m - j + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t a = i; a < j; ++a) idx[a] = idx[a - 1] + 1;
  }
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Binomial coefficient saturated at `cap`.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace xpcalc
