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

// Text syntax for diagonal gate products: S[i], S3[i], T[i], CZ[i,j],
// CS[i,j], CCZ[i,j,k], RP(q)[...], CP(q)[...]. Indices are zero-based.

#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "xpcalc/phaseops.hpp"

namespace xpcalc {

namespace detail {

struct BaseGate {
  const char* name;
  std::uint64_t num;
  std::uint64_t den;  // phase exp(2 pi i num/den)
};

inline const std::vector<BaseGate>& base_gates() {
  static const std::vector<BaseGate> g = {{"Z", 1, 2},  {"S", 1, 4},  {"S3", 3, 4}, {"T", 1, 8},
                                          {"T3", 3, 8}, {"T5", 5, 8}, {"T7", 7, 8}};
  return g;
}

inline std::string join_indices(const BitVec& v) {
  std::string s = "[";
  bool first = true;
  for (auto i : support(v)) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "]";
}

inline std::vector<std::pair<BitVec, std::uint64_t>> sorted_terms(const DiagProduct& d) {
  std::vector<std::pair<BitVec, std::uint64_t>> t(d.terms.begin(), d.terms.end());
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    auto wa = weight(a.first), wb = weight(b.first);
    if (wa != wb) return wa < wb;
    return support(a.first) < support(b.first);
  });
  return t;
}

}  // namespace detail

/// Name of one controlled-phase term, e.g. "CZ[0,1]"; falls back to "CP(q)[...]".
inline std::string format_cp_term(const BitVec& v, std::uint64_t q, std::uint64_t N) {
  const std::uint64_t M = 2 * N;
  const std::size_t w = weight(v);
  for (const auto& b : detail::base_gates()) {
    if ((q * b.den) == (M * b.num)) return std::string(w - 1, 'C') + b.name + detail::join_indices(v);
  }
  return "CP(" + std::to_string(q) + ")" + detail::join_indices(v);
}

/// Space separated gate list; "I" for the identity.
inline std::string format_gates(const DiagProduct& d) {
  std::string s;
  auto add = [&](const std::string& g) {
    if (!s.empty()) s += " ";
    s += g;
  };
  if (d.phase) add("phase(" + std::to_string(d.phase) + ")");
  for (const auto& [v, q] : detail::sorted_terms(d)) {
    if (d.kind == TermKind::CP)
      add(format_cp_term(v, q, d.N));
    else
      add("RP(" + std::to_string(q) + ")" + detail::join_indices(v));
  }
  return s.empty() ? "I" : s;
}

/// Parse a gate list on `n` qubits at precision N into a CP product.
inline DiagProduct parse_gates(const std::string& text, std::size_t n, std::uint64_t N) {
  DiagProduct out(N, n, TermKind::CP);
  const std::uint64_t M = 2 * N;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> void {
    throw Error("cannot parse gate string \"" + text + "\": " + why);
  };
  auto skip_sep = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',' ||
                               text[i] == '*' || text[i] == '.'))
      ++i;
  };
  skip_sep();
  while (i < text.size()) {
    std::string name;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) name += text[i++];
    if (name.empty()) fail("expected a gate name at position " + std::to_string(i));
    bool has_arg = false;
    std::int64_t arg = 0;
    if (i < text.size() && text[i] == '(') {
      ++i;
      std::string num;
      while (i < text.size() && text[i] != ')') num += text[i++];
      if (i >= text.size()) fail("unterminated '('");
      ++i;
      try {
        std::size_t used = 0;
        arg = std::stoll(num, &used);
        if (used != num.size()) fail("bad coefficient \"" + num + "\"");
      } catch (const std::logic_error&) {
        fail("bad coefficient \"" + num + "\"");
      }
      has_arg = true;
    }
    if (name == "I" && !has_arg) {
      skip_sep();
      continue;
    }
    if (name == "phase") {
      if (!has_arg) fail("phase needs an exponent");
      out.add_phase(arg);
      skip_sep();
      continue;
    }
    if (i >= text.size() || text[i] != '[') fail("expected '[' after " + name);
    ++i;
    std::vector<std::size_t> idx;
    std::string cur;
    while (i < text.size() && text[i] != ']') {
      char c = text[i++];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        cur += c;
      } else if (c == ',' || c == ' ') {
        if (!cur.empty()) idx.push_back(std::stoul(cur));
        cur.clear();
      } else {
        fail(std::string("bad character '") + c + "' in index list");
      }
    }
    if (i >= text.size()) fail("unterminated '['");
    ++i;
    if (!cur.empty()) idx.push_back(std::stoul(cur));
    if (idx.empty()) fail("empty index list");
    for (auto q : idx)
      if (q >= n) fail("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
    BitVec v = indicator(n, idx);
    if (weight(v) != idx.size()) fail("repeated qubit index");

    if (name == "CP" || name == "RP") {
      if (!has_arg) fail(name + " needs a coefficient");
      if (name == "CP") {
        out.add(v, arg);
      } else {
        out.multiply(rp_to_cp(RpOp{N, mod(arg, M), v}));
      }
    } else {
      if (has_arg) fail("unexpected coefficient on " + name);
      std::size_t controls = 0;
      while (controls < name.size() && name[controls] == 'C') ++controls;
      std::string base = name.substr(controls);
      if (base.empty() && controls > 0) {  // the letters were all 'C'
        fail("unknown gate " + name);
      }
      const detail::BaseGate* g = nullptr;
      for (const auto& b : detail::base_gates())
        if (base == b.name) g = &b;
      if (!g) fail("unknown gate " + name);
      if (controls + 1 != idx.size())
        fail(name + " acts on " + std::to_string(controls + 1) + " qubits, got " + std::to_string(idx.size()));
      if ((M * g->num) % g->den != 0)
        fail(name + " is not representable at precision N=" + std::to_string(N));
      out.add(v, static_cast<std::int64_t>(M * g->num / g->den));
    }
    skip_sep();
  }
  return out;
}

/// Smallest precision N = 2^t at which every term of the gate string is representable.
inline std::uint64_t required_precision(const std::string& text, std::size_t n, std::uint64_t maxN = 1u << 10) {
  for (std::uint64_t N = 2; N <= maxN; N *= 2) {
    try {
      parse_gates(text, n, N);
      return N;
    } catch (const Error&) {
    }
  }
  throw Error("gate string \"" + text + "\" is not representable at any supported precision");
}

}  // namespace xpcalc
