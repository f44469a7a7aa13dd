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

// Brute-force reference checks. Everything here works by direct enumeration
// of basis states; none of the Z_N linear algebra is used.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xpcalc/phaseops.hpp"
#include "xpcalc/types.hpp"

namespace xpcalc::oracle {

using Bits = std::vector<std::uint8_t>;

/// Diagonal operator given by its phase exponent (mod 2N) on each basis state.
struct PhaseFn {
  std::uint64_t N = 2;
  std::function<std::uint64_t(const Bits&)> f;
  std::uint64_t operator()(const Bits& e) const { return f(e) % (2 * N); }
};

inline PhaseFn zero_phase(std::uint64_t N) {
  return {N, [](const Bits&) { return std::uint64_t{0}; }};
}

inline PhaseFn compose(const PhaseFn& a, const PhaseFn& b) {
  if (a.N != b.N) throw Error("oracle: mixed precision");
  return {a.N, [a, b](const Bits& e) { return a(e) + b(e); }};
}

/// Phase of XP_N(0|0|z): 2 sum_i z_i e_i.
inline PhaseFn phase_of_z(std::uint64_t N, const ZVec& z) {
  return {N, [N, z](const Bits& e) {
            std::uint64_t s = 0;
            for (std::size_t i = 0; i < z.size(); ++i)
              if (e[i]) s += 2 * z[i];
            return s % (2 * N);
          }};
}

/// Phase function of a CP or RP product, evaluated term by term.
inline PhaseFn phase_of_product(const DiagProduct& d) {
  const bool cp = d.kind == TermKind::CP;
  std::vector<std::pair<std::vector<std::size_t>, std::uint64_t>> terms;
  for (const auto& [v, q] : d.terms) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) s.push_back(i);
    terms.emplace_back(s, q);
  }
  const std::uint64_t ph = d.phase;
  return {d.N, [cp, terms, ph](const Bits& e) {
            std::uint64_t s = ph;
            for (const auto& [idx, q] : terms) {
              unsigned acc = cp ? 1u : 0u;
              for (auto i : idx) {
                if (cp)
                  acc &= e[i];
                else
                  acc ^= e[i];
              }
              if (acc) s += q;
            }
            return s;
          }};
}

/// Phase of an RP product laid out as coefficients over the rows of V, each RP_N(2 z[v], v).
inline PhaseFn phase_of_embedded(std::uint64_t N, const std::vector<Bits>& V, const ZVec& z) {
  return {N, [V, z](const Bits& e) {
            std::uint64_t s = 0;
            for (std::size_t r = 0; r < V.size(); ++r) {
              unsigned par = 0;
              for (std::size_t i = 0; i < e.size(); ++i) par ^= V[r][i] & e[i];
              if (par) s += 2 * z[r];
            }
            return s;
          }};
}

inline bool equal_functions(const PhaseFn& a, const PhaseFn& b, std::size_t n) {
  if (n > 24) throw Error("oracle: too many qubits for exhaustive comparison");
  Bits e(n, 0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (std::size_t i = 0; i < n; ++i) e[i] = (m >> i) & 1u;
    if ((a(e) + 2 * a.N - b(e) % (2 * a.N)) % (2 * a.N) != 0) return false;
  }
  return true;
}

enum class Verdict { Identity, LogicalWithAction, NotLogical };

struct CheckResult {
  Verdict verdict = Verdict::NotLogical;
  std::uint64_t N = 2;
  std::size_t k = 0;
  std::vector<std::uint64_t> table;              // phase on |v>_L, indexed by v as an integer (bit i = v[i])
  std::map<Bits, std::uint64_t> action;          // CP terms on k qubits (v -> q), nonzero only
  std::uint64_t global_phase = 0;                // phase on |0>_L
  std::optional<std::pair<Bits, Bits>> witness;  // two basis strings of one codeword with different phases
};

/// Enumerate every e_uv; decide whether the operator acts as a logical operator.
inline CheckResult check_logical(const std::vector<Bits>& SX, const std::vector<Bits>& LX, std::size_t n,
                                 const PhaseFn& op, std::size_t cap = 22) {
  const std::size_t r = SX.size(), k = LX.size();
  if (r + k > cap) throw Error("oracle: r+k exceeds enumeration cap");
  CheckResult res;
  res.N = op.N;
  res.k = k;
  res.table.assign(std::size_t{1} << k, 0);
  const std::uint64_t M = 2 * op.N;
  for (std::uint64_t vb = 0; vb < (std::uint64_t{1} << k); ++vb) {
    Bits base(n, 0);
    for (std::size_t i = 0; i < k; ++i)
      if ((vb >> i) & 1u)
        for (std::size_t q = 0; q < n; ++q) base[q] ^= LX[i][q];
    std::optional<std::uint64_t> first;
    Bits first_e;
    for (std::uint64_t ub = 0; ub < (std::uint64_t{1} << r); ++ub) {
      Bits e = base;
      for (std::size_t i = 0; i < r; ++i)
        if ((ub >> i) & 1u)
          for (std::size_t q = 0; q < n; ++q) e[q] ^= SX[i][q];
      const std::uint64_t ph = op(e) % M;
      if (!first) {
        first = ph;
        first_e = e;
      } else if (*first != ph) {
        res.verdict = Verdict::NotLogical;
        res.witness = std::make_pair(first_e, e);
        return res;
      }
    }
    res.table[vb] = *first;
  }
  // Moebius inversion: table[v] = sum_{u <= v} q_u
  std::vector<std::int64_t> q(res.table.begin(), res.table.end());
  for (std::size_t i = 0; i < k; ++i)
    for (std::uint64_t m = 0; m < q.size(); ++m)
      if ((m >> i) & 1u) q[m] -= q[m ^ (std::uint64_t{1} << i)];
  res.global_phase = res.table[0];
  bool trivial = true;
  for (std::uint64_t m = 0; m < q.size(); ++m) {
    auto val = static_cast<std::uint64_t>(((q[m] % static_cast<std::int64_t>(M)) + static_cast<std::int64_t>(M)) %
                                          static_cast<std::int64_t>(M));
    if (val == 0) continue;
    trivial = false;
    if (m == 0) continue;
    Bits v(k, 0);
    for (std::size_t i = 0; i < k; ++i) v[i] = (m >> i) & 1u;
    res.action[v] = val;
  }
  res.verdict = trivial ? Verdict::Identity : Verdict::LogicalWithAction;
  return res;
}

/// Does a CP product on k qubits have exactly the phase table recorded in `res`?
inline bool action_matches(const CheckResult& res, const DiagProduct& target) {
  if (res.verdict == Verdict::NotLogical) return false;
  if (target.n != res.k) return false;
  if (target.N != res.N) throw Error("oracle: precision mismatch");
  PhaseFn f = phase_of_product(target);
  Bits v(res.k, 0);
  for (std::uint64_t m = 0; m < res.table.size(); ++m) {
    for (std::size_t i = 0; i < res.k; ++i) v[i] = (m >> i) & 1u;
    if (f(v) != res.table[m] % (2 * res.N)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Dense state vectors

struct DenseState {
  std::size_t n = 0;
  std::vector<std::complex<double>> amp;

  static DenseState basis(const Bits& e, std::size_t cap = 14) {
    if (e.size() > cap) throw Error("oracle: qubit count exceeds dense-state cap");
    DenseState s;
    s.n = e.size();
    s.amp.assign(std::size_t{1} << s.n, 0.0);
    s.amp[index(e)] = 1.0;
    return s;
  }

  static std::size_t index(const Bits& e) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) m |= std::size_t{1} << i;
    return m;
  }

  Bits bits(std::size_t m) const {
    Bits e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = (m >> i) & 1u;
    return e;
  }

  double norm() const {
    double s = 0;
    for (auto a : amp) s += std::norm(a);
    return std::sqrt(s);
  }
};

inline std::complex<double> omega_pow(std::uint64_t p, std::uint64_t N) {
  const double pi = 3.14159265358979323846;
  const double ang = pi * static_cast<double>(p % (2 * N)) / static_cast<double>(N);
  return {std::cos(ang), std::sin(ang)};
}

inline DenseState apply_phase(const DenseState& s, const PhaseFn& f) {
  DenseState o = s;
  for (std::size_t m = 0; m < s.amp.size(); ++m)
    if (s.amp[m] != 0.0) o.amp[m] *= omega_pow(f(s.bits(m)), f.N);
  return o;
}

inline DenseState apply_x(const DenseState& s, const Bits& x) {
  DenseState o = s;
  const std::size_t mx = DenseState::index(x);
  for (std::size_t m = 0; m < s.amp.size(); ++m) o.amp[m ^ mx] = s.amp[m];
  return o;
}

/// Pauli i^ph X^x Z^z (X applied after Z) on a dense state.
inline DenseState apply_pauli(const DenseState& s, unsigned ph, const Bits& x, const Bits& z) {
  DenseState o = s;
  const std::size_t mx = DenseState::index(x);
  const std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t m = 0; m < s.amp.size(); ++m) {
    unsigned par = 0;
    for (std::size_t i = 0; i < s.n; ++i) par ^= z[i] & ((m >> i) & 1u);
    o.amp[m ^ mx] = s.amp[m] * ip[ph % 4] * (par ? -1.0 : 1.0);
  }
  return o;
}

inline DenseState add(const DenseState& a, const DenseState& b, std::complex<double> cb = 1.0) {
  DenseState o = a;
  for (std::size_t m = 0; m < a.amp.size(); ++m) o.amp[m] += cb * b.amp[m];
  return o;
}

/// |<a|b>| / (|a| |b|)
inline double overlap(const DenseState& a, const DenseState& b) {
  std::complex<double> s = 0;
  for (std::size_t m = 0; m < a.amp.size(); ++m) s += std::conj(a.amp[m]) * b.amp[m];
  return std::abs(s) / (a.norm() * b.norm());
}

}  // namespace xpcalc::oracle
