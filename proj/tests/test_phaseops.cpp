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

#include <gtest/gtest.h>

#include "xpcalc/gates.hpp"
#include "xpcalc/oracle.hpp"
#include "xpcalc/phaseops.hpp"

namespace xpcalc {
namespace {

using oracle::Bits;
using oracle::PhaseFn;

BitVec from_mask(std::uint64_t m, std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (m >> i) & 1u;
  return v;
}

std::int64_t ipow(std::int64_t b, std::size_t e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Phase of X^x D X^x on e, i.e. D evaluated at e xor x.
PhaseFn shifted(const PhaseFn& f, const BitVec& x) {
  return {f.N, [f, x](const Bits& e) { return f(xor_bits(e, x)); }};
}

// Over all v with n <= 5 and all binary e: the XOR of the selected bits equals
// sum (-2)^{wt(u)-1} prod u, and 2^{wt(v)-1} prod v equals sum (-1)^{wt(u)-1} xor u.
TEST(Duality, SumProductIdentitiesOverTheIntegers) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::uint64_t vm = 1; vm < (1u << n); ++vm)
      for (std::uint64_t em = 0; em < (1u << n); ++em) {
        std::int64_t s_v = 0, p_v = 1, lhs1 = 0, lhs2 = 0;
        for (std::size_t i = 0; i < n; ++i)
          if ((vm >> i) & 1u) {
            s_v ^= static_cast<std::int64_t>((em >> i) & 1u);
            p_v &= static_cast<std::int64_t>((em >> i) & 1u);
          }
        for (std::uint64_t um = 1; um < (1u << n); ++um) {
          if ((um & vm) != um) continue;
          std::int64_t s_u = 0, p_u = 1;
          std::size_t w = 0;
          for (std::size_t i = 0; i < n; ++i)
            if ((um >> i) & 1u) {
              ++w;
              s_u ^= static_cast<std::int64_t>((em >> i) & 1u);
              p_u &= static_cast<std::int64_t>((em >> i) & 1u);
            }
          lhs1 += ipow(-2, w - 1) * p_u;
          lhs2 += ipow(-1, w - 1) * s_u;
        }
        std::size_t wv = weight(from_mask(vm, n));
        ASSERT_EQ(s_v, lhs1);
        ASSERT_EQ(ipow(2, wv - 1) * p_v, lhs2);
      }
}

// Rows x_i of a binary matrix: the same identities hold column by column.
TEST(Duality, SumProductIdentitiesForBinaryMatrices) {
  const std::vector<BitVec> L = {parse_bits("1101"), parse_bits("0111"), parse_bits("1011")};
  for (std::uint64_t vm = 1; vm < 8; ++vm) {
    std::vector<std::int64_t> s(4, 0), acc(4, 0);
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t i = 0; i < 3; ++i)
        if ((vm >> i) & 1u) s[c] ^= L[i][c];
    for (std::uint64_t um = 1; um < 8; ++um) {
      if ((um & vm) != um) continue;
      const std::size_t w = weight(from_mask(um, 3));
      for (std::size_t c = 0; c < 4; ++c) {
        std::int64_t p = 1;
        for (std::size_t i = 0; i < 3; ++i)
          if ((um >> i) & 1u) p &= L[i][c];
        acc[c] += ipow(-2, w - 1) * p;
      }
    }
    EXPECT_EQ(s, acc);
  }
}

// RP_N(q,v) = A_+ + w^q A_- with A the parity operator on v: phase q exactly on odd overlap.
TEST(PhaseRotation, ProjectorFormAndAction) {
  for (std::uint64_t N : {2u, 4u, 8u})
    for (std::size_t n = 1; n <= 5; ++n)
      for (std::uint64_t vm = 1; vm < (1u << n); ++vm)
        for (std::uint64_t q = 0; q < 2 * N; ++q) {
          const BitVec v = from_mask(vm, n);
          for (std::uint64_t em = 0; em < (1u << n); ++em) {
            const BitVec e = from_mask(em, n);
            const std::uint64_t expect = dot2(e, v) ? q : 0;
            ASSERT_EQ(rp_phase(RpOp{N, q, v}, e), expect);
          }
        }
}

TEST(PhaseRotation, DualityWithControlledPhase) {
  for (std::uint64_t N : {2u, 4u, 8u})
    for (std::size_t n = 1; n <= 5; ++n)
      for (std::uint64_t vm = 1; vm < (1u << n); ++vm) {
        const BitVec v = from_mask(vm, n);
        const std::size_t w = weight(v);
        DiagProduct rp(N, n, TermKind::RP);
        rp.add(v, 2);
        ASSERT_TRUE(oracle::equal_functions(oracle::phase_of_product(rp),
                                            oracle::phase_of_product(rp_to_cp(RpOp{N, 2, v})), n));
        // explicit product of CP gates from the identity
        DiagProduct cps(N, n, TermKind::CP);
        for (std::uint64_t um = 1; um < (1u << n); ++um)
          if ((um & vm) == um) cps.add(from_mask(um, n), 2 * ipow(-2, weight(from_mask(um, n)) - 1));
        ASSERT_TRUE(oracle::equal_functions(oracle::phase_of_product(rp), oracle::phase_of_product(cps), n));

        if (w - 1 < 8 && (std::uint64_t{1} << w) % (2 * N) != 0) {
          const std::uint64_t q = std::uint64_t{1} << w;
          DiagProduct cp(N, n, TermKind::CP);
          cp.add(v, static_cast<std::int64_t>(q));
          DiagProduct rps(N, n, TermKind::RP);
          for (std::uint64_t um = 1; um < (1u << n); ++um)
            if ((um & vm) == um) rps.add(from_mask(um, n), 2 * ipow(-1, weight(from_mask(um, n)) - 1));
          ASSERT_TRUE(oracle::equal_functions(oracle::phase_of_product(cp), oracle::phase_of_product(rps), n));
          ASSERT_TRUE(oracle::equal_functions(oracle::phase_of_product(cp),
                                              oracle::phase_of_product(cp_to_rp(CpOp{N, q, v})), n));
        }
      }
}

TEST(PhaseRotation, CommutationWithX) {
  for (std::uint64_t N : {2u, 4u, 8u})
    for (std::size_t n = 1; n <= 5; ++n)
      for (std::uint64_t vm = 1; vm < (1u << n); ++vm)
        for (std::uint64_t q : {1u, 2u, 3u})
          for (std::size_t i = 0; i < n; ++i) {
            const BitVec v = from_mask(vm, n);
            DiagProduct rp(N, n, TermKind::RP);
            rp.add(v, static_cast<std::int64_t>(q));
            BitVec x(n, 0);
            x[i] = 1;
            // X_i RP(q,v) X_i is w^q RP(-q,v) when v[i] = 1 and RP(q,v) otherwise
            DiagProduct expect(N, n, TermKind::RP);
            if (v[i]) {
              expect.add(v, -static_cast<std::int64_t>(q));
              expect.add_phase(static_cast<std::int64_t>(q));
            } else {
              expect.add(v, static_cast<std::int64_t>(q));
            }
            auto lhs = shifted(oracle::phase_of_product(rp), x);
            ASSERT_TRUE(oracle::equal_functions(lhs, oracle::phase_of_product(expect), n));
            ASSERT_TRUE(oracle::equal_functions(lhs, oracle::phase_of_product(conjugate_by_xstring(rp, x)), n));
          }
}

TEST(ControlledPhase, CommutationWithX) {
  for (std::uint64_t N : {2u, 4u, 8u})
    for (std::size_t n = 1; n <= 5; ++n)
      for (std::uint64_t vm = 1; vm < (1u << n); ++vm)
        for (std::uint64_t q : {1u, 2u, 5u})
          for (std::uint64_t xm = 0; xm < (1u << n); ++xm) {
            const BitVec v = from_mask(vm, n), x = from_mask(xm, n);
            DiagProduct cp(N, n, TermKind::CP);
            cp.add(v, static_cast<std::int64_t>(q));
            auto lhs = shifted(oracle::phase_of_product(cp), x);
            ASSERT_TRUE(oracle::equal_functions(lhs, oracle::phase_of_product(conjugate_by_xstring(cp, x)), n));
            if (weight(x) == 1) {
              const std::size_t i = support(x)[0];
              DiagProduct expect(N, n, TermKind::CP);
              if (v[i]) {
                expect.add(v, -static_cast<std::int64_t>(q));
                expect.add(xor_bits(v, x), static_cast<std::int64_t>(q));
              } else {
                expect.add(v, static_cast<std::int64_t>(q));
              }
              ASSERT_TRUE(oracle::equal_functions(lhs, oracle::phase_of_product(expect), n));
            }
          }
}

TEST(ControlledPhase, ConjugatingCSByX1) {
  // CS X_1 CS^{-1} = X_1 (X_1 CS X_1) CS^{-1}
  const DiagProduct cs = parse_gates("CS[0,1]", 2, 8);
  DiagProduct d = conjugate_by_xstring(cs, parse_bits("01"));
  d.multiply(cs.inverse());
  EXPECT_EQ(format_gates(d), "S[0] CZ[0,1]");
}

TEST(ControlledPhase, ConjugatingCCZByXXX) {
  const DiagProduct ccz = parse_gates("CCZ[0,1,2]", 3, 8);
  const DiagProduct d = conjugate_by_xstring(ccz, parse_bits("111"));
  EXPECT_EQ(format_gates(d), "phase(8) Z[0] Z[1] Z[2] CZ[0,1] CZ[0,2] CZ[1,2] CCZ[0,1,2]");
}

TEST(XpOps, FormatMatchesNotation) {
  const XpOp op = make_xp(4, 0, parse_bits("000000"), parse_digits("113133", 4));
  EXPECT_EQ(format_xp(op), "XP_4(0|000000|113133)");
}

TEST(XpOps, MultiplicationAndInverse) {
  const XpOp a = make_xp(4, 1, parse_bits("101"), parse_digits("123", 4));
  const XpOp b = make_xp(4, 3, parse_bits("011"), parse_digits("302", 4));
  for (std::uint64_t m = 0; m < 8; ++m) {
    const BitVec e = from_mask(m, 3);
    auto [pb, eb] = xp_apply(b, e);
    auto [pa, ea] = xp_apply(a, eb);
    auto [pab, eab] = xp_apply(xp_mul(a, b), e);
    EXPECT_EQ(eab, ea);
    EXPECT_EQ(pab % 8, (pa + pb) % 8);
    auto [pi, ei] = xp_apply(xp_inverse(a), ea);
    EXPECT_EQ(ei, eb);
    EXPECT_EQ((pa + pi) % 8, 0u);
  }
}

TEST(XpOps, CliffordLevel) {
  EXPECT_EQ(clifford_level(parse_digits("04040404", 8), 8), 1u);
  EXPECT_EQ(clifford_level(parse_digits("02060602", 8), 8), 2u);
  EXPECT_EQ(clifford_level(parse_digits("13313113", 8), 8), 3u);
  EXPECT_EQ(clifford_level(parse_digits("0000", 8), 8), 0u);
}

TEST(XpOps, DiagonalCommutatorOfHypercubeCheck) {
  const auto c = xp_diag_commutator(parse_bits("11111111"), parse_digits("02060602", 8), 8);
  EXPECT_EQ(format_digits(c.z), "04040404");
  EXPECT_EQ((c.p / 2) % 8, 0u);
}

TEST(Gates, ParseAndFormatRoundTrip) {
  for (std::string s : {"I", "Z[0]", "S[1]", "S3[0] T[1]", "CZ[0,1]", "T7[1] CS[0,2]", "CCZ[0,1,2]",
                        "phase(4) Z[0]"}) {
    const auto d = parse_gates(s, 3, 8);
    EXPECT_EQ(format_gates(d), s);
  }
}

TEST(Gates, RpAndCpCoefficients) {
  const auto d = parse_gates("RP(2)[0,1]", 2, 4);
  EXPECT_EQ(format_gates(d), "S[0] S[1] CZ[0,1]");
  EXPECT_EQ(format_gates(parse_gates("CP(2)[0,1]", 2, 4)), "CS[0,1]");
}

TEST(Gates, Errors) {
  EXPECT_THROW(parse_gates("Q[0]", 2, 4), Error);
  EXPECT_THROW(parse_gates("S[3]", 2, 4), Error);
  EXPECT_THROW(parse_gates("CZ[0]", 2, 4), Error);
  EXPECT_THROW(parse_gates("T[0]", 2, 2), Error);
  EXPECT_THROW(parse_gates("S[0,0]", 2, 4), Error);
}

TEST(Gates, RequiredPrecision) {
  EXPECT_EQ(required_precision("CZ[0,1]", 2), 2u);
  EXPECT_EQ(required_precision("S[0]", 2), 2u);
  EXPECT_EQ(required_precision("T[0]", 2), 4u);
}

TEST(DiagProductOps, ToCpToRpRoundTrip) {
  for (std::string s : {"S[0] CZ[0,1]", "CCZ[0,1,2]", "T[1] CS[0,2]"}) {
    const auto d = parse_gates(s, 3, 8);
    EXPECT_EQ(to_cp(to_rp(d)), d);
  }
}

TEST(DiagProductOps, LiftPrecisionKeepsPhases) {
  const auto d = parse_gates("S[0] CZ[0,1]", 2, 4);
  const auto l = lift_precision(d, 8);
  EXPECT_EQ(format_gates(l), format_gates(d));
}

}  // namespace
}  // namespace xpcalc
