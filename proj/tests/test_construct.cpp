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

#include <set>

#include "xpcalc/codes.hpp"
#include "xpcalc/construct.hpp"
#include "xpcalc/gates.hpp"
#include "xpcalc/oracle.hpp"

namespace xpcalc {
namespace {

bool oracle_ok(const CssCode& c, const DiagProduct& impl, const DiagProduct& target) {
  const auto res = oracle::check_logical(c.SX, c.LX, c.n, oracle::phase_of_product(impl));
  return oracle::action_matches(res, target);
}

std::set<std::vector<std::size_t>> supports_with(const DiagProduct& d, std::uint64_t q, std::size_t w) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& [v, c] : d.terms)
    if (c == q && weight(v) == w) out.insert(support(v));
  return out;
}

TEST(Toric, Shape) {
  for (std::size_t k : {1u, 2u, 3u})
    for (std::size_t d : {2u, 3u}) {
      const CssCode T = toric_code(k, d);
      std::size_t cells = 1;
      for (std::size_t i = 0; i < k; ++i) cells *= d;
      EXPECT_EQ(T.n, k * cells);
      EXPECT_EQ(T.k(), k);
      BitVec used(T.n, 0);
      for (const auto& z : T.LZ) {
        EXPECT_EQ(weight(z), d);
        for (std::size_t i = 0; i < T.n; ++i) {
          EXPECT_FALSE(z[i] && used[i]);
          used[i] |= z[i];
        }
      }
    }
}

TEST(Toric, Distances) {
  for (std::size_t d : {2u, 3u}) {
    const auto dist = code_distances(toric_code(2, d));
    EXPECT_EQ(*dist.dX.value, d);
    EXPECT_EQ(*dist.dZ.value, d);
  }
}

TEST(Toric, RejectsBadArguments) {
  EXPECT_THROW(toric_code(0, 3), Error);
  EXPECT_THROW(toric_code(2, 1), Error);
}

TEST(Canonical, CrossCZOnDisjointLogicals) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const CssCode T = toric_code(2, d);
    const auto target = parse_gates("CZ[0,1]", 2, 4);
    const auto c = canonical_cp_op(T, target, 2);
    std::set<std::vector<std::size_t>> expect;
    for (auto i : support(T.LZ[0]))
      for (auto j : support(T.LZ[1])) expect.insert({std::min(i, j), std::max(i, j)});
    EXPECT_EQ(c.cp_terms.terms.size(), d * d);
    EXPECT_EQ(supports_with(c.cp_terms, 4, 2), expect);
    EXPECT_EQ(c.cp_terms.phase, 0u);
    EXPECT_LE(c.max_support, 2u);
    ASSERT_LE(T.r() + T.k(), 22u);
    EXPECT_TRUE(oracle_ok(T, c.cp_terms, target));
    EXPECT_TRUE(oracle_ok(T, c.rp_terms, target));
  }
}

TEST(Canonical, LogicalTClosedForm) {
  const CssCode T = toric_code(2, 3);
  const auto c = canonical_phase_op(T, 0, 3);
  const auto z0 = support(T.LZ[0]);
  std::set<std::vector<std::size_t>> singles, pairs, triples;
  for (std::size_t a = 0; a < z0.size(); ++a) {
    singles.insert({z0[a]});
    for (std::size_t b = a + 1; b < z0.size(); ++b) {
      pairs.insert({z0[a], z0[b]});
      for (std::size_t e = b + 1; e < z0.size(); ++e) triples.insert({z0[a], z0[b], z0[e]});
    }
  }
  EXPECT_EQ(supports_with(c.cp_terms, 2, 1), singles);    // T
  EXPECT_EQ(supports_with(c.cp_terms, 12, 2), pairs);     // CS^{-1}
  EXPECT_EQ(supports_with(c.cp_terms, 8, 3), triples);    // CCZ
  EXPECT_EQ(c.cp_terms.terms.size(), singles.size() + pairs.size() + triples.size());
  EXPECT_TRUE(oracle_ok(T, c.cp_terms, c.target));
  EXPECT_EQ(format_gates(c.target), "T[0]");
}

TEST(Canonical, LogicalSClosedForm) {
  const CssCode T = toric_code(2, 3);
  const auto c = canonical_phase_op(T, 1, 2);
  EXPECT_EQ(supports_with(c.cp_terms, 2, 1).size(), 3u);  // S
  EXPECT_EQ(supports_with(c.cp_terms, 4, 2).size(), 3u);  // CZ
  EXPECT_TRUE(oracle_ok(T, c.cp_terms, c.target));
}

TEST(Canonical, ControlledS) {
  const CssCode T = toric_code(2, 2);
  const auto target = parse_gates("CS[0,1]", 2, 8);
  const auto c = canonical_cp_op(T, target, 3);
  EXPECT_EQ(supports_with(c.cp_terms, 4, 2).size(), 4u);  // CS across the two logicals
  EXPECT_EQ(supports_with(c.cp_terms, 8, 3).size(), 4u);  // CCZ with two qubits on one side
  EXPECT_EQ(c.cp_terms.terms.size(), 8u);
  EXPECT_TRUE(oracle_ok(T, c.cp_terms, target));
}

TEST(Canonical, TermSupportsStayOnLogicals) {
  const CssCode T = toric_code(3, 2);
  const auto target = parse_gates("CCZ[0,1,2] S[1]", 3, 8);
  const auto c = canonical_cp_op(T, target, 3);
  BitVec allowed(T.n, 0);
  for (const auto& z : T.LZ) allowed = xor_bits(allowed, z);
  for (const auto& [v, q] : c.rp_terms.terms) {
    (void)q;
    EXPECT_TRUE(preceq(v, allowed));
    EXPECT_LE(weight(v), 3u);
  }
  EXPECT_TRUE(oracle_ok(T, c.cp_terms, target));
}

TEST(Canonical, RejectsMismatchedTarget) {
  const CssCode T = toric_code(2, 2);
  EXPECT_THROW(canonical_cp_op(T, parse_gates("CZ[0,1]", 2, 8), 2), Error);
  EXPECT_THROW(canonical_cp_op(T, parse_gates("CZ[0,1]", 3, 4), 2), Error);
  EXPECT_THROW(canonical_phase_op(T, 2, 2), Error);
}

struct Row {
  const char* gate;
  std::size_t k;
  std::uint64_t N;
  std::size_t d, n, dX, dZ;
};

class Construct : public ::testing::TestWithParam<Row> {};

TEST_P(Construct, ReproducesParameters) {
  const Row r = GetParam();
  const auto target = parse_gates(r.gate, r.k, r.N);
  const auto cc = construct_code(target, r.d);
  EXPECT_EQ(cc.code.n, r.n);
  const auto dist = code_distances(cc.code);
  ASSERT_TRUE(dist.dX.value && dist.dZ.value);
  EXPECT_EQ(*dist.dX.value, r.dX);
  EXPECT_EQ(*dist.dZ.value, r.dZ);
  EXPECT_EQ(cc.exponents.size(), cc.code.n);
  ASSERT_LE(cc.code.r() + cc.code.k(), 22u);
  const auto res = oracle::check_logical(cc.code.SX, cc.code.LX, cc.code.n, oracle::phase_of_z(r.N, cc.exponents));
  EXPECT_TRUE(oracle::action_matches(res, target));
}

INSTANTIATE_TEST_SUITE_P(SmallDistances, Construct,
                         ::testing::Values(Row{"CZ[0,1]", 2, 4, 2, 4, 2, 2}, Row{"CZ[0,1]", 2, 4, 3, 15, 4, 3},
                                           Row{"CCZ[0,1,2]", 3, 8, 2, 8, 4, 2},
                                           Row{"CCZ[0,1,2]", 3, 8, 3, 63, 16, 3},
                                           Row{"CS[0,1]", 2, 8, 2, 12, 6, 2}, Row{"CS[0,1]", 2, 8, 3, 33, 14, 2},
                                           Row{"S[0]", 1, 4, 3, 6, 3, 2}, Row{"S[0]", 1, 4, 4, 6, 3, 2},
                                           Row{"CZ[0,1]", 2, 4, 4, 16, 4, 4}, Row{"T[0]", 1, 8, 4, 14, 7, 2}));

TEST(ConstructCode, GlobalPhaseIsDividedOut) {
  const auto cc = construct_code(parse_gates("phase(4) CZ[0,1]", 2, 4), 2);
  EXPECT_EQ(cc.phase, 4u);
  EXPECT_EQ(format_gates(cc.target), "CZ[0,1]");
}

TEST(ConstructCode, SupportsLiveOnToricQubits) {
  const auto cc = construct_code(parse_gates("CZ[0,1]", 2, 4), 3);
  ASSERT_EQ(cc.supports.size(), cc.code.n);
  for (const auto& s : cc.supports) {
    EXPECT_EQ(s.size(), toric_code(2, 3).n);
    EXPECT_GE(weight(s), 1u);
    EXPECT_LE(weight(s), 2u);
  }
}

}  // namespace
}  // namespace xpcalc
