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

#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "xpcalc/gates.hpp"
#include "xpcalc/logic.hpp"
#include "xpcalc/oracle.hpp"

namespace xpcalc {
namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(XPCALC_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

oracle::CheckResult check(const CssCode& c, std::uint64_t N, const ZVec& z) {
  return oracle::check_logical(c.SX, c.LX, c.n, oracle::phase_of_z(N, z));
}

// Random CSS code with independent rows.
CssCode random_code(std::mt19937& rng, std::size_t n, std::size_t r, std::size_t k) {
  std::bernoulli_distribution bit(0.5);
  for (;;) {
    BitMatrix rows;
    for (std::size_t i = 0; i < r + k; ++i) {
      BitVec v(n);
      for (auto& b : v) b = bit(rng);
      rows.push_back(v);
    }
    if (rank2(rows, n) != r + k) continue;
    BitMatrix SX(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(r));
    BitMatrix LX(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end());
    return build_code(SX, LX);
  }
}

std::vector<ZVec> all_vectors(std::size_t n, std::uint64_t N) {
  std::vector<ZVec> out;
  ZVec z(n, 0);
  for (;;) {
    out.push_back(z);
    std::size_t i = 0;
    while (i < n && ++z[i] == N) z[i++] = 0;
    if (i == n) break;
  }
  return out;
}

std::set<ZVec> span_of(const ZnMatrix& M) {
  std::set<ZVec> out;
  for (const auto& z : all_vectors(M.ncols, M.N))
    if (in_span(M, z)) out.insert(z);
  return out;
}

TEST(Identities, Hypercube) {
  const CssCode c = parse_code(slurp("hypercube.code"));
  const auto t0 = std::chrono::steady_clock::now();
  const auto ids = logical_identities(c, 3);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
  ZnMatrix expect(8, 8, {parse_digits("22222222", 8), parse_digits("04040404", 8), parse_digits("00440044", 8),
                         parse_digits("00004444", 8)});
  EXPECT_EQ(howell(ids.K_M).rows, howell(expect).rows);
  for (const auto& z : ids.K_M.rows) EXPECT_EQ(check(c, 8, z).verdict, oracle::Verdict::Identity);
}

TEST(Identities, MatchBruteForceOnSmallCodes) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    const CssCode c = random_code(rng, 4, 1 + trial % 2, 1);
    const auto ids = logical_identities(c, 2);
    std::set<ZVec> brute;
    for (const auto& z : all_vectors(c.n, 4))
      if (check(c, 4, z).verdict == oracle::Verdict::Identity) brute.insert(z);
    EXPECT_EQ(span_of(ids.K_M), brute);
  }
}

TEST(Search, HypercubeTargets) {
  const CssCode c = parse_code(slurp("hypercube.code"));
  auto op = search_by_action(c, 3, parse_gates("CZ[1,2]", 3, 8));
  ASSERT_TRUE(op);
  EXPECT_EQ(format_digits(op->z), "02060602");
  EXPECT_TRUE(oracle::action_matches(check(c, 8, op->z), parse_gates("CZ[1,2]", 3, 8)));
  op = search_by_action(c, 3, parse_gates("CCZ[0,1,2]", 3, 8));
  ASSERT_TRUE(op);
  EXPECT_EQ(format_digits(op->z), "13313113");
  EXPECT_FALSE(search_by_action(c, 3, parse_gates("S[0]", 3, 8)));
}

TEST(Search, FourTwoTwoTransversalCZ) {
  const CssCode c = parse_code(slurp("422.code"));
  const auto target = parse_gates("CZ[0,1]", 2, 4);
  const auto op = search_by_action(c, 2, target);
  ASSERT_TRUE(op);
  EXPECT_TRUE(oracle::action_matches(check(c, 4, op->z), target));
}

TEST(Search, RejectsBadTargets) {
  const CssCode c = parse_code(slurp("422.code"));
  EXPECT_THROW(search_by_action(c, 2, parse_gates("CZ[0,1]", 2, 8)), Error);
  EXPECT_THROW(search_by_action(c, 2, parse_gates("CZ[0,1]", 3, 4)), Error);
  EXPECT_THROW(search_by_action(c, 2, parse_gates("phase(2) CZ[0,1]", 2, 4)), Error);
}

TEST(Search, AgreesWithExhaustiveEnumeration) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    const CssCode c = random_code(rng, 4, 1, 2);
    std::set<std::vector<std::uint64_t>> reachable;
    for (const auto& z : all_vectors(c.n, 4)) {
      const auto r = check(c, 4, z);
      if (r.verdict != oracle::Verdict::NotLogical && r.global_phase == 0) reachable.insert(r.table);
    }
    // every CP product on two qubits at N = 4 fixing |00>
    for (std::uint64_t a = 0; a < 8; a += 2)
      for (std::uint64_t b = 0; b < 8; b += 2)
        for (std::uint64_t q = 0; q < 8; q += 4) {
          DiagProduct target(4, 2, TermKind::CP);
          target.add(BitVec{1, 0}, static_cast<std::int64_t>(a));
          target.add(BitVec{0, 1}, static_cast<std::int64_t>(b));
          target.add(BitVec{1, 1}, static_cast<std::int64_t>(q));
          const std::vector<std::uint64_t> table{0, a, b, (a + b + q) % 8};
          const auto op = search_by_action(c, 2, target);
          EXPECT_EQ(op.has_value(), reachable.count(table) == 1) << format_gates(target);
          if (op) {
            EXPECT_TRUE(oracle::action_matches(check(c, 4, op->z), target));
          }
        }
  }
}

TEST(Test, HypercubeIntermediateValues) {
  const CssCode c = parse_code(slurp("hypercube.code"));
  const auto ids = logical_identities(c, 3);
  const auto res = test_logical(c, ids, parse_digits("02060602", 8));
  EXPECT_TRUE(res.logical);
  ASSERT_EQ(res.steps.size(), 1u);
  EXPECT_EQ(res.steps[0].xz, 0u);
  EXPECT_EQ(format_digits(res.steps[0].minus_2xz), "04040404");
  EXPECT_TRUE(in_span(ids.K_M, res.steps[0].minus_2xz));
  EXPECT_TRUE(is_logical(c, 3, parse_digits("02060602", 8)));
  EXPECT_FALSE(is_logical(c, 3, parse_digits("10000000", 8)));
}

TEST(Test, AgreesWithOracleOnRandomVectors) {
  std::mt19937 rng(99);
  int count = 0, logical = 0;
  while (count < 1000) {
    const std::size_t n = 4 + rng() % 5;
    const std::size_t r = 1 + rng() % 3, k = 1 + rng() % 3;
    if (r + k > n || r + k > 8) continue;
    const CssCode c = random_code(rng, n, r, k);
    const unsigned t = 1 + rng() % 3;
    const std::uint64_t N = precision(t);
    const auto gens = logical_generators(c, t);
    const auto ids = lower_identities(c, t);
    for (int j = 0; j < 20; ++j, ++count) {
      ZVec z(n, 0);
      if (j % 2 == 0) {
        for (const auto& row : gens.K_L.rows) {
          const std::uint64_t a = rng() % N;
          for (std::size_t i = 0; i < n; ++i) z[i] = (z[i] + a * row[i]) % N;
        }
        if (j % 4 == 0) z[rng() % n] = (z[rng() % n] + 1) % N;
      } else {
        for (auto& x : z) x = rng() % N;
      }
      const bool alg = is_logical(c, ids, z);
      const bool orc = check(c, N, z).verdict != oracle::Verdict::NotLogical;
      ASSERT_EQ(alg, orc) << serialize_code(c) << " z=" << format_digits(z) << " N=" << N;
      logical += alg;
    }
  }
  EXPECT_GT(logical, 100);
}

TEST(Commutant, Hypercube) {
  const CssCode c = parse_code(slurp("hypercube.code"));
  const auto ids = logical_identities(c, 3);
  const auto C = commutant(ids.K_M, c.SX[0], 8);
  for (const auto& z : C.rows) {
    const auto res = test_logical(c, ids, z);
    EXPECT_TRUE(res.logical) << format_digits(z);
  }
}

TEST(Generators, HypercubeActionTable) {
  const CssCode c = parse_code(slurp("hypercube.code"));
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = logical_generators(c, 3);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);
  std::vector<std::string> actions;
  std::vector<unsigned> levels;
  for (const auto& r : g.rows)
    if (!r.identity) {
      actions.push_back(format_gates(r.action));
      levels.push_back(r.level);
    }
  EXPECT_EQ(actions, (std::vector<std::string>{"Z[0]", "Z[1]", "Z[2]", "CZ[0,1]", "CZ[0,2]", "CZ[1,2]",
                                               "CCZ[0,1,2]"}));
  EXPECT_EQ(levels, (std::vector<unsigned>{1, 1, 1, 2, 2, 2, 3}));
  EXPECT_EQ(format_gates(logical_action(c, parse_digits("13313113", 8), 8)), "CCZ[0,1,2]");
  for (const auto& r : g.rows) EXPECT_TRUE(oracle::action_matches(check(c, 8, r.z), r.action));
}

TEST(Generators, SpanMatchesBruteForce) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    const CssCode c = random_code(rng, 4 + trial % 2, 1 + trial % 2, 1 + (trial / 2) % 2);
    const auto g = logical_generators(c, 2);
    std::set<ZVec> brute;
    for (const auto& z : all_vectors(c.n, 4))
      if (check(c, 4, z).verdict != oracle::Verdict::NotLogical) brute.insert(z);
    EXPECT_EQ(span_of(g.K_L), brute);
    for (const auto& r : g.rows) EXPECT_TRUE(oracle::action_matches(check(c, 4, r.z), r.action));
  }
}

TEST(Action, RejectsNonLogical) {
  const CssCode c = parse_code(slurp("hypercube.code"));
  EXPECT_THROW(logical_action(c, parse_digits("10000000", 8), 8), Error);
}

TEST(Action, FourTwoTwoExamples) {
  const CssCode c = parse_code(slurp("422.code"));
  EXPECT_EQ(format_gates(logical_action(c, parse_digits("3113", 4), 4)), "CZ[0,1]");
}

}  // namespace
}  // namespace xpcalc
