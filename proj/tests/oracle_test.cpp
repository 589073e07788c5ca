// Copyright 2026 The Rescue Games Authors. All rights reserved.
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

#include <random>

#include "rescue/error.hpp"
#include "rescue/oracle.hpp"
#include "test_util.hpp"

namespace rescue {
namespace {

using testing::example_tree;

MatrixGame matrix(std::vector<std::vector<Rational>> rows) {
  MatrixGame m;
  for (std::size_t r = 0; r < rows.size(); ++r) m.row_labels.push_back("r" + std::to_string(r));
  for (std::size_t c = 0; c < rows.front().size(); ++c) m.col_labels.push_back("c" + std::to_string(c));
  m.payoffs = std::move(rows);
  return m;
}

Game rescue_game(std::vector<Rational> p, std::size_t k) {
  Game g;
  g.ids = testing::numbered_ids(p.size());
  g.k = k;
  g.spec = Rescue{std::move(p)};
  return g;
}

// Both mixes are distributions and certify the value exactly.
void expect_certified(const MatrixGame& m, const OracleSolution& s) {
  Rational row_total = 0, col_total = 0;
  for (const Rational& w : s.row_mix) {
    EXPECT_GE(w, Rational(0));
    row_total += w;
  }
  for (const Rational& w : s.col_mix) {
    EXPECT_GE(w, Rational(0));
    col_total += w;
  }
  EXPECT_EQ(row_total, Rational(1));
  EXPECT_EQ(col_total, Rational(1));
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Rational v = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) v += s.row_mix[r] * m.payoffs[r][c];
    EXPECT_GE(v, s.value);
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational v = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) v += s.col_mix[c] * m.payoffs[r][c];
    EXPECT_LE(v, s.value);
  }
}

TEST(BuildMatrixTest, Unstructured) {
  const MatrixGame m = build_matrix_unstructured(rescue_game({Rational(1, 2), Rational(3, 4)}, 1));
  const std::vector<std::vector<Rational>> expected{{Rational(1, 2), Rational(3, 8)},
                                                    {Rational(3, 8), Rational(3, 4)}};
  EXPECT_EQ(m.payoffs, expected);
  EXPECT_EQ(m.row_labels, (std::vector<std::string>{"L1,L2", "L2,L1"}));
  EXPECT_EQ(m.col_labels, (std::vector<std::string>{"{L1}", "{L2}"}));

  const MatrixGame three = build_matrix_unstructured(rescue_game({Rational(1, 2), Rational(1, 3), Rational(1, 4)}, 2));
  EXPECT_EQ(three.rows(), 6u);
  EXPECT_EQ(three.cols(), 3u);

  EXPECT_THROW(build_matrix_unstructured(rescue_game({Rational(1, 2)}, 1)), Error);

  Limits small;
  small.matrix_entries = 5;
  try {
    build_matrix_unstructured(rescue_game({Rational(1, 2), Rational(1, 3), Rational(1, 4)}, 1), small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
}

TEST(BuildMatrixTest, UnstructuredMatchesDirectPayoffs) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t k = 1 + static_cast<std::size_t>(trial) % (n - 1);
    Game g{testing::numbered_ids(n), k, testing::random_family(rng, n, trial)};
    const MatrixGame m = build_matrix_unstructured(g);
    const auto perms = testing::all_permutations(n);
    const auto cols = testing::masks_of_size(n, k);
    ASSERT_EQ(m.rows(), perms.size());
    ASSERT_EQ(m.cols(), cols.size());
    for (std::size_t r = 0; r < perms.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        EXPECT_EQ(m.payoffs[r][c], testing::direct_order_payoff(g.spec, cols[c], perms[r]));
  }
}

TEST(BuildMatrixTest, Tree) {
  const Tree t(example_tree());
  const MatrixGame m = build_matrix_tree(t);
  EXPECT_EQ(m.rows(), 8u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.col_labels, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(build_matrix_tree(t, true).cols(), 5u);
  // Row O,D,A,B,C against B.
  const auto row = std::find(m.row_labels.begin(), m.row_labels.end(), "O,D,A,B,C");
  ASSERT_NE(row, m.row_labels.end());
  EXPECT_EQ(m.payoffs[static_cast<std::size_t>(row - m.row_labels.begin())][1], Rational(1, 15));

  RootedTree path;
  path.root = "O";
  path.vertices = {{"O", Rational(1, 2)}, {"a", Rational(1, 3)}};
  path.edges = {{"O", "a"}};
  const MatrixGame one = build_matrix_tree(Tree(path));
  EXPECT_EQ(one.rows(), 1u);
  EXPECT_EQ(one.cols(), 1u);

  Limits small;
  small.expanding_searches = 7;
  small.matrix_entries = 1000;
  EXPECT_THROW(build_matrix_tree(t, false, small), Error);
  small.expanding_searches = 1000;
  small.matrix_entries = 23;
  EXPECT_THROW(build_matrix_tree(t, false, small), Error);
}

TEST(SolveMatrixTest, Examples) {
  const MatrixGame two = matrix({{Rational(1, 2), Rational(3, 8)}, {Rational(3, 8), Rational(3, 4)}});
  const OracleSolution s = solve_matrix(two, Rational(1, 1000000000));
  EXPECT_EQ(s.value, Rational(15, 32));
  EXPECT_EQ(s.epsilon, Rational(0));
  expect_certified(two, s);
  EXPECT_EQ(s.col_mix, (std::vector<Rational>{Rational(3, 4), Rational(1, 4)}));

  const MatrixGame saddle = matrix({{3, 5}, {1, 2}});
  const OracleSolution p = solve_matrix(saddle, Rational(1, 1000));
  EXPECT_EQ(p.value, Rational(3));
  EXPECT_EQ(p.row_mix, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(p.col_mix, (std::vector<Rational>{1, 0}));

  EXPECT_EQ(solve_matrix(matrix({{Rational(-7, 3)}}), Rational(1, 10)).value, Rational(-7, 3));
  EXPECT_THROW(solve_matrix(two, Rational(0)), Error);
}

TEST(SolveMatrixTest, BudgetExceeded) {
  const MatrixGame m = matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  try {
    solve_matrix(m, Rational(1, 100), SolveBudget{1, 1000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
    EXPECT_NE(std::string(e.what()).find("value lies in"), std::string::npos);
  }
}

TEST(SolveMatrixTest, RandomMatricesAreCertified) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + testing::pick(rng, 0, 8);
    const std::size_t cols = 1 + testing::pick(rng, 0, 6);
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (auto& row : a)
      for (auto& v : row) v = Rational(testing::pick(rng, -9, 9), testing::pick(rng, 1, 4));
    const MatrixGame m = matrix(a);
    const OracleSolution s = solve_matrix(m, Rational(1, 1000000));
    expect_certified(m, s);
    EXPECT_EQ(s.best_row_payoff, s.value);
    EXPECT_EQ(s.best_col_payoff, s.value);
  }
}

TEST(VerifyTest, ExampleTree) {
  const Tree t(example_tree());
  const VerifyReport r = verify(t, solve_tree(t), Rational(1, 1000000000));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.oracle_value, Rational(14, 177));
  EXPECT_EQ(*r.closed_form_value, Rational(14, 177));
  EXPECT_TRUE(r.failures.empty());
  EXPECT_TRUE(verify(t, solve_tree(t), Rational(1, 1000000000), true).pass);
}

TEST(VerifyTest, RandomRescuePairs) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const Game g = rescue_game(testing::random_probabilities(rng, 4), 2);
    const VerifyReport r = verify(g, solve_closed_form(g.spec, g.k), Rational(1, 1000000000));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.rows, 24u);
    EXPECT_EQ(r.cols, 6u);
  }
}

TEST(VerifyTest, PerturbedHiderFails) {
  const Tree t(example_tree());
  TreeSolution bad = solve_tree(t);
  LabeledValues shifted;
  shifted.add("A", Rational(5, 59) + Rational(1, 59));
  shifted.add("B", Rational(36, 59) - Rational(1, 59));
  shifted.add("C", Rational(18, 59));
  bad.hider = shifted;
  const VerifyReport r = verify(t, bad, Rational(1, 1000000000));
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.failures.empty());
  EXPECT_NE(r.failures.front().find("search O,"), std::string::npos) << r.failures.front();

  const Game g = rescue_game({Rational(1, 2), Rational(3, 4)}, 1);
  GameSolution wrong = solve_closed_form(g.spec, 1);
  wrong.hider.support[0].second = Rational(1, 2);
  wrong.hider.support[1].second = Rational(1, 2);
  const VerifyReport rg = verify(g, wrong, Rational(1, 1000000000));
  EXPECT_FALSE(rg.pass);
  EXPECT_NE(rg.failures.front().find("L"), std::string::npos);

  GameSolution off = solve_closed_form(g.spec, 1);
  off.value = off.value + Rational(1, 100);
  EXPECT_FALSE(verify(g, off, Rational(1, 1000000000)).pass);
}

TEST(VerifyTest, OracleOnlyHandlesTables) {
  ExplicitTable t(3);
  const std::vector<int> values{12, 9, 8, 5, 7, 3, 2, 1};
  for (std::uint64_t m = 0; m < 8; ++m) t.set(LocationSet(m), values[m]);
  Game g{testing::numbered_ids(3), 1, t};
  EXPECT_THROW(solve_closed_form(g.spec, 1), Error);
  const VerifyReport r = oracle_only(g, Rational(1, 1000));
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.oracle_only);
  EXPECT_FALSE(r.closed_form_value.has_value());
  const OracleSolution s = solve_matrix(build_matrix_unstructured(g), Rational(1, 1000));
  EXPECT_EQ(r.oracle_value, s.value);
}

}  // namespace
}  // namespace rescue
