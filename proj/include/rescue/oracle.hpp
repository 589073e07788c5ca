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

#ifndef RESCUE_ORACLE_HPP_
#define RESCUE_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rescue/core.hpp"
#include "rescue/indexable.hpp"
#include "rescue/limits.hpp"
#include "rescue/rational.hpp"
#include "rescue/tree.hpp"

namespace rescue {

// Finite zero-sum game; the row player (Searcher) maximizes.
struct MatrixGame {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<Rational>> payoffs;

  std::size_t rows() const { return payoffs.size(); }
  std::size_t cols() const { return col_labels.size(); }
};

// Rows: all n! orders (lexicographic). Columns: all k-subsets (bitmask order).
MatrixGame build_matrix_unstructured(const Game& game, const Limits& limits = Limits{});
MatrixGame build_matrix_unstructured(const Instance& instance, const Limits& limits = Limits{});

// Rows: all expanding searches. Columns: the non-root leaves, or every vertex
// when `all_vertices`.
MatrixGame build_matrix_tree(const Tree& tree, bool all_vertices = false,
                             const Limits& limits = Limits{});

struct OracleSolution {
  Rational value;
  Rational epsilon;  // error bound on `value`; zero for this exact solver
  std::vector<Rational> row_mix;
  std::vector<Rational> col_mix;
  // Certificate: the column best responding to row_mix and its payoff, and
  // the row best responding to col_mix and its payoff.
  std::size_t best_col = 0;
  Rational best_col_payoff;
  std::size_t best_row = 0;
  Rational best_row_payoff;
  std::size_t iterations = 0;
};

struct SolveBudget {
  std::size_t max_generation_rounds = 10'000;
  std::size_t max_pivots = 1'000'000;
};

// Exact solution by row generation: solve the game restricted to a growing
// row subset with an exact simplex, then add the row that best answers the
// restricted column mix until no row beats the restricted value. Throws
// budget-exceeded (message carries the bounds reached) when out of budget.
OracleSolution solve_matrix(const MatrixGame& game, const Rational& epsilon,
                            const SolveBudget& budget = SolveBudget{});

struct VerifyReport {
  bool pass = false;
  bool oracle_only = false;
  std::optional<Rational> closed_form_value;
  Rational oracle_value;
  Rational epsilon;
  std::size_t rows = 0;
  std::size_t cols = 0;
  // Certificate failures, each naming the offending pure strategy.
  std::vector<std::string> failures;
};

// Compares a closed-form solution against the oracle and checks both exact
// one-sided certificates: no pure search beats the value against the hider
// mix, no pure hiding strategy holds the searcher mix below it.
VerifyReport verify(const Game& game, const GameSolution& solution, const Rational& epsilon,
                    const Limits& limits = Limits{});
VerifyReport verify(const Tree& tree, const TreeSolution& solution, const Rational& epsilon,
                    bool all_vertices = false, const Limits& limits = Limits{});

VerifyReport oracle_only(const Game& game, const Rational& epsilon,
                         const Limits& limits = Limits{});
VerifyReport oracle_only(const Tree& tree, const Rational& epsilon,
                         bool all_vertices = false, const Limits& limits = Limits{});

}  // namespace rescue

#endif  // RESCUE_ORACLE_HPP_
