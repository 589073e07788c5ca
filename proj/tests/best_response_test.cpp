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

#include "rescue/best_response.hpp"
#include "rescue/error.hpp"
#include "test_util.hpp"

namespace rescue {
namespace {

ResponseProblem rescue_problem(std::vector<Rational> p, std::vector<Rational> x) {
  return ResponseProblem{Rescue{std::move(p)}, std::move(x)};
}

// x_v times f of the prefix ending at v, summed; straight from the definition.
Rational direct_response(const ResponseProblem& problem, const std::vector<std::size_t>& order) {
  Rational total = 0;
  std::uint64_t seen = 0;
  for (std::size_t v : order) {
    seen |= std::uint64_t{1} << v;
    total += problem.x[v] * testing::direct_f(problem.spec, seen);
  }
  return total;
}

TEST(ResponsePayoffTest, Examples) {
  EXPECT_EQ(response_payoff(rescue_problem({Rational(1, 2), Rational(1, 3)}, {1, 0}), identity_order(2)),
            Rational(1, 2));
  EXPECT_EQ(response_payoff(rescue_problem({Rational(1, 2), Rational(1, 3)}, {Rational(1, 2), Rational(1, 2)}),
                            identity_order(2)),
            Rational(1, 3));
  EXPECT_EQ(response_payoff(rescue_problem({Rational(1, 2), Rational(3, 4)}, {Rational(3, 4), Rational(1, 4)}),
                            SearchOrder{{1, 0}}),
            Rational(15, 32));
}

TEST(ResponsePayoffTest, RejectsBadInput) {
  EXPECT_THROW(response_payoff(rescue_problem({Rational(1, 2), Rational(1, 3)}, {Rational(1, 2), Rational(1, 3)}),
                               identity_order(2)),
               Error);
  EXPECT_THROW(response_payoff(rescue_problem({Rational(1, 2), Rational(1, 3)}, {Rational(3, 2), Rational(-1, 2)}),
                               identity_order(2)),
               Error);
  EXPECT_THROW(response_payoff(rescue_problem({Rational(1, 2), Rational(1, 3)}, {1, 0}), SearchOrder{{0, 0}}),
               Error);
  EXPECT_FALSE(validate_problem(rescue_problem({Rational(1, 2)}, {1, 0})).empty());
}

TEST(IndexOrderTest, Examples) {
  const ResponseProblem three = rescue_problem({Rational(1, 2), Rational(9, 10), Rational(4, 5)},
                                               {Rational(1, 2), Rational(3, 10), Rational(1, 5)});
  const auto z = std::get<ZIndex>(recover_z(three.spec));
  const auto index = response_indices(three, z);
  // Indices are proportional to x_i p_i / (1 - p_i) = (1/2, 27/10, 4/5).
  EXPECT_EQ(index[1] / index[0], Rational(27, 5));
  EXPECT_EQ(index[2] / index[0], Rational(8, 5));
  EXPECT_EQ(index_order(three, Direction::kMaximize), (SearchOrder{{1, 2, 0}}));
  EXPECT_EQ(best_response_bruteforce(three, Direction::kMaximize).order, (SearchOrder{{1, 2, 0}}));
  EXPECT_EQ(index_order(three, Direction::kMinimize), (SearchOrder{{0, 2, 1}}));

  const ResponseProblem tied = rescue_problem({Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                                              {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  EXPECT_EQ(index_order(tied, Direction::kMaximize), identity_order(3));
  EXPECT_EQ(index_order(tied, Direction::kMinimize), identity_order(3));

  // Smith's rule on costs.
  const ResponseProblem smith{AdditiveCost{{1, 2}}, {Rational(1, 4), Rational(3, 4)}};
  EXPECT_EQ(index_order(smith, Direction::kMaximize), (SearchOrder{{1, 0}}));
  EXPECT_EQ(best_response_bruteforce(smith, Direction::kMaximize).order, (SearchOrder{{1, 0}}));
}

TEST(IndexOrderTest, NotIndexableIsUnsupported) {
  ExplicitTable t(2);
  t.set(LocationSet(), 4);
  t.set(LocationSet().with(0), 3);
  t.set(LocationSet().with(1), 2);
  t.set(LocationSet().with(0).with(1), 2);
  try {
    index_order(ResponseProblem{t, {Rational(1, 2), Rational(1, 2)}}, Direction::kMaximize);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupported);
  }
}

TEST(BruteForceTest, Examples) {
  const ResponseProblem point = rescue_problem({Rational(1, 2), Rational(1, 3), Rational(1, 4)}, {0, 1, 0});
  const auto best = best_response_bruteforce(point, Direction::kMaximize);
  EXPECT_EQ(best.order, (SearchOrder{{1, 0, 2}}));
  EXPECT_EQ(best.payoff, Rational(1, 3));

  const auto single = best_response_bruteforce(ResponseProblem{AdditiveCost{{3}}, {1}}, Direction::kMaximize);
  EXPECT_EQ(single.order, identity_order(1));

  const ResponseProblem big{Rescue{std::vector<Rational>(10, Rational(1, 2))},
                            std::vector<Rational>(10, Rational(1, 10))};
  try {
    best_response_bruteforce(big, Direction::kMaximize);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
}

TEST(BruteForceTest, IndexRuleIsOptimal) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const ResponseProblem problem{testing::random_family(rng, n, trial / 7),
                                  testing::random_distribution(rng, n)};
    Rational best_max, best_min;
    bool first = true;
    for (const auto& perm : testing::all_permutations(n)) {
      const Rational v = direct_response(problem, perm);
      if (first || v > best_max) best_max = v;
      if (first || v < best_min) best_min = v;
      first = false;
    }
    if (n == 1) {
      EXPECT_EQ(best_response_bruteforce(problem, Direction::kMaximize).payoff, best_max);
      continue;
    }
    const SearchOrder up = index_order(problem, Direction::kMaximize);
    const SearchOrder down = index_order(problem, Direction::kMinimize);
    EXPECT_EQ(direct_response(problem, up.sequence), best_max);
    EXPECT_EQ(direct_response(problem, down.sequence), best_min);
    EXPECT_EQ(response_payoff(problem, up), best_max);
    EXPECT_EQ(best_response_bruteforce(problem, Direction::kMaximize).payoff, best_max);
    EXPECT_EQ(best_response_bruteforce(problem, Direction::kMinimize).payoff, best_min);
  }
}

}  // namespace
}  // namespace rescue
