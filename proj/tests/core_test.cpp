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

#include "rescue/core.hpp"
#include "rescue/error.hpp"
#include "test_util.hpp"

namespace rescue {
namespace {

using testing::direct_order_payoff;
using testing::all_permutations;
using testing::masks_of_size;

Instance make_instance(std::vector<Rational> p, std::size_t k = 1) {
  Instance inst;
  inst.k = k;
  for (std::size_t i = 0; i < p.size(); ++i) inst.locations.push_back({std::to_string(i + 1), p[i]});
  return inst;
}

bool has_code(const std::vector<Issue>& issues, IssueCode code) {
  for (const Issue& i : issues)
    if (i.code == code) return true;
  return false;
}

TEST(RationalTest, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-4"), Rational(-4));
  EXPECT_EQ(Rational::parse("14/177").to_string(), "14/177");
  EXPECT_THROW(Rational::parse("0.5"), Error);
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse(""), Error);
  EXPECT_THROW(Rational::parse("1/2x"), Error);
  EXPECT_EQ(Rational(14, 177).to_decimal(12), "0.0790960451977");
  EXPECT_THROW(Rational(1) / Rational(0), Error);
  EXPECT_EQ(binomial(5, 2), Rational(10));
}

TEST(LocationSetTest, SubsetsOfSize) {
  const auto sets = subsets_of_size(5, 2);
  EXPECT_EQ(sets.size(), 10u);
  for (std::size_t i = 1; i < sets.size(); ++i) EXPECT_LT(sets[i - 1].bits(), sets[i].bits());
  EXPECT_EQ(subsets_of_size(4, 0).size(), 1u);
  EXPECT_EQ(subsets_of(LocationSet::all(3)).size(), 8u);
}

TEST(SurvivalTest, Examples) {
  const Instance inst = make_instance({Rational(1, 2), Rational(1, 3), Rational(1, 4)});
  EXPECT_EQ(survival(inst, std::vector<std::string>{"1", "3"}), Rational(1, 8));
  EXPECT_EQ(survival(inst, std::vector<std::string>{}), Rational(1));
  const Instance four =
      make_instance({Rational(1, 2), Rational(3, 5), Rational(2, 3), Rational(1, 3)});
  EXPECT_EQ(survival(four, LocationSet::all(4)), Rational(1, 15));
  EXPECT_THROW(survival(inst, std::vector<std::string>{"9"}), Error);
}

TEST(SurvivalTest, Multiplicative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const Instance inst = make_instance(testing::random_probabilities(rng, n));
    for (const LocationSet a : subsets_of(LocationSet::all(n)))
      for (const LocationSet b : subsets_of(LocationSet::all(n) - a))
        EXPECT_EQ(survival(inst, a | b), survival(inst, a) * survival(inst, b));
  }
}

TEST(PayoffTest, Examples) {
  Instance fig;
  for (auto [id, p] : std::vector<std::pair<std::string, Rational>>{
           {"O", Rational(1, 2)}, {"A", Rational(2, 3)}, {"D", Rational(3, 5)},
           {"B", Rational(1, 3)}, {"C", Rational(1, 2)}})
    fig.locations.push_back({id, p});
  EXPECT_EQ(payoff(fig, set_from_ids(fig, {"B"}), order_from_ids(fig, {"O", "D", "A", "B", "C"})),
            Rational(1, 15));

  const Instance inst = make_instance({Rational(1, 2), Rational(1, 3), Rational(1, 4)});
  EXPECT_EQ(payoff(inst, set_from_ids(inst, {"3"}), order_from_ids(inst, {"3", "1", "2"})),
            Rational(1, 4));

  const Instance halves = make_instance({Rational(1, 2), Rational(1, 2), Rational(1, 2)}, 2);
  EXPECT_EQ(payoff(halves, set_from_ids(halves, {"1", "3"}), identity_order(3)), Rational(1, 8));
}

TEST(PayoffTest, MatchesDirectEvaluation) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto p = testing::random_probabilities(rng, n);
    const SetFunctionSpec spec = Rescue{p};
    for (std::size_t k = 1; k < n; ++k) {
      const Instance inst = make_instance(p, k);
      for (auto h : masks_of_size(n, k))
        for (const auto& perm : all_permutations(n))
          EXPECT_EQ(payoff(inst, LocationSet(h), SearchOrder{perm}),
                    direct_order_payoff(spec, h, perm));
    }
  }
}

TEST(PayoffTest, MovingTargetsEarlierNeverHurts) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const Instance inst = make_instance(testing::random_probabilities(rng, n), 2);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const LocationSet h = LocationSet().with(order[n - 1]).with(order[n / 2]);
    // Swap a target with the non-target just before it.
    for (std::size_t pos = 1; pos < n; ++pos) {
      if (!h.contains(order[pos]) || h.contains(order[pos - 1])) continue;
      auto moved = order;
      std::swap(moved[pos], moved[pos - 1]);
      EXPECT_GE(payoff(inst, h, SearchOrder{moved}), payoff(inst, h, SearchOrder{order}));
    }
  }
}

TEST(ExpectedPayoffTest, Examples) {
  const Instance inst = make_instance({Rational(1, 2), Rational(1, 3), Rational(1, 4)});
  const HiderMix h1 = point_mix(set_from_ids(inst, {"1"}));
  const HiderMix h2 = point_mix(set_from_ids(inst, {"2"}));
  const SearcherMix s1{std::vector<WeightedBlock>{{set_from_ids(inst, {"1"}), Rational(1)}}};
  const SearcherMix s2{std::vector<WeightedBlock>{{set_from_ids(inst, {"2"}), Rational(1)}}};
  EXPECT_EQ(expected_payoff(inst, h1, s2), Rational(5, 48));
  EXPECT_EQ(expected_payoff(inst, h2, s1), Rational(5, 48));

  const SearchOrder sigma = order_from_ids(inst, {"2", "3", "1"});
  EXPECT_EQ(expected_payoff(inst, h1, point_mix(sigma)), payoff(inst, set_from_ids(inst, {"1"}), sigma));
}

TEST(ExpectedPayoffTest, RejectsBadMixes) {
  const Instance inst = make_instance({Rational(1, 2), Rational(1, 3), Rational(1, 4)});
  const HiderMix outside = point_mix(LocationSet().with(5));
  EXPECT_THROW(expected_payoff(inst, outside, point_mix(identity_order(3))), Error);
  const HiderMix short_mix{{{LocationSet().with(0), Rational(1, 2)}}};
  EXPECT_THROW(expected_payoff(inst, short_mix, point_mix(identity_order(3))), Error);
  EXPECT_THROW(expected_payoff(inst, point_mix(LocationSet().with(0)), point_mix(SearchOrder{{0, 0, 1}})),
               Error);
}

// First-block payoff against the average over every order that searches the
// block first.
TEST(ExpectedPayoffTest, FirstBlockMatchesEnumeration) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t k = 1 + static_cast<std::size_t>(trial) % (n - 1);
    const SetFunctionSpec spec = testing::random_family(rng, n, trial);
    const SetFunction f = [&](LocationSet s) { return testing::direct_f(spec, s.bits()); };
    for (auto a : masks_of_size(n, k)) {
      for (auto h : masks_of_size(n, k)) {
        Rational total = 0;
        std::int64_t count = 0;
        for (const auto& perm : all_permutations(n)) {
          std::uint64_t prefix = 0;
          for (std::size_t i = 0; i < k; ++i) prefix |= std::uint64_t{1} << perm[i];
          if (prefix != a) continue;
          total += direct_order_payoff(spec, h, perm);
          ++count;
        }
        EXPECT_EQ(first_block_payoff(f, n, LocationSet(h), LocationSet(a)), total / Rational(count));
      }
    }
  }
}

TEST(ExpectedPayoffTest, BlockSymmetry) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t k = 1 + static_cast<std::size_t>(trial / 5) % (n - 1);
    const SetFunctionSpec spec = testing::random_family(rng, n, trial);
    const SetFunction f = [&](LocationSet s) { return testing::direct_f(spec, s.bits()); };
    for (auto a : masks_of_size(n, k))
      for (auto b : masks_of_size(n, k))
        EXPECT_EQ(first_block_payoff(f, n, LocationSet(a), LocationSet(b)),
                  first_block_payoff(f, n, LocationSet(b), LocationSet(a)));
  }
}

TEST(ValidateTest, Examples) {
  EXPECT_TRUE(has_code(validate(make_instance({Rational(1, 2)})), IssueCode::kTargetCountOutOfRange));
  EXPECT_TRUE(has_code(validate(make_instance({Rational(1, 2), Rational(1)})),
                       IssueCode::kProbabilityOutOfRange));
  EXPECT_TRUE(validate(make_instance({Rational(1, 2), Rational(1, 3)})).empty());
  EXPECT_TRUE(has_code(validate(make_instance({Rational(1, 2), Rational(0)})),
                       IssueCode::kProbabilityOutOfRange));
  EXPECT_TRUE(has_code(validate(make_instance({Rational(1, 2), Rational(1, 3)}, 0)),
                       IssueCode::kTargetCountOutOfRange));

  Instance dup = make_instance({Rational(1, 2), Rational(1, 3), Rational(2)});
  dup.locations[1].id = "1";
  const auto issues = validate(dup);
  EXPECT_TRUE(has_code(issues, IssueCode::kDuplicateId));
  EXPECT_TRUE(has_code(issues, IssueCode::kProbabilityOutOfRange));
  EXPECT_THROW(require_valid(dup), Error);
}

}  // namespace
}  // namespace rescue
