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

// Shared generators and independent reference computations for the tests.
// Nothing here calls the payoff code under test.

#ifndef RESCUE_TESTS_TEST_UTIL_HPP_
#define RESCUE_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "rescue/indexable.hpp"
#include "rescue/random.hpp"
#include "rescue/rational.hpp"
#include "rescue/tree.hpp"

namespace rescue::testing {

inline std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Uniform over fractions a/b in (0,1) with 2 <= b <= max_den.
inline Rational random_probability(std::mt19937_64& rng, std::int64_t max_den = 20) {
  const std::int64_t den = pick(rng, 2, max_den);
  return Rational(pick(rng, 1, den - 1), den);
}

inline std::vector<Rational> random_probabilities(std::mt19937_64& rng, std::size_t n,
                                                  std::int64_t max_den = 20) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(random_probability(rng, max_den));
  return p;
}

inline std::vector<Rational> random_costs(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(Rational(pick(rng, 1, 30), pick(rng, 1, 6)));
  return c;
}

// A random distribution with small denominators; some entries may be zero.
inline std::vector<Rational> random_distribution(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& v : w) {
    v = pick(rng, 0, 9);
    total += v;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<Rational> x;
  for (auto v : w) x.push_back(Rational(v, total));
  return x;
}

inline std::vector<std::string> numbered_ids(std::size_t n, const std::string& prefix = "L") {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i + 1));
  return ids;
}

// One of the four closed families, chosen at random.
inline SetFunctionSpec random_family(std::mt19937_64& rng, std::size_t n, int family) {
  switch (family % 4) {
    case 0:
      return Rescue{random_probabilities(rng, n)};
    case 1:
      return DiscountedRescue{random_probabilities(rng, n), random_probability(rng, 10)};
    case 2:
      return AdditiveCost{random_costs(rng, n)};
    default:
      return TravelSearch{random_costs(rng, n)};
  }
}

// f(A) evaluated from the family definitions, without the library.
inline Rational direct_f(const SetFunctionSpec& spec, std::uint64_t mask) {
  return std::visit(
      [mask](const auto& s) -> Rational {
        using T = std::decay_t<decltype(s)>;
        Rational r = 0;
        if constexpr (std::is_same_v<T, Rescue>) {
          r = 1;
          for (std::size_t i = 0; i < s.p.size(); ++i)
            if (mask >> i & 1) r *= s.p[i];
        } else if constexpr (std::is_same_v<T, DiscountedRescue>) {
          r = 1;
          for (std::size_t i = 0; i < s.p.size(); ++i)
            if (mask >> i & 1) r *= s.gamma * s.p[i];
        } else if constexpr (std::is_same_v<T, AdditiveCost>) {
          for (std::size_t i = 0; i < s.c.size(); ++i)
            if (!(mask >> i & 1)) r += s.c[i];
        } else if constexpr (std::is_same_v<T, TravelSearch>) {
          for (std::size_t i = 0; i < s.c.size(); ++i)
            if (!(mask >> i & 1)) r += s.c[i] + 1;
        } else {
          r = *s.values.at(mask);
        }
        return r;
      },
      spec);
}

inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline std::vector<std::uint64_t> masks_of_size(std::size_t n, std::size_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (static_cast<std::size_t>(__builtin_popcountll(m)) == k) out.push_back(m);
  return out;
}

// f of the shortest prefix of `order` that contains every location of `hider`.
inline Rational direct_order_payoff(const SetFunctionSpec& spec, std::uint64_t hider,
                                    const std::vector<std::size_t>& order) {
  std::uint64_t seen = 0;
  for (std::size_t v : order) {
    if ((hider & ~seen) == 0) break;
    seen |= std::uint64_t{1} << v;
  }
  return direct_f(spec, seen);
}

// Sum over k-subsets of products of z.
inline Rational direct_t_poly(const std::vector<Rational>& z, std::uint64_t set, std::size_t k) {
  Rational total = 0;
  for (std::uint64_t m : masks_of_size(z.size(), k)) {
    if ((m & ~set) != 0) continue;
    Rational prod = 1;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (m >> i & 1) prod *= z[i];
    total += prod;
  }
  return total;
}

// Random rooted tree on n vertices "v0".."v{n-1}" rooted at v0; every vertex
// attaches to a uniformly chosen earlier vertex. The root may get p = 1.
inline RootedTree random_tree(std::mt19937_64& rng, std::size_t n, std::int64_t max_den = 20) {
  RootedTree t;
  t.root = "v0";
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = random_probability(rng, max_den);
    if (i == 0 && pick(rng, 0, 3) == 0) p = 1;
    t.vertices.push_back({"v" + std::to_string(i), p});
    if (i > 0) {
      const auto parent = pick(rng, 0, static_cast<std::int64_t>(i) - 1);
      t.edges.emplace_back("v" + std::to_string(parent), "v" + std::to_string(i));
    }
  }
  return t;
}

// Like random_tree, but v1 hangs off the root and carries at least three
// children, so some vertex has degree four or more.
inline RootedTree random_wide_tree(std::mt19937_64& rng, std::size_t n, std::int64_t max_den = 20) {
  RootedTree t;
  t.root = "v0";
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = random_probability(rng, max_den);
    if (i == 0 && pick(rng, 0, 3) == 0) p = 1;
    t.vertices.push_back({"v" + std::to_string(i), p});
    if (i == 0) continue;
    std::int64_t parent = 1;
    if (i == 1) {
      parent = 0;
    } else if (i >= 5) {
      parent = pick(rng, 0, static_cast<std::int64_t>(i) - 1);
    }
    t.edges.emplace_back("v" + std::to_string(parent), "v" + std::to_string(i));
  }
  return t;
}

// The five-vertex tree of the worked example: value 14/177.
inline RootedTree example_tree() {
  RootedTree t;
  t.root = "O";
  t.vertices = {{"O", Rational(1, 2)},
                {"A", Rational(2, 3)},
                {"D", Rational(3, 5)},
                {"B", Rational(1, 3)},
                {"C", Rational(1, 2)}};
  t.edges = {{"O", "A"}, {"O", "D"}, {"D", "B"}, {"D", "C"}};
  return t;
}

// Every ordering of the vertices that starts at the root and only visits a
// vertex after its parent; found by filtering all permutations.
inline std::vector<std::vector<std::size_t>> brute_expanding_searches(const Tree& tree) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& perm : all_permutations(tree.size())) {
    if (perm[0] != tree.root()) continue;
    std::vector<bool> seen(tree.size(), false);
    bool ok = true;
    for (std::size_t v : perm) {
      if (v != tree.root() && !seen[tree.parent(v)]) {
        ok = false;
        break;
      }
      seen[v] = true;
    }
    if (ok) out.push_back(perm);
  }
  return out;
}

// Product of p over the searched vertices up to and including `target`.
inline Rational direct_tree_payoff(const Tree& tree, const std::vector<std::size_t>& seq,
                                   std::size_t target) {
  Rational r = 1;
  for (std::size_t v : seq) {
    r *= tree.p(v);
    if (v == target) break;
  }
  return r;
}

}  // namespace rescue::testing

#endif  // RESCUE_TESTS_TEST_UTIL_HPP_
