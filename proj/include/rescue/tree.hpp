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

#ifndef RESCUE_TREE_HPP_
#define RESCUE_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rescue/core.hpp"
#include "rescue/limits.hpp"
#include "rescue/rational.hpp"

namespace rescue {

struct Vertex {
  std::string id;
  Rational p;
};

// Wire form of a rooted tree, as read from an instance file.
struct RootedTree {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string root;
};

std::vector<Issue> validate_tree(const RootedTree& tree);

// A validated rooted tree. Vertex indices follow declaration order; children
// lists are ascending by index.
class Tree {
 public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Throws invalid-argument with every validation issue.
  explicit Tree(RootedTree data);

  const RootedTree& data() const { return data_; }
  std::size_t size() const { return data_.vertices.size(); }
  std::size_t root() const { return root_; }
  const std::string& id(std::size_t v) const { return data_.vertices[v].id; }
  const Rational& p(std::size_t v) const { return data_.vertices[v].p; }
  std::size_t parent(std::size_t v) const { return parent_[v]; }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_[v]; }
  std::size_t index_of(std::string_view id) const;
  // Non-root vertices without children: the hider's undominated locations.
  bool is_leaf(std::size_t v) const { return v != root_ && children_[v].empty(); }
  std::vector<std::size_t> leaves() const;
  // Root first, every parent before its children.
  const std::vector<std::size_t>& preorder() const { return preorder_; }
  std::size_t subtree_size(std::size_t v) const { return subtree_size_[v]; }
  std::vector<std::string> ids() const;

 private:
  RootedTree data_;
  std::size_t root_ = 0;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> preorder_;
  std::vector<std::size_t> subtree_size_;
};

// Vertex indices, root first, each vertex adjacent to an earlier one.
struct ExpandingSearch {
  std::vector<std::size_t> sequence;

  friend bool operator==(const ExpandingSearch&, const ExpandingSearch&) = default;
  friend auto operator<=>(const ExpandingSearch&, const ExpandingSearch&) = default;
};

// A contiguous block of some expanding search.
struct Subsearch {
  std::vector<std::size_t> sequence;
};

bool is_expanding_search(const Tree& tree, const ExpandingSearch& search);
// Every vertex is followed immediately by the rest of its subtree.
bool is_depth_first(const Tree& tree, const ExpandingSearch& search);
bool is_subsearch(const Tree& tree, const Subsearch& alpha);

struct NormalizedTree {
  RootedTree tree;
  // For each vertex of `tree`: its index in the source tree, or nullopt for
  // an inserted vertex.
  std::vector<std::optional<std::size_t>> origin;
};

// Splits vertices with more than two children: v keeps its first child and a
// fresh vertex X (p = 1) that takes the remaining children, repeated until
// every vertex has at most two children. Fresh ids are aux-1, aux-2, ...
NormalizedTree normalize_degree3(const Tree& tree);

// Drops inserted vertices from a search of the normalized tree.
ExpandingSearch project_search(const NormalizedTree& normalized,
                               const ExpandingSearch& search);

Rational pi(const Tree& tree, std::span<const std::size_t> vertices);
Rational pi(const Tree& tree, const std::vector<std::string>& ids);

// Hider distribution over all vertices (index-aligned), from id weights.
std::vector<Rational> vertex_weights(const Tree& tree,
                                     const std::vector<std::pair<std::string, Rational>>& weights);

// sum_t x_{alpha(t)} * prod_{s <= t} p_{alpha(s)}.
Rational subsearch_payoff(const Tree& tree, std::span<const Rational> x,
                          const Subsearch& alpha);
Rational search_payoff(const Tree& tree, std::span<const Rational> x,
                       const ExpandingSearch& search);
// Payoff against a hider at `vertex`.
Rational point_payoff(const Tree& tree, const ExpandingSearch& search, std::size_t vertex);
// P(alpha) / (1 - pi(A)); undefined-index error when pi(A) = 1.
Rational subsearch_index(const Tree& tree, std::span<const Rational> x,
                         const Subsearch& alpha);

// Values keyed by vertex id, in vertex declaration order.
class LabeledValues {
 public:
  void add(std::string id, Rational value) { entries_.emplace_back(std::move(id), std::move(value)); }
  bool contains(std::string_view id) const;
  const Rational& at(std::string_view id) const;
  const std::vector<std::pair<std::string, Rational>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<std::string, Rational>> entries_;
};

struct TreeSolution {
  Rational value;
  LabeledValues hider;           // leaf -> probability
  LabeledValues branch_choice;   // branch vertex -> P(first branch first)
  LabeledValues lambdas;         // branch vertex -> normalizing factor
  LabeledValues subtree_values;  // every vertex v -> V_{G(v)}
  LabeledValues subtree_pi;      // every vertex v -> pi(G(v))
  // branch vertex -> root id of its first branch (smaller index).
  std::vector<std::pair<std::string, std::string>> first_branch;
  NormalizedTree normalized;
};

TreeSolution solve_tree(const Tree& tree);

// n! / prod_v |G(v)|, exact.
Rational count_expanding_searches(const Tree& tree);
// All expanding searches in lexicographic order; resource-limit error when
// the count exceeds `cap`.
std::vector<ExpandingSearch> enumerate_expanding_searches(
    const Tree& tree, std::size_t cap = Limits{}.expanding_searches);
std::vector<ExpandingSearch> enumerate_depth_first_searches(const Tree& tree);

// The tree searching strategy as an explicit distribution over depth-first
// searches of `tree` (the tree the solution was computed for).
std::vector<std::pair<ExpandingSearch, Rational>> searcher_distribution(
    const Tree& tree, const TreeSolution& solution);

ExpandingSearch sample_search(const Tree& tree, const TreeSolution& solution,
                              std::mt19937_64& rng);
ExpandingSearch sample_search(const Tree& tree, const TreeSolution& solution,
                              std::uint64_t seed);

// Exact expected payoff of the tree searching strategy against a hider at
// `vertex`. Non-leaf vertices need `allow_internal`.
Rational searcher_guarantee(const Tree& tree, const TreeSolution& solution,
                            std::string_view vertex, bool allow_internal = false);

}  // namespace rescue

#endif  // RESCUE_TREE_HPP_
