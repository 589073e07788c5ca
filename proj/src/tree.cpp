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

#include "rescue/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "rescue/error.hpp"
#include "rescue/random.hpp"

namespace rescue {
namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

void require_weights_size(const Tree& tree, std::span<const Rational> x) {
  if (x.size() != tree.size()) {
    fail(ErrorKind::kInvalidArgument, "hider distribution has " + std::to_string(x.size()) +
                                          " entries for " + std::to_string(tree.size()) +
                                          " vertices");
  }
}

std::string fresh_aux_id(std::set<std::string>& taken, std::size_t& counter) {
  while (true) {
    std::string candidate = "aux-" + std::to_string(counter++);
    if (taken.insert(candidate).second) return candidate;
  }
}

}  // namespace

std::vector<Issue> validate_tree(const RootedTree& tree) {
  std::vector<Issue> issues;
  const std::size_t n = tree.vertices.size();
  if (n == 0) {
    issues.push_back({IssueCode::kEmpty, "tree has no vertices"});
    return issues;
  }
  if (n < 2) {
    issues.push_back({IssueCode::kTooFewVertices,
                      "tree needs a root and at least one other vertex"});
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t v = 0; v < n; ++v) {
    const Vertex& vertex = tree.vertices[v];
    if (!index.emplace(vertex.id, v).second) {
      issues.push_back({IssueCode::kDuplicateId, "duplicate vertex id '" + vertex.id + "'"});
    }
    if (vertex.p.sign() <= 0 || vertex.p > Rational(1)) {
      issues.push_back({IssueCode::kProbabilityOutOfRange,
                        "p of '" + vertex.id + "' is " + vertex.p.to_string() +
                            ", must lie in (0,1]"});
    }
  }
  const auto root = index.find(tree.root);
  if (root == index.end()) {
    issues.push_back({IssueCode::kMissingRoot, "root '" + tree.root + "' is not a vertex"});
  }

  DisjointSets components(n);
  std::vector<std::size_t> degree(n, 0);
  std::set<std::pair<std::size_t, std::size_t>> seen_edges;
  for (const auto& [a, b] : tree.edges) {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      issues.push_back({IssueCode::kUnknownId,
                        "edge (" + a + ", " + b + ") references an unknown vertex"});
      continue;
    }
    if (ia->second == ib->second) {
      issues.push_back({IssueCode::kSelfLoop, "self-loop at '" + a + "'"});
      continue;
    }
    const auto key = std::minmax(ia->second, ib->second);
    if (!seen_edges.insert(key).second) {
      issues.push_back({IssueCode::kDuplicateEdge, "duplicate edge (" + a + ", " + b + ")"});
      continue;
    }
    ++degree[ia->second];
    ++degree[ib->second];
    if (!components.unite(ia->second, ib->second)) {
      issues.push_back({IssueCode::kCycle, "edge (" + a + ", " + b + ") closes a cycle"});
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < n; ++v) roots.insert(components.find(v));
  if (roots.size() > 1) {
    issues.push_back({IssueCode::kDisconnected,
                      "tree has " + std::to_string(roots.size()) + " components"});
  }
  for (std::size_t v = 0; v < n; ++v) {
    const bool is_root = root != index.end() && root->second == v;
    if (!is_root && degree[v] == 1 && tree.vertices[v].p == Rational(1)) {
      issues.push_back({IssueCode::kCertainLeaf,
                        "leaf '" + tree.vertices[v].id + "' has p = 1"});
    }
  }
  return issues;
}

Tree::Tree(RootedTree data) : data_(std::move(data)) {
  const auto issues = validate_tree(data_);
  if (!issues.empty()) fail(ErrorKind::kInvalidArgument, describe(issues));
  const std::size_t n = data_.vertices.size();
  root_ = index_of(data_.root);
  std::vector<std::vector<std::size_t>> adjacent(n);
  for (const auto& [a, b] : data_.edges) {
    const std::size_t ia = index_of(a);
    const std::size_t ib = index_of(b);
    adjacent[ia].push_back(ib);
    adjacent[ib].push_back(ia);
  }
  parent_.assign(n, kNone);
  children_.assign(n, {});
  std::vector<std::size_t> stack{root_};
  std::vector<bool> visited(n, false);
  visited[root_] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    preorder_.push_back(v);
    for (std::size_t u : adjacent[v]) {
      if (visited[u]) continue;
      visited[u] = true;
      parent_[u] = v;
      children_[v].push_back(u);
    }
    std::sort(children_[v].begin(), children_[v].end());
    for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) stack.push_back(*it);
  }
  subtree_size_.assign(n, 1);
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    if (parent_[*it] != kNone) subtree_size_[parent_[*it]] += subtree_size_[*it];
  }
}

std::size_t Tree::index_of(std::string_view id) const {
  for (std::size_t v = 0; v < data_.vertices.size(); ++v) {
    if (data_.vertices[v].id == id) return v;
  }
  fail(ErrorKind::kInvalidArgument, "unknown vertex id '" + std::string(id) + "'");
}

std::vector<std::size_t> Tree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v) {
    if (is_leaf(v)) out.push_back(v);
  }
  return out;
}

std::vector<std::string> Tree::ids() const {
  std::vector<std::string> out;
  for (const Vertex& v : data_.vertices) out.push_back(v.id);
  return out;
}

bool is_expanding_search(const Tree& tree, const ExpandingSearch& search) {
  const std::size_t n = tree.size();
  if (search.sequence.size() != n || search.sequence.front() != tree.root()) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t v : search.sequence) {
    if (v >= n || seen[v]) return false;
    if (v != tree.root() && !seen[tree.parent(v)]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_depth_first(const Tree& tree, const ExpandingSearch& search) {
  if (!is_expanding_search(tree, search)) return false;
  const std::size_t n = tree.size();
  std::vector<std::size_t> position(n);
  for (std::size_t t = 0; t < n; ++t) position[search.sequence[t]] = t;
  std::vector<std::size_t> last(position);
  for (auto it = tree.preorder().rbegin(); it != tree.preorder().rend(); ++it) {
    const std::size_t v = *it;
    if (last[v] - position[v] + 1 != tree.subtree_size(v)) return false;
    if (v != tree.root()) last[tree.parent(v)] = std::max(last[tree.parent(v)], last[v]);
  }
  return true;
}

bool is_subsearch(const Tree& tree, const Subsearch& alpha) {
  const std::size_t n = tree.size();
  if (alpha.sequence.empty()) return false;
  std::vector<std::size_t> position(n, Tree::kNone);
  for (std::size_t t = 0; t < alpha.sequence.size(); ++t) {
    const std::size_t v = alpha.sequence[t];
    if (v >= n || position[v] != Tree::kNone) return false;
    position[v] = t;
  }
  // Vertices searched before the block: ancestor closure of the parents the
  // block relies on but does not contain.
  std::vector<bool> before(n, false);
  for (std::size_t v : alpha.sequence) {
    const std::size_t parent = tree.parent(v);
    if (parent == Tree::kNone) continue;
    if (position[parent] != Tree::kNone) {
      if (position[parent] > position[v]) return false;
      continue;
    }
    for (std::size_t u = parent; u != Tree::kNone && !before[u]; u = tree.parent(u)) {
      if (position[u] != Tree::kNone) return false;
      before[u] = true;
    }
  }
  return true;
}

NormalizedTree normalize_degree3(const Tree& tree) {
  NormalizedTree out;
  out.tree = tree.data();
  for (std::size_t v = 0; v < tree.size(); ++v) out.origin.emplace_back(v);

  bool needs_split = false;
  for (std::size_t v = 0; v < tree.size(); ++v) needs_split |= tree.children(v).size() > 2;
  if (!needs_split) return out;

  std::set<std::string> taken;
  for (const Vertex& v : out.tree.vertices) taken.insert(v.id);
  std::size_t counter = 1;
  std::vector<std::vector<std::size_t>> children;
  for (std::size_t v = 0; v < tree.size(); ++v) children.push_back(tree.children(v));

  std::vector<std::size_t> work = tree.preorder();
  for (std::size_t w = 0; w < work.size(); ++w) {
    const std::size_t v = work[w];
    if (children[v].size() <= 2) continue;
    const std::size_t x = out.tree.vertices.size();
    out.tree.vertices.push_back({fresh_aux_id(taken, counter), Rational(1)});
    out.origin.emplace_back(std::nullopt);
    children.emplace_back(children[v].begin() + 1, children[v].end());
    children[v].resize(1);
    children[v].push_back(x);
    work.push_back(x);
  }
  out.tree.edges.clear();
  for (std::size_t v = 0; v < children.size(); ++v) {
    for (std::size_t c : children[v]) {
      out.tree.edges.emplace_back(out.tree.vertices[v].id, out.tree.vertices[c].id);
    }
  }
  return out;
}

ExpandingSearch project_search(const NormalizedTree& normalized, const ExpandingSearch& search) {
  ExpandingSearch out;
  for (std::size_t v : search.sequence) {
    if (const auto& o = normalized.origin.at(v)) out.sequence.push_back(*o);
  }
  return out;
}

Rational pi(const Tree& tree, std::span<const std::size_t> vertices) {
  Rational product(1);
  for (std::size_t v : vertices) {
    if (v >= tree.size()) fail(ErrorKind::kInvalidArgument, "unknown vertex index");
    product *= tree.p(v);
  }
  return product;
}

Rational pi(const Tree& tree, const std::vector<std::string>& ids) {
  std::vector<std::size_t> vertices;
  for (const std::string& id : ids) vertices.push_back(tree.index_of(id));
  return pi(tree, vertices);
}

std::vector<Rational> vertex_weights(const Tree& tree,
                                     const std::vector<std::pair<std::string, Rational>>& weights) {
  std::vector<Rational> x(tree.size());
  for (const auto& [id, w] : weights) x[tree.index_of(id)] = w;
  return x;
}

Rational subsearch_payoff(const Tree& tree, std::span<const Rational> x, const Subsearch& alpha) {
  require_weights_size(tree, x);
  if (!is_subsearch(tree, alpha)) fail(ErrorKind::kInvalidArgument, "not a subsearch of the tree");
  Rational total;
  Rational prefix(1);
  for (std::size_t v : alpha.sequence) {
    prefix *= tree.p(v);
    if (!x[v].is_zero()) total += x[v] * prefix;
  }
  return total;
}

Rational search_payoff(const Tree& tree, std::span<const Rational> x,
                       const ExpandingSearch& search) {
  if (!is_expanding_search(tree, search)) {
    fail(ErrorKind::kInvalidArgument, "not an expanding search of the tree");
  }
  return subsearch_payoff(tree, x, Subsearch{search.sequence});
}

Rational point_payoff(const Tree& tree, const ExpandingSearch& search, std::size_t vertex) {
  Rational prefix(1);
  for (std::size_t v : search.sequence) {
    prefix *= tree.p(v);
    if (v == vertex) return prefix;
  }
  fail(ErrorKind::kInvalidArgument, "vertex is not visited by the search");
}

Rational subsearch_index(const Tree& tree, std::span<const Rational> x, const Subsearch& alpha) {
  const Rational payoff = subsearch_payoff(tree, x, alpha);
  const Rational survive = pi(tree, alpha.sequence);
  if (survive == Rational(1)) {
    fail(ErrorKind::kUndefinedIndex, "index is undefined for a block with pi = 1");
  }
  return payoff / (Rational(1) - survive);
}

bool LabeledValues::contains(std::string_view id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == id; });
}

const Rational& LabeledValues::at(std::string_view id) const {
  for (const auto& e : entries_) {
    if (e.first == id) return e.second;
  }
  fail(ErrorKind::kInvalidArgument, "no value recorded for '" + std::string(id) + "'");
}

TreeSolution solve_tree(const Tree& tree) {
  TreeSolution solution;
  solution.normalized = normalize_degree3(tree);
  const Tree g(solution.normalized.tree);
  const std::size_t n = g.size();

  std::vector<Rational> value(n), survive(n), share(n, Rational(1));
  std::vector<std::optional<Rational>> lambda(n), first_prob(n);
  for (auto it = g.preorder().rbegin(); it != g.preorder().rend(); ++it) {
    const std::size_t v = *it;
    const auto& ch = g.children(v);
    if (ch.empty()) {
      value[v] = g.p(v);
      survive[v] = g.p(v);
    } else if (ch.size() == 1) {
      value[v] = g.p(v) * value[ch[0]];
      survive[v] = g.p(v) * survive[ch[0]];
    } else {
      const std::size_t a = ch[0];
      const std::size_t b = ch[1];
      const Rational wa = (Rational(1) - survive[a]) / value[a];
      const Rational wb = (Rational(1) - survive[b]) / value[b];
      const Rational lam = Rational(1) / (wa + wb);
      value[v] = g.p(v) * lam * (Rational(1) - survive[a] * survive[b]);
      survive[v] = g.p(v) * survive[a] * survive[b];
      share[a] = lam * wa;
      share[b] = lam * wb;
      lambda[v] = lam;
      first_prob[v] = lam * (Rational(1) / value[a] - survive[b] / value[b]);
    }
  }

  std::vector<Rational> mass(n);
  mass[g.root()] = Rational(1);
  for (std::size_t v : g.preorder()) {
    for (std::size_t c : g.children(v)) mass[c] = mass[v] * share[c];
  }

  solution.value = value[g.root()];
  for (std::size_t v = 0; v < n; ++v) {
    if (g.is_leaf(v)) solution.hider.add(g.id(v), mass[v]);
    if (lambda[v]) {
      solution.lambdas.add(g.id(v), *lambda[v]);
      solution.branch_choice.add(g.id(v), *first_prob[v]);
      solution.first_branch.emplace_back(g.id(v), g.id(g.children(v)[0]));
    }
    solution.subtree_values.add(g.id(v), value[v]);
    solution.subtree_pi.add(g.id(v), survive[v]);
  }
  return solution;
}

Rational count_expanding_searches(const Tree& tree) {
  Rational count(1);
  for (std::size_t i = 2; i <= tree.size(); ++i) count *= Rational(static_cast<std::int64_t>(i));
  for (std::size_t v = 0; v < tree.size(); ++v) {
    count /= Rational(static_cast<std::int64_t>(tree.subtree_size(v)));
  }
  return count;
}

std::vector<ExpandingSearch> enumerate_expanding_searches(const Tree& tree, std::size_t cap) {
  const Rational count = count_expanding_searches(tree);
  if (count > Rational(static_cast<std::int64_t>(cap))) {
    fail(ErrorKind::kResourceLimit, "tree has " + count.to_string() +
                                        " expanding searches, cap is " + std::to_string(cap));
  }
  std::vector<ExpandingSearch> out;
  ExpandingSearch current;
  current.sequence.reserve(tree.size());
  std::function<void(const std::vector<std::size_t>&)> extend =
      [&](const std::vector<std::size_t>& frontier) {
        if (frontier.empty()) {
          out.push_back(current);
          return;
        }
        for (std::size_t i = 0; i < frontier.size(); ++i) {
          const std::size_t v = frontier[i];
          std::vector<std::size_t> next;
          next.reserve(frontier.size() + tree.children(v).size());
          for (std::size_t j = 0; j < frontier.size(); ++j) {
            if (j != i) next.push_back(frontier[j]);
          }
          next.insert(next.end(), tree.children(v).begin(), tree.children(v).end());
          std::sort(next.begin(), next.end());
          current.sequence.push_back(v);
          extend(next);
          current.sequence.pop_back();
        }
      };
  extend({tree.root()});
  return out;
}

std::vector<ExpandingSearch> enumerate_depth_first_searches(const Tree& tree) {
  std::function<std::vector<std::vector<std::size_t>>(std::size_t)> orders =
      [&](std::size_t v) {
        std::vector<std::size_t> ch = tree.children(v);
        std::vector<std::vector<std::vector<std::size_t>>> sub;
        for (std::size_t c : ch) sub.push_back(orders(c));
        std::vector<std::vector<std::size_t>> result;
        std::vector<std::size_t> perm(ch.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        do {
          std::vector<std::vector<std::size_t>> partial{{v}};
          for (std::size_t idx : perm) {
            std::vector<std::vector<std::size_t>> grown;
            for (const auto& prefix : partial) {
              for (const auto& tail : sub[idx]) {
                auto seq = prefix;
                seq.insert(seq.end(), tail.begin(), tail.end());
                grown.push_back(std::move(seq));
              }
            }
            partial = std::move(grown);
          }
          result.insert(result.end(), partial.begin(), partial.end());
        } while (std::next_permutation(perm.begin(), perm.end()));
        return result;
      };
  std::vector<ExpandingSearch> out;
  for (auto& seq : orders(tree.root())) out.push_back(ExpandingSearch{std::move(seq)});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void require_matching(const Tree& tree, const TreeSolution& solution) {
  std::size_t originals = 0;
  for (const auto& o : solution.normalized.origin) originals += o.has_value() ? 1 : 0;
  if (originals != tree.size()) {
    fail(ErrorKind::kInvalidArgument, "solution was computed for a different tree");
  }
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (solution.normalized.tree.vertices[v].id != tree.id(v)) {
      fail(ErrorKind::kInvalidArgument, "solution was computed for a different tree");
    }
  }
}

}  // namespace

std::vector<std::pair<ExpandingSearch, Rational>> searcher_distribution(
    const Tree& tree, const TreeSolution& solution) {
  require_matching(tree, solution);
  const Tree g(solution.normalized.tree);
  if (solution.branch_choice.size() > 20) {
    fail(ErrorKind::kResourceLimit, "too many branch vertices to expand the searcher mix");
  }
  using Weighted = std::vector<std::pair<std::vector<std::size_t>, Rational>>;
  std::function<Weighted(std::size_t)> expand = [&](std::size_t v) -> Weighted {
    const auto& ch = g.children(v);
    if (ch.empty()) return {{{v}, Rational(1)}};
    if (ch.size() == 1) {
      Weighted out = expand(ch[0]);
      for (auto& [seq, w] : out) seq.insert(seq.begin(), v);
      return out;
    }
    const Rational q = solution.branch_choice.at(g.id(v));
    const Weighted first = expand(ch[0]);
    const Weighted second = expand(ch[1]);
    Weighted out;
    for (const auto& [sa, wa] : first) {
      for (const auto& [sb, wb] : second) {
        if (q.sign() > 0) {
          std::vector<std::size_t> seq{v};
          seq.insert(seq.end(), sa.begin(), sa.end());
          seq.insert(seq.end(), sb.begin(), sb.end());
          out.emplace_back(std::move(seq), q * wa * wb);
        }
        if (q < Rational(1)) {
          std::vector<std::size_t> seq{v};
          seq.insert(seq.end(), sb.begin(), sb.end());
          seq.insert(seq.end(), sa.begin(), sa.end());
          out.emplace_back(std::move(seq), (Rational(1) - q) * wa * wb);
        }
      }
    }
    return out;
  };
  std::vector<std::pair<ExpandingSearch, Rational>> out;
  for (auto& [seq, w] : expand(g.root())) {
    out.emplace_back(project_search(solution.normalized, ExpandingSearch{std::move(seq)}),
                     std::move(w));
  }
  return out;
}

ExpandingSearch sample_search(const Tree& tree, const TreeSolution& solution,
                              std::mt19937_64& rng) {
  require_matching(tree, solution);
  const Tree g(solution.normalized.tree);
  ExpandingSearch search;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    search.sequence.push_back(v);
    auto ch = g.children(v);
    if (ch.size() == 2) {
      const double q = solution.branch_choice.at(g.id(v)).to_double();
      if (!(uniform_unit(rng) < q)) std::swap(ch[0], ch[1]);
    }
    for (std::size_t c : ch) visit(c);
  };
  visit(g.root());
  return project_search(solution.normalized, search);
}

ExpandingSearch sample_search(const Tree& tree, const TreeSolution& solution,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_search(tree, solution, rng);
}

Rational searcher_guarantee(const Tree& tree, const TreeSolution& solution,
                            std::string_view vertex, bool allow_internal) {
  require_matching(tree, solution);
  const std::size_t target = tree.index_of(vertex);
  if (!tree.is_leaf(target) && !allow_internal) {
    fail(ErrorKind::kInvalidArgument,
         "'" + std::string(vertex) + "' is not a leaf; pass allow_internal to evaluate it");
  }
  const Tree g(solution.normalized.tree);
  // Originals keep their indices in the normalized tree.
  Rational expected = g.p(target);
  for (std::size_t child = target, u = g.parent(target); u != Tree::kNone;
       child = u, u = g.parent(u)) {
    expected *= g.p(u);
    const auto& ch = g.children(u);
    if (ch.size() != 2) continue;
    const bool in_first = ch[0] == child;
    const Rational q = solution.branch_choice.at(g.id(u));
    const Rational ahead = in_first ? q : Rational(1) - q;
    const std::size_t sibling = in_first ? ch[1] : ch[0];
    expected *= ahead + (Rational(1) - ahead) * solution.subtree_pi.at(g.id(sibling));
  }
  return expected;
}

}  // namespace rescue
