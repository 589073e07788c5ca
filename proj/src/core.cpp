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

#include "rescue/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "rescue/error.hpp"

namespace rescue {

std::string describe(const std::vector<Issue>& issues) {
  std::string out;
  for (const Issue& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue.message;
  }
  return out;
}

std::size_t Instance::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (locations[i].id == id) return i;
  }
  fail(ErrorKind::kInvalidArgument, "unknown location id '" + std::string(id) + "'");
}

std::vector<std::string> Instance::ids() const {
  std::vector<std::string> out;
  out.reserve(locations.size());
  for (const Location& loc : locations) out.push_back(loc.id);
  return out;
}

std::vector<Issue> validate(const Instance& instance) {
  std::vector<Issue> issues;
  const std::size_t n = instance.size();
  if (n == 0) issues.push_back({IssueCode::kEmpty, "instance has no locations"});
  if (n > LocationSet::kMaxSize) {
    issues.push_back({IssueCode::kSizeMismatch,
                      "at most 64 locations are supported"});
  }
  std::set<std::string> seen;
  for (const Location& loc : instance.locations) {
    if (!seen.insert(loc.id).second) {
      issues.push_back({IssueCode::kDuplicateId, "duplicate id '" + loc.id + "'"});
    }
    if (loc.p.sign() <= 0 || loc.p >= Rational(1)) {
      issues.push_back({IssueCode::kProbabilityOutOfRange,
                        "p of '" + loc.id + "' is " + loc.p.to_string() +
                            ", must lie strictly between 0 and 1"});
    }
  }
  if (instance.k < 1 || instance.k + 1 > std::max<std::size_t>(n, 1)) {
    issues.push_back({IssueCode::kTargetCountOutOfRange,
                      "k = " + std::to_string(instance.k) +
                          " must satisfy 1 <= k <= n-1 with n = " +
                          std::to_string(n)});
  }
  return issues;
}

void require_valid(const Instance& instance) {
  const auto issues = validate(instance);
  if (!issues.empty()) fail(ErrorKind::kInvalidArgument, describe(issues));
}

SearchOrder identity_order(std::size_t n) {
  SearchOrder order;
  order.sequence.resize(n);
  for (std::size_t i = 0; i < n; ++i) order.sequence[i] = i;
  return order;
}

bool is_permutation_of(const SearchOrder& order, std::size_t n) {
  if (order.sequence.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t v : order.sequence) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

HiderMix point_mix(HiderSet h) { return HiderMix{{{h, Rational(1)}}}; }

SearcherMix point_mix(SearchOrder order) {
  return SearcherMix{std::vector<WeightedOrder>{{std::move(order), Rational(1)}}};
}

SetFunctionTable::SetFunctionTable(const SetFunction& f, std::size_t n) : n_(n) {
  if (n > 24) {
    fail(ErrorKind::kResourceLimit,
         "cannot tabulate a set function on " + std::to_string(n) + " locations");
  }
  values_.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    values_.push_back(f(LocationSet(mask)));
  }
}

Rational order_payoff(const SetFunction& f, HiderSet hider,
                      const SearchOrder& order) {
  LocationSet prefix;
  for (std::size_t v : order.sequence) {
    prefix.insert(v);
    if (hider.subset_of(prefix)) return f(prefix);
  }
  fail(ErrorKind::kInvalidArgument, "hider set is not covered by the search order");
}

Rational first_block_payoff(const SetFunction& f, std::size_t n,
                            HiderSet hider, HiderSet first) {
  const LocationSet all = LocationSet::all(n);
  if (!hider.subset_of(all) || !first.subset_of(all)) {
    fail(ErrorKind::kInvalidArgument, "set references an unknown location");
  }
  const LocationSet remaining = hider - first;
  if (remaining.empty()) return f(first);
  const std::size_t tail = n - first.size();
  const std::size_t r = remaining.size();
  const LocationSet others = all - first - remaining;
  const std::size_t o = others.size();

  std::vector<Rational> sum_by_size(o + 1);
  for (LocationSet extra : subsets_of(others)) {
    sum_by_size[extra.size()] += f(first | remaining | extra);
  }
  const Rational total = binomial(tail, r);
  Rational expected;
  for (std::size_t j = 0; j <= o; ++j) {
    // P(last target at tail position r+j) = C(r+j-1, r-1) / C(tail, r).
    const Rational position = binomial(r + j - 1, r - 1) / total;
    expected += position * sum_by_size[j] / binomial(o, j);
  }
  return expected;
}

std::vector<std::size_t> first_block_prefix(HiderSet first) {
  return first.members();
}

namespace {

void check_weights(const std::vector<Rational>& weights) {
  if (weights.empty()) fail(ErrorKind::kInvalidArgument, "mixed strategy has empty support");
  Rational total;
  for (const Rational& w : weights) {
    if (w.sign() <= 0) {
      fail(ErrorKind::kInvalidArgument, "mixed strategy weight " + w.to_string() + " is not positive");
    }
    total += w;
  }
  if (total != Rational(1)) {
    fail(ErrorKind::kInvalidArgument, "mixed strategy weights sum to " + total.to_string());
  }
}

void check_set(HiderSet set, std::size_t n, std::size_t k) {
  if (!set.subset_of(LocationSet::all(n))) {
    fail(ErrorKind::kInvalidArgument, "set references an unknown location");
  }
  if (set.size() != k) {
    fail(ErrorKind::kInvalidArgument, "set has " + std::to_string(set.size()) +
                                          " members, expected " + std::to_string(k));
  }
}

}  // namespace

void check_mix(const HiderMix& mix, std::size_t n, std::size_t k) {
  std::vector<Rational> weights;
  std::set<HiderSet> seen;
  for (const auto& [set, w] : mix.support) {
    check_set(set, n, k);
    if (!seen.insert(set).second) {
      fail(ErrorKind::kInvalidArgument, "hider mix repeats a set");
    }
    weights.push_back(w);
  }
  check_weights(weights);
}

void check_mix(const SearcherMix& mix, std::size_t n, std::size_t k) {
  std::vector<Rational> weights;
  if (const auto* orders = std::get_if<std::vector<WeightedOrder>>(&mix.support)) {
    for (const WeightedOrder& wo : *orders) {
      if (!is_permutation_of(wo.order, n)) {
        fail(ErrorKind::kInvalidArgument, "searcher mix contains an invalid order");
      }
      weights.push_back(wo.weight);
    }
  } else {
    for (const WeightedBlock& wb : std::get<std::vector<WeightedBlock>>(mix.support)) {
      check_set(wb.first, n, k);
      weights.push_back(wb.weight);
    }
  }
  check_weights(weights);
}

Rational mixed_payoff(const SetFunction& f, std::size_t n, std::size_t k,
                      const HiderMix& hider, const SearcherMix& searcher) {
  check_mix(hider, n, k);
  check_mix(searcher, n, k);
  Rational total;
  for (const auto& [set, hw] : hider.support) {
    if (const auto* orders =
            std::get_if<std::vector<WeightedOrder>>(&searcher.support)) {
      for (const WeightedOrder& wo : *orders) {
        total += hw * wo.weight * order_payoff(f, set, wo.order);
      }
    } else {
      for (const WeightedBlock& wb :
           std::get<std::vector<WeightedBlock>>(searcher.support)) {
        total += hw * wb.weight * first_block_payoff(f, n, set, wb.first);
      }
    }
  }
  return total;
}

SetFunction survival_function(const Instance& instance) {
  std::vector<Rational> p;
  p.reserve(instance.size());
  for (const Location& loc : instance.locations) p.push_back(loc.p);
  return [p = std::move(p)](LocationSet set) {
    Rational product(1);
    for (std::size_t i : set.members()) {
      if (i >= p.size()) fail(ErrorKind::kInvalidArgument, "unknown location index");
      product *= p[i];
    }
    return product;
  };
}

Rational survival(const Instance& instance, LocationSet set) {
  if (!set.subset_of(LocationSet::all(instance.size()))) {
    fail(ErrorKind::kInvalidArgument, "set references an unknown location");
  }
  return survival_function(instance)(set);
}

Rational survival(const Instance& instance, const std::vector<std::string>& ids) {
  return survival(instance, set_from_ids(instance, ids));
}

Rational payoff(const Instance& instance, HiderSet hider, const SearchOrder& order) {
  require_valid(instance);
  if (!is_permutation_of(order, instance.size())) {
    fail(ErrorKind::kInvalidArgument, "search order is not a permutation of the locations");
  }
  if (hider.size() != instance.k || !hider.subset_of(LocationSet::all(instance.size()))) {
    fail(ErrorKind::kInvalidArgument, "hider set must contain k known locations");
  }
  return order_payoff(survival_function(instance), hider, order);
}

Rational expected_payoff(const Instance& instance, const HiderMix& hider,
                         const SearcherMix& searcher) {
  require_valid(instance);
  return mixed_payoff(survival_function(instance), instance.size(), instance.k,
                      hider, searcher);
}

HiderSet set_from_ids(const Instance& instance, const std::vector<std::string>& ids) {
  HiderSet set;
  for (const std::string& id : ids) set.insert(instance.index_of(id));
  return set;
}

SearchOrder order_from_ids(const Instance& instance,
                           const std::vector<std::string>& ids) {
  SearchOrder order;
  for (const std::string& id : ids) order.sequence.push_back(instance.index_of(id));
  if (!is_permutation_of(order, instance.size())) {
    fail(ErrorKind::kInvalidArgument, "search order must list every location exactly once");
  }
  return order;
}

std::vector<std::string> ids_of(const std::vector<std::string>& ids, LocationSet set) {
  std::vector<std::string> out;
  for (std::size_t i : set.members()) out.push_back(ids.at(i));
  return out;
}

std::vector<std::string> ids_of(const std::vector<std::string>& ids,
                                const SearchOrder& order) {
  std::vector<std::string> out;
  for (std::size_t i : order.sequence) out.push_back(ids.at(i));
  return out;
}

}  // namespace rescue
