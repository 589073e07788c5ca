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

#ifndef RESCUE_CORE_HPP_
#define RESCUE_CORE_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rescue/location_set.hpp"
#include "rescue/rational.hpp"

namespace rescue {

enum class IssueCode {
  kEmpty,
  kDuplicateId,
  kUnknownId,
  kProbabilityOutOfRange,
  kTargetCountOutOfRange,
  kParameterOutOfRange,
  kSizeMismatch,
  kMissingSubset,
  kSelfLoop,
  kDuplicateEdge,
  kCycle,
  kDisconnected,
  kMissingRoot,
  kCertainLeaf,
  kTooFewVertices,
};

struct Issue {
  IssueCode code;
  std::string message;
};

// Joins issue messages with "; ".
std::string describe(const std::vector<Issue>& issues);

struct Location {
  std::string id;
  Rational p;  // probability the Searcher survives searching this location
};

// The search-and-rescue game: k targets among n locations.
struct Instance {
  std::vector<Location> locations;
  std::size_t k = 1;

  std::size_t size() const { return locations.size(); }
  // Canonical index of `id`; unknown ids are an invalid-argument error.
  std::size_t index_of(std::string_view id) const;
  std::vector<std::string> ids() const;
};

std::vector<Issue> validate(const Instance& instance);
// Throws invalid-argument listing every issue.
void require_valid(const Instance& instance);

// Location indices in search order; a permutation of {0..n-1}.
struct SearchOrder {
  std::vector<std::size_t> sequence;

  friend bool operator==(const SearchOrder&, const SearchOrder&) = default;
  friend auto operator<=>(const SearchOrder&, const SearchOrder&) = default;
};

SearchOrder identity_order(std::size_t n);
bool is_permutation_of(const SearchOrder& order, std::size_t n);

using HiderSet = LocationSet;

struct HiderMix {
  std::vector<std::pair<HiderSet, Rational>> support;
};

struct WeightedOrder {
  SearchOrder order;
  Rational weight;
};

// s_A: the block A first (ascending index), then the rest uniformly at random.
struct WeightedBlock {
  HiderSet first;
  Rational weight;
};

struct SearcherMix {
  std::variant<std::vector<WeightedOrder>, std::vector<WeightedBlock>> support;

  bool first_block_form() const { return support.index() == 1; }
};

HiderMix point_mix(HiderSet h);
SearcherMix point_mix(SearchOrder order);

// A reward function over subsets of {0..n-1}; the game payoff is f of the
// shortest searched prefix that covers the hidden set.
using SetFunction = std::function<Rational(LocationSet)>;

// f evaluated once on every subset of {0..n-1}, indexed by bitmask.
class SetFunctionTable {
 public:
  SetFunctionTable(const SetFunction& f, std::size_t n);
  std::size_t size() const { return n_; }
  const Rational& operator()(LocationSet s) const { return values_[s.bits()]; }

 private:
  std::size_t n_;
  std::vector<Rational> values_;
};

// Payoff of the pure pair (hider, order) under f.
Rational order_payoff(const SetFunction& f, HiderSet hider,
                      const SearchOrder& order);

// Exact expected payoff of a pure hider set against s_first. Uses the fact
// that, given the position of the last uncovered target in the uniformly
// random tail, the other tail elements searched before it form a uniformly
// random subset of that size.
Rational first_block_payoff(const SetFunction& f, std::size_t n,
                            HiderSet hider, HiderSet first);

// The deterministic order s_first starts with: `first` ascending.
std::vector<std::size_t> first_block_prefix(HiderSet first);

// Checks weights are positive, sum to one, sets distinct with size k and
// orders valid permutations; invalid-argument otherwise.
void check_mix(const HiderMix& mix, std::size_t n, std::size_t k);
void check_mix(const SearcherMix& mix, std::size_t n, std::size_t k);

Rational mixed_payoff(const SetFunction& f, std::size_t n, std::size_t k,
                      const HiderMix& hider, const SearcherMix& searcher);

// Rescue game operations.
SetFunction survival_function(const Instance& instance);
Rational survival(const Instance& instance, LocationSet set);
Rational survival(const Instance& instance, const std::vector<std::string>& ids);
Rational payoff(const Instance& instance, HiderSet hider,
                const SearchOrder& order);
Rational expected_payoff(const Instance& instance, const HiderMix& hider,
                         const SearcherMix& searcher);

// Id <-> index helpers.
HiderSet set_from_ids(const Instance& instance,
                      const std::vector<std::string>& ids);
SearchOrder order_from_ids(const Instance& instance,
                           const std::vector<std::string>& ids);
std::vector<std::string> ids_of(const std::vector<std::string>& ids,
                                LocationSet set);
std::vector<std::string> ids_of(const std::vector<std::string>& ids,
                                const SearchOrder& order);

}  // namespace rescue

#endif  // RESCUE_CORE_HPP_
