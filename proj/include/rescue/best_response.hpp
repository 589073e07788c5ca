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

#ifndef RESCUE_BEST_RESPONSE_HPP_
#define RESCUE_BEST_RESPONSE_HPP_

#include <cstddef>
#include <vector>

#include "rescue/core.hpp"
#include "rescue/indexable.hpp"
#include "rescue/limits.hpp"
#include "rescue/rational.hpp"

namespace rescue {

// A known single-target hider distribution x over the locations of Gamma_f.
struct ResponseProblem {
  SetFunctionSpec spec;
  std::vector<Rational> x;
};

enum class Direction { kMaximize, kMinimize };

std::vector<Issue> validate_problem(const ResponseProblem& problem);

// sum_i x_{order(i)} f(first i locations of order).
Rational response_payoff(const ResponseProblem& problem, const SearchOrder& order);

// x_i / z_i for every location.
std::vector<Rational> response_indices(const ResponseProblem& problem, const ZIndex& z);

// Locations sorted by x_i / z_i: non-increasing for kMaximize, non-decreasing
// for kMinimize, ties by ascending location index.
SearchOrder index_order(const ResponseProblem& problem, Direction direction,
                        std::size_t verify_cap = Limits{}.indexability_locations);

struct BruteForceResponse {
  SearchOrder order;
  Rational payoff;
};

// Exhaustive search over all n! orders; the lexicographically least optimal
// order wins ties. n above `max_locations` is a resource-limit error.
BruteForceResponse best_response_bruteforce(
    const ResponseProblem& problem, Direction direction,
    std::size_t max_locations = Limits{}.brute_force_locations);

}  // namespace rescue

#endif  // RESCUE_BEST_RESPONSE_HPP_
