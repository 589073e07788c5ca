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

#include "rescue/best_response.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "rescue/error.hpp"

namespace rescue {
namespace {

void require_valid(const ResponseProblem& problem) {
  const auto issues = validate_problem(problem);
  if (!issues.empty()) fail(ErrorKind::kInvalidArgument, describe(issues));
}

}  // namespace

std::vector<Issue> validate_problem(const ResponseProblem& problem) {
  std::vector<Issue> issues = validate_spec(problem.spec);
  const std::size_t n = location_count(problem.spec);
  if (problem.x.size() != n) {
    issues.push_back({IssueCode::kSizeMismatch,
                      "hider distribution has " + std::to_string(problem.x.size()) +
                          " entries for " + std::to_string(n) + " locations"});
  }
  Rational total;
  for (const Rational& w : problem.x) {
    if (w.sign() < 0) {
      issues.push_back({IssueCode::kParameterOutOfRange,
                        "hider probability " + w.to_string() + " is negative"});
    }
    total += w;
  }
  if (total != Rational(1)) {
    issues.push_back({IssueCode::kParameterOutOfRange,
                      "hider distribution sums to " + total.to_string()});
  }
  return issues;
}

Rational response_payoff(const ResponseProblem& problem, const SearchOrder& order) {
  require_valid(problem);
  const std::size_t n = problem.x.size();
  if (!is_permutation_of(order, n)) {
    fail(ErrorKind::kInvalidArgument, "search order is not a permutation of the locations");
  }
  Rational total;
  LocationSet prefix;
  for (std::size_t v : order.sequence) {
    prefix.insert(v);
    if (!problem.x[v].is_zero()) total += problem.x[v] * eval_f(problem.spec, prefix);
  }
  return total;
}

std::vector<Rational> response_indices(const ResponseProblem& problem, const ZIndex& z) {
  std::vector<Rational> out;
  out.reserve(problem.x.size());
  for (std::size_t i = 0; i < problem.x.size(); ++i) out.push_back(problem.x[i] / z.z.at(i));
  return out;
}

SearchOrder index_order(const ResponseProblem& problem, Direction direction,
                        std::size_t verify_cap) {
  require_valid(problem);
  auto result = recover_z(problem.spec, verify_cap);
  if (auto* report = std::get_if<NotIndexableReport>(&result)) {
    fail(ErrorKind::kUnsupported, "set function is not z-indexable: " + report->message);
  }
  const auto index = response_indices(problem, std::get<ZIndex>(result));
  SearchOrder order = identity_order(problem.x.size());
  std::stable_sort(order.sequence.begin(), order.sequence.end(),
                   [&](std::size_t a, std::size_t b) {
                     return direction == Direction::kMaximize ? index[a] > index[b]
                                                              : index[a] < index[b];
                   });
  return order;
}

BruteForceResponse best_response_bruteforce(const ResponseProblem& problem,
                                            Direction direction,
                                            std::size_t max_locations) {
  require_valid(problem);
  const std::size_t n = problem.x.size();
  if (n > max_locations) {
    fail(ErrorKind::kResourceLimit, "brute-force best response is capped at " +
                                        std::to_string(max_locations) + " locations, got " +
                                        std::to_string(n));
  }
  const SetFunctionTable f(as_set_function(problem.spec), n);

  std::optional<BruteForceResponse> best;
  std::vector<std::size_t> current;
  current.reserve(n);
  std::vector<bool> used(n, false);
  // Depth-first walk in lexicographic order; only a strict improvement
  // replaces the incumbent, so the first optimum found is kept.
  std::function<void(LocationSet, const Rational&)> extend =
      [&](LocationSet prefix, const Rational& partial) {
        if (current.size() == n) {
          const bool better =
              !best || (direction == Direction::kMaximize ? partial > best->payoff
                                                          : partial < best->payoff);
          if (better) best = BruteForceResponse{SearchOrder{current}, partial};
          return;
        }
        for (std::size_t v = 0; v < n; ++v) {
          if (used[v]) continue;
          used[v] = true;
          current.push_back(v);
          const LocationSet next = prefix.with(v);
          if (problem.x[v].is_zero()) {
            extend(next, partial);
          } else {
            extend(next, partial + problem.x[v] * f(next));
          }
          current.pop_back();
          used[v] = false;
        }
      };
  extend(LocationSet(), Rational(0));
  return *best;
}

}  // namespace rescue
