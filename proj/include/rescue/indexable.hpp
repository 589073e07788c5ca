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

#ifndef RESCUE_INDEXABLE_HPP_
#define RESCUE_INDEXABLE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rescue/core.hpp"
#include "rescue/limits.hpp"
#include "rescue/location_set.hpp"
#include "rescue/rational.hpp"

namespace rescue {

// f(A) = prod_{i in A} p_i.
struct Rescue {
  std::vector<Rational> p;
};

// Rescue with every p_i replaced by gamma * p_i.
struct DiscountedRescue {
  std::vector<Rational> p;
  Rational gamma;
};

// f(A) = sum of costs of locations not yet searched.
struct AdditiveCost {
  std::vector<Rational> c;
};

// Complete graph with unit travel: f(A) = |S - A| + sum_{i not in A} c_i.
struct TravelSearch {
  std::vector<Rational> c;
};

// f given on every subset, indexed by bitmask.
struct ExplicitTable {
  std::size_t n = 0;
  std::vector<std::optional<Rational>> values;

  explicit ExplicitTable(std::size_t locations = 0)
      : n(locations), values(std::size_t{1} << locations) {}
  void set(LocationSet s, Rational v) { values.at(s.bits()) = std::move(v); }
};

using SetFunctionSpec =
    std::variant<Rescue, DiscountedRescue, AdditiveCost, TravelSearch, ExplicitTable>;

std::size_t location_count(const SetFunctionSpec& spec);
std::string_view family_name(const SetFunctionSpec& spec);
std::vector<Issue> validate_spec(const SetFunctionSpec& spec);

Rational eval_f(const SetFunctionSpec& spec, LocationSet set);
// f(A + i) - f(A); i in A is an invalid-argument error.
Rational marginal(const SetFunctionSpec& spec, LocationSet set, std::size_t i);
SetFunction as_set_function(const SetFunctionSpec& spec);

// Index vector, scaled so that z[0] == 1.
struct ZIndex {
  std::vector<Rational> z;
};

enum class IndexabilityViolation {
  kNotPositive,
  kNotStrictlyDecreasing,
  kRatioMismatch,
  kTooLarge,
};

struct NotIndexableReport {
  IndexabilityViolation reason;
  LocationSet subset;  // witness A
  std::optional<std::size_t> i;
  std::optional<std::size_t> j;
  std::string message;
};

using IndexabilityResult = std::variant<ZIndex, NotIndexableReport>;

// Recovers z and checks the pairwise marginal ratio condition exhaustively
// when n <= verify_cap. Closed families beyond the cap fall back to their
// analytic z; explicit tables beyond it are rejected.
IndexabilityResult recover_z(const SetFunctionSpec& spec,
                             std::size_t verify_cap = Limits{}.indexability_locations);
// recover_z, throwing not-indexable with the report's message on failure.
ZIndex require_z(const SetFunctionSpec& spec,
                 std::size_t verify_cap = Limits{}.indexability_locations);

// Elementary symmetric polynomial of degree k in {z_i : i in set}.
Rational t_poly(const ZIndex& z, LocationSet set, std::size_t k);

enum class Provenance { kClosedForm, kOracle };

struct GameSolution {
  Rational value;
  HiderMix hider;
  SearcherMix searcher;  // first-block form
  Provenance provenance = Provenance::kClosedForm;
  ZIndex z;
};

// An unstructured game Gamma_f as loaded from an instance file.
struct Game {
  std::vector<std::string> ids;
  std::size_t k = 1;
  SetFunctionSpec spec;

  std::size_t size() const { return ids.size(); }
};

// Id uniqueness, spec validity, matching sizes. Target count is checked only
// when `for_solving` (k = n is fine for evaluating f).
std::vector<Issue> validate_game(const Game& game, bool for_solving = true);
Game as_game(const Instance& instance);
// Rescue games only; invalid-argument otherwise.
Instance as_instance(const Game& game);

GameSolution solve_closed_form(const SetFunctionSpec& spec, std::size_t k,
                               std::size_t verify_cap = Limits{}.indexability_locations);

// lambda_1 * (1 - prod p) for the single-target rescue game.
Rational value_k1(const SetFunctionSpec& spec);

// Draws a pure order from the first-block searcher mix: a block by weight,
// the block ascending, then the rest uniformly shuffled.
SearchOrder sample_order(const GameSolution& solution, std::size_t n,
                         std::mt19937_64& rng);

}  // namespace rescue

#endif  // RESCUE_INDEXABLE_HPP_
