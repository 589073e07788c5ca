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

#include "rescue/indexable.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "rescue/error.hpp"
#include "rescue/random.hpp"

namespace rescue {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Rational product_over(const std::vector<Rational>& values, LocationSet set,
                      const Rational& scale = Rational(1)) {
  Rational product(1);
  for (std::size_t i : set.members()) product *= scale * values[i];
  return product;
}

Rational sum_outside(const std::vector<Rational>& values, LocationSet set,
                     const Rational& shift = Rational(0)) {
  Rational sum;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!set.contains(i)) sum += shift + values[i];
  }
  return sum;
}

void check_probabilities(const std::vector<Rational>& p, std::vector<Issue>& issues) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].sign() <= 0 || p[i] >= Rational(1)) {
      issues.push_back({IssueCode::kProbabilityOutOfRange,
                        "p[" + std::to_string(i) + "] = " + p[i].to_string() +
                            " must lie strictly between 0 and 1"});
    }
  }
}

void check_costs(const std::vector<Rational>& c, std::vector<Issue>& issues) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].sign() <= 0) {
      issues.push_back({IssueCode::kParameterOutOfRange,
                        "cost[" + std::to_string(i) + "] = " + c[i].to_string() +
                            " must be positive"});
    }
  }
}

std::optional<std::vector<Rational>> analytic_z(const SetFunctionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Rescue& s) -> std::optional<std::vector<Rational>> {
            std::vector<Rational> z;
            for (const Rational& p : s.p) z.push_back((Rational(1) - p) / p);
            return z;
          },
          [](const DiscountedRescue& s) -> std::optional<std::vector<Rational>> {
            std::vector<Rational> z;
            for (const Rational& p : s.p) z.push_back((Rational(1) - s.gamma * p) / p);
            return z;
          },
          [](const AdditiveCost& s) -> std::optional<std::vector<Rational>> {
            return s.c;
          },
          [](const TravelSearch& s) -> std::optional<std::vector<Rational>> {
            std::vector<Rational> z;
            for (const Rational& c : s.c) z.push_back(Rational(1) + c);
            return z;
          },
          [](const ExplicitTable&) -> std::optional<std::vector<Rational>> {
            return std::nullopt;
          },
      },
      spec);
}

ZIndex normalized(std::vector<Rational> z) {
  const Rational first = z.front();
  for (Rational& v : z) v /= first;
  return ZIndex{std::move(z)};
}

std::string set_text(LocationSet s) {
  std::string out = "{";
  for (std::size_t i : s.members()) {
    if (out.size() > 1) out += ",";
    out += std::to_string(i + 1);
  }
  return out + "}";
}

// Positivity (tables only) and strict decrease along every covering pair.
std::optional<NotIndexableReport> check_monotone(const SetFunctionTable& f,
                                                 bool require_positive) {
  const std::size_t n = f.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const LocationSet a(mask);
    if (require_positive && f(a).sign() <= 0) {
      return NotIndexableReport{IndexabilityViolation::kNotPositive, a, std::nullopt,
                                std::nullopt,
                                "f" + set_text(a) + " = " + f(a).to_string() +
                                    " is not positive"};
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (a.contains(i)) continue;
      if (!(f(a.with(i)) < f(a))) {
        return NotIndexableReport{
            IndexabilityViolation::kNotStrictlyDecreasing, a, i, std::nullopt,
            "f is not strictly decreasing: marginal of location " +
                std::to_string(i + 1) + " at A = " + set_text(a) + " is " +
                (f(a.with(i)) - f(a)).to_string()};
      }
    }
  }
  return std::nullopt;
}

std::optional<NotIndexableReport> check_ratios(const SetFunctionTable& f,
                                               const std::vector<Rational>& z) {
  const std::size_t n = f.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const LocationSet a(mask);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.contains(i)) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (a.contains(j)) continue;
        const LocationSet both = a.with(i).with(j);
        const Rational fi = f(both) - f(a.with(j));  // f_{A+j}(i)
        const Rational fj = f(both) - f(a.with(i));  // f_{A+i}(j)
        if (fi * z[j] != fj * z[i]) {
          return NotIndexableReport{
              IndexabilityViolation::kRatioMismatch, a, i, j,
              "marginal ratio at A = " + set_text(a) + ", i = " +
                  std::to_string(i + 1) + ", j = " + std::to_string(j + 1) +
                  " is " + (fi / fj).to_string() + ", expected " +
                  (z[i] / z[j]).to_string()};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t location_count(const SetFunctionSpec& spec) {
  return std::visit(Overloaded{
                        [](const Rescue& s) { return s.p.size(); },
                        [](const DiscountedRescue& s) { return s.p.size(); },
                        [](const AdditiveCost& s) { return s.c.size(); },
                        [](const TravelSearch& s) { return s.c.size(); },
                        [](const ExplicitTable& s) { return s.n; },
                    },
                    spec);
}

std::string_view family_name(const SetFunctionSpec& spec) {
  return std::visit(Overloaded{
                        [](const Rescue&) { return std::string_view("rescue"); },
                        [](const DiscountedRescue&) { return std::string_view("discounted"); },
                        [](const AdditiveCost&) { return std::string_view("additive"); },
                        [](const TravelSearch&) { return std::string_view("travel-search"); },
                        [](const ExplicitTable&) { return std::string_view("table"); },
                    },
                    spec);
}

std::vector<Issue> validate_spec(const SetFunctionSpec& spec) {
  std::vector<Issue> issues;
  if (location_count(spec) == 0) {
    issues.push_back({IssueCode::kEmpty, "set function has no locations"});
  }
  if (location_count(spec) > LocationSet::kMaxSize) {
    issues.push_back({IssueCode::kSizeMismatch, "at most 64 locations are supported"});
  }
  std::visit(
      Overloaded{
          [&](const Rescue& s) { check_probabilities(s.p, issues); },
          [&](const DiscountedRescue& s) {
            check_probabilities(s.p, issues);
            if (s.gamma.sign() <= 0 || s.gamma > Rational(1)) {
              issues.push_back({IssueCode::kParameterOutOfRange,
                                "gamma = " + s.gamma.to_string() + " must lie in (0,1]"});
            }
            for (const Rational& p : s.p) {
              if (s.gamma * p >= Rational(1)) {
                issues.push_back({IssueCode::kParameterOutOfRange,
                                  "gamma * p must be below 1"});
                break;
              }
            }
          },
          [&](const AdditiveCost& s) { check_costs(s.c, issues); },
          [&](const TravelSearch& s) { check_costs(s.c, issues); },
          [&](const ExplicitTable& s) {
            if (s.values.size() != (std::size_t{1} << s.n)) {
              issues.push_back({IssueCode::kSizeMismatch, "table size is not 2^n"});
              return;
            }
            for (std::size_t mask = 0; mask < s.values.size(); ++mask) {
              if (!s.values[mask]) {
                issues.push_back({IssueCode::kMissingSubset,
                                  "table has no value for subset " +
                                      set_text(LocationSet(mask))});
              }
            }
          },
      },
      spec);
  return issues;
}

Rational eval_f(const SetFunctionSpec& spec, LocationSet set) {
  if (!set.subset_of(LocationSet::all(location_count(spec)))) {
    fail(ErrorKind::kInvalidArgument, "subset references an unknown location");
  }
  return std::visit(
      Overloaded{
          [&](const Rescue& s) { return product_over(s.p, set); },
          [&](const DiscountedRescue& s) { return product_over(s.p, set, s.gamma); },
          [&](const AdditiveCost& s) { return sum_outside(s.c, set); },
          [&](const TravelSearch& s) { return sum_outside(s.c, set, Rational(1)); },
          [&](const ExplicitTable& s) {
            const auto& v = s.values.at(set.bits());
            if (!v) fail(ErrorKind::kInvalidSpec, "table has no value for subset " + set_text(set));
            return *v;
          },
      },
      spec);
}

Rational marginal(const SetFunctionSpec& spec, LocationSet set, std::size_t i) {
  if (i >= location_count(spec)) {
    fail(ErrorKind::kInvalidArgument, "unknown location index " + std::to_string(i));
  }
  if (set.contains(i)) {
    fail(ErrorKind::kInvalidArgument, "location " + std::to_string(i + 1) + " is already in the set");
  }
  return eval_f(spec, set.with(i)) - eval_f(spec, set);
}

SetFunction as_set_function(const SetFunctionSpec& spec) {
  return [spec](LocationSet set) { return eval_f(spec, set); };
}

IndexabilityResult recover_z(const SetFunctionSpec& spec, std::size_t verify_cap) {
  const std::size_t n = location_count(spec);
  if (n < 2) fail(ErrorKind::kInvalidArgument, "indexability needs at least two locations");
  const auto issues = validate_spec(spec);
  if (!issues.empty()) fail(ErrorKind::kInvalidSpec, describe(issues));

  const bool table = std::holds_alternative<ExplicitTable>(spec);
  std::optional<std::vector<Rational>> z = analytic_z(spec);
  if (n > verify_cap) {
    if (z) return normalized(std::move(*z));
    return NotIndexableReport{IndexabilityViolation::kTooLarge, LocationSet(), std::nullopt,
                              std::nullopt,
                              "explicit table with " + std::to_string(n) +
                                  " locations exceeds the verification cap of " +
                                  std::to_string(verify_cap)};
  }

  const SetFunctionTable f(as_set_function(spec), n);
  if (auto report = check_monotone(f, table)) return *report;
  if (!z) {
    // z_1 = 1; the empty-set ratio fixes every other entry.
    const LocationSet first{0};
    z = std::vector<Rational>{Rational(1)};
    for (std::size_t j = 1; j < n; ++j) {
      const LocationSet pair = first.with(j);
      const Rational fj = f(pair) - f(first);                // f_{1}(j)
      const Rational f1 = f(pair) - f(LocationSet{j});       // f_{j}(1)
      z->push_back(fj / f1);
    }
  }
  if (auto report = check_ratios(f, *z)) return *report;
  return normalized(std::move(*z));
}

ZIndex require_z(const SetFunctionSpec& spec, std::size_t verify_cap) {
  auto result = recover_z(spec, verify_cap);
  if (auto* report = std::get_if<NotIndexableReport>(&result)) {
    fail(ErrorKind::kNotIndexable, report->message);
  }
  return std::get<ZIndex>(std::move(result));
}

Rational t_poly(const ZIndex& z, LocationSet set, std::size_t k) {
  if (!set.subset_of(LocationSet::all(z.z.size()))) {
    fail(ErrorKind::kInvalidArgument, "subset references an unknown location");
  }
  if (k > set.size()) {
    fail(ErrorKind::kInvalidArgument, "degree " + std::to_string(k) +
                                          " exceeds the set size " + std::to_string(set.size()));
  }
  std::vector<Rational> e(k + 1);
  e[0] = Rational(1);
  std::size_t seen = 0;
  for (std::size_t i : set.members()) {
    ++seen;
    for (std::size_t d = std::min(seen, k); d >= 1; --d) e[d] += e[d - 1] * z.z[i];
  }
  return e[k];
}

std::vector<Issue> validate_game(const Game& game, bool for_solving) {
  std::vector<Issue> issues = validate_spec(game.spec);
  const std::size_t n = game.ids.size();
  std::set<std::string> seen;
  for (const std::string& id : game.ids) {
    if (!seen.insert(id).second) {
      issues.push_back({IssueCode::kDuplicateId, "duplicate id '" + id + "'"});
    }
  }
  if (location_count(game.spec) != n) {
    issues.push_back({IssueCode::kSizeMismatch,
                      "set function covers " + std::to_string(location_count(game.spec)) +
                          " locations but " + std::to_string(n) + " ids are listed"});
  }
  const std::size_t max_k = for_solving ? (n == 0 ? 0 : n - 1) : n;
  if (game.k < 1 || game.k > max_k) {
    issues.push_back({IssueCode::kTargetCountOutOfRange,
                      "k = " + std::to_string(game.k) + " must satisfy 1 <= k <= " +
                          (for_solving ? std::string("n-1") : std::string("n")) +
                          " with n = " + std::to_string(n)});
  }
  return issues;
}

Game as_game(const Instance& instance) {
  Game game;
  game.k = instance.k;
  Rescue rescue;
  for (const Location& loc : instance.locations) {
    game.ids.push_back(loc.id);
    rescue.p.push_back(loc.p);
  }
  game.spec = std::move(rescue);
  return game;
}

Instance as_instance(const Game& game) {
  const auto* rescue = std::get_if<Rescue>(&game.spec);
  if (rescue == nullptr || rescue->p.size() != game.ids.size()) {
    fail(ErrorKind::kInvalidArgument, "only rescue games convert to an instance");
  }
  Instance instance;
  instance.k = game.k;
  for (std::size_t i = 0; i < game.ids.size(); ++i) {
    instance.locations.push_back({game.ids[i], rescue->p[i]});
  }
  return instance;
}

GameSolution solve_closed_form(const SetFunctionSpec& spec, std::size_t k,
                               std::size_t verify_cap) {
  const std::size_t n = location_count(spec);
  if (k < 1 || k + 1 > n) {
    fail(ErrorKind::kInvalidArgument, "k = " + std::to_string(k) +
                                          " must satisfy 1 <= k <= n-1 with n = " +
                                          std::to_string(n));
  }
  auto result = recover_z(spec, verify_cap);
  if (auto* report = std::get_if<NotIndexableReport>(&result)) {
    fail(ErrorKind::kUnsupported, "set function is not z-indexable: " + report->message);
  }
  GameSolution solution;
  solution.z = std::get<ZIndex>(std::move(result));
  const LocationSet all = LocationSet::all(n);
  const Rational total = t_poly(solution.z, all, k);

  std::vector<WeightedBlock> blocks;
  for (LocationSet a : subsets_of_size(n, k)) {
    Rational weight(1);
    for (std::size_t i : a.members()) weight *= solution.z.z[i];
    weight /= total;
    solution.hider.support.emplace_back(a, weight);
    blocks.push_back({a, weight});
  }
  solution.searcher.support = std::move(blocks);

  // Every order earns the same against the hider mix; the identity order
  // covers A exactly when its largest member has been searched.
  for (const auto& [a, weight] : solution.hider.support) {
    const std::size_t last = a.members().back();
    solution.value += weight * eval_f(spec, LocationSet::all(last + 1));
  }
  solution.provenance = Provenance::kClosedForm;
  return solution;
}

Rational value_k1(const SetFunctionSpec& spec) {
  std::vector<Rational> p;
  if (const auto* s = std::get_if<Rescue>(&spec)) {
    p = s->p;
  } else if (const auto* d = std::get_if<DiscountedRescue>(&spec)) {
    for (const Rational& v : d->p) p.push_back(d->gamma * v);
  } else {
    fail(ErrorKind::kUnsupported, "value_k1 applies to rescue games only");
  }
  const auto issues = validate_spec(spec);
  if (!issues.empty()) fail(ErrorKind::kInvalidSpec, describe(issues));
  if (p.size() < 2) fail(ErrorKind::kInvalidArgument, "k = 1 needs at least two locations");
  Rational index_sum;
  Rational all(1);
  for (const Rational& v : p) {
    index_sum += (Rational(1) - v) / v;
    all *= v;
  }
  return (Rational(1) - all) / index_sum;
}

SearchOrder sample_order(const GameSolution& solution, std::size_t n, std::mt19937_64& rng) {
  const auto& blocks = std::get<std::vector<WeightedBlock>>(solution.searcher.support);
  const double u = uniform_unit(rng);
  double cumulative = 0.0;
  LocationSet chosen = blocks.back().first;
  for (const WeightedBlock& b : blocks) {
    cumulative += b.weight.to_double();
    if (u < cumulative) {
      chosen = b.first;
      break;
    }
  }
  SearchOrder order;
  order.sequence = chosen.members();
  std::vector<std::size_t> rest = (LocationSet::all(n) - chosen).members();
  for (std::size_t i = rest.size(); i > 1; --i) {
    std::swap(rest[i - 1], rest[uniform_index(rng, i)]);
  }
  order.sequence.insert(order.sequence.end(), rest.begin(), rest.end());
  return order;
}

}  // namespace rescue
