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

#include "rescue/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rescue/best_response.hpp"
#include "rescue/error.hpp"
#include "rescue/indexable.hpp"
#include "rescue/io.hpp"
#include "rescue/limits.hpp"
#include "rescue/oracle.hpp"
#include "rescue/tree.hpp"

namespace rescue {
namespace {

using nlohmann::json;

json number(const Rational& r) { return r.to_string(); }
json decimal(const Rational& r) { return r.to_decimal(12); }

json id_list(const std::vector<std::string>& ids) { return json(ids); }

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kInvalidSpec:
      return kExitInputError;
    case ErrorKind::kNotIndexable:
    case ErrorKind::kUnsupported:
    case ErrorKind::kUndefinedIndex:
      return kExitUnsupported;
    case ErrorKind::kResourceLimit:
    case ErrorKind::kBudgetExceeded:
      return kExitResourceLimit;
  }
  return kExitInputError;
}

// Loads and validates; semantic problems are input errors.
InstanceFile load_checked(const std::string& path) {
  InstanceFile file = load_instance_file(path);
  if (const auto* game = std::get_if<Game>(&file)) {
    const auto issues = validate_game(*game);
    if (!issues.empty()) fail(ErrorKind::kInvalidArgument, describe(issues));
  } else {
    const auto issues = validate_tree(std::get<RootedTree>(file));
    if (!issues.empty()) fail(ErrorKind::kInvalidArgument, describe(issues));
  }
  return file;
}

Rational parse_epsilon(const std::string& text) {
  Rational eps;
  if (text.find_first_of(".eE") != std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      fail(ErrorKind::kInvalidArgument, "malformed epsilon '" + text + "'");
    }
    if (used != text.size()) fail(ErrorKind::kInvalidArgument, "malformed epsilon '" + text + "'");
    eps = Rational::from_double(v);
  } else {
    eps = Rational::parse(text);
  }
  if (eps.sign() <= 0) fail(ErrorKind::kInvalidArgument, "epsilon must be positive");
  return eps;
}

json game_report(const Game& game, const GameSolution& solution, bool cost_view) {
  json out;
  out["kind"] = std::string(family_name(game.spec));
  out["provenance"] = solution.provenance == Provenance::kClosedForm ? "closed-form" : "oracle";
  out["value"] = number(solution.value);
  out["value_decimal"] = decimal(solution.value);
  if (cost_view) {
    // The solver maximizes the cost not yet paid; show what is actually paid.
    Rational unsearched = eval_f(game.spec, LocationSet());
    if (std::holds_alternative<TravelSearch>(game.spec)) unsearched -= Rational(1);
    if (std::holds_alternative<AdditiveCost>(game.spec) ||
        std::holds_alternative<TravelSearch>(game.spec)) {
      out["expected_cost_paid"] = number(unsearched - solution.value);
      out["expected_cost_paid_decimal"] = decimal(unsearched - solution.value);
    }
  }
  out["z"] = json::array();
  for (std::size_t i = 0; i < game.size(); ++i) {
    out["z"].push_back({{"id", game.ids[i]}, {"z", number(solution.z.z[i])}});
  }
  out["hider"] = json::array();
  for (const auto& [set, w] : solution.hider.support) {
    out["hider"].push_back({{"set", id_list(ids_of(game.ids, set))},
                            {"probability", number(w)},
                            {"decimal", decimal(w)}});
  }
  json blocks = json::array();
  for (const WeightedBlock& b : std::get<std::vector<WeightedBlock>>(solution.searcher.support)) {
    blocks.push_back({{"first", id_list(ids_of(game.ids, b.first))},
                      {"probability", number(b.weight)},
                      {"decimal", decimal(b.weight)}});
  }
  out["searcher"] = {{"form", "first-block"},
                     {"rest", "uniformly random order"},
                     {"blocks", blocks}};
  out["instance"] = to_json(InstanceFile(game));
  return out;
}

json tree_report(const RootedTree& data, const TreeSolution& solution) {
  json out;
  out["kind"] = "tree";
  out["value"] = number(solution.value);
  out["value_decimal"] = decimal(solution.value);
  out["hider"] = json::array();
  for (const auto& [id, w] : solution.hider.entries()) {
    out["hider"].push_back({{"id", id}, {"probability", number(w)}, {"decimal", decimal(w)}});
  }
  out["branch_choices"] = json::array();
  for (const auto& [vertex, first] : solution.first_branch) {
    const Rational& q = solution.branch_choice.at(vertex);
    out["branch_choices"].push_back({{"vertex", vertex},
                                     {"first_branch", first},
                                     {"probability", number(q)},
                                     {"decimal", decimal(q)},
                                     {"lambda", number(solution.lambdas.at(vertex))}});
  }
  out["subtree_values"] = json::array();
  for (const auto& [id, v] : solution.subtree_values.entries()) {
    out["subtree_values"].push_back({{"id", id}, {"value", number(v)}});
  }
  if (solution.normalized.tree.vertices.size() != data.vertices.size()) {
    out["normalized"] = to_json(InstanceFile(solution.normalized.tree));
  }
  out["instance"] = to_json(InstanceFile(data));
  return out;
}

json verify_report(const VerifyReport& report) {
  json out;
  out["pass"] = report.pass;
  out["mode"] = report.oracle_only ? "oracle-only" : "closed-form vs oracle";
  out["oracle_value"] = number(report.oracle_value);
  out["oracle_value_decimal"] = decimal(report.oracle_value);
  if (report.closed_form_value) {
    out["closed_form_value"] = number(*report.closed_form_value);
    out["difference"] = number(abs(*report.closed_form_value - report.oracle_value));
  }
  out["epsilon"] = number(report.epsilon);
  out["matrix"] = {{"rows", report.rows}, {"cols", report.cols}};
  out["failures"] = report.failures;
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string line;
  for (const std::string& id : ids) {
    if (!line.empty()) line += ' ';
    line += id;
  }
  return line;
}

int cmd_solve(const std::string& path, bool cost_view, std::ostream& out) {
  const InstanceFile file = load_checked(path);
  if (const auto* game = std::get_if<Game>(&file)) {
    const GameSolution solution =
        solve_closed_form(game->spec, game->k, Limits::from_env().indexability_locations);
    out << game_report(*game, solution, cost_view).dump(2) << '\n';
  } else {
    const RootedTree& data = std::get<RootedTree>(file);
    out << tree_report(data, solve_tree(Tree(data))).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_best_response(const std::string& path, const std::string& hider_path, bool minimize,
                      std::ostream& out) {
  const InstanceFile file = load_checked(path);
  const auto* game = std::get_if<Game>(&file);
  if (game == nullptr) fail(ErrorKind::kUnsupported, "best-response supports unstructured games only");
  if (game->k != 1) fail(ErrorKind::kUnsupported, "best-response needs k = 1");

  const json doc = load_json(hider_path);
  if (!doc.is_object()) fail(ErrorKind::kInvalidArgument, "hider file must map ids to probabilities");
  ResponseProblem problem{game->spec, std::vector<Rational>(game->size())};
  for (const auto& [id, value] : doc.items()) {
    const auto it = std::find(game->ids.begin(), game->ids.end(), id);
    if (it == game->ids.end()) fail(ErrorKind::kInvalidArgument, "hider file: unknown id '" + id + "'");
    problem.x[static_cast<std::size_t>(it - game->ids.begin())] =
        parse_rational_field(value, "hider." + id);
  }
  const auto issues = validate_problem(problem);
  if (!issues.empty()) fail(ErrorKind::kInvalidArgument, describe(issues));

  const Direction direction = minimize ? Direction::kMinimize : Direction::kMaximize;
  const std::size_t cap = Limits::from_env().indexability_locations;
  const SearchOrder order = index_order(problem, direction, cap);
  const auto index = response_indices(problem, require_z(problem.spec, cap));
  const Rational payoff = response_payoff(problem, order);

  json report;
  report["direction"] = minimize ? "minimize" : "maximize";
  report["indices"] = json::array();
  for (std::size_t i = 0; i < game->size(); ++i) {
    report["indices"].push_back(
        {{"id", game->ids[i]}, {"index", number(index[i])}, {"decimal", decimal(index[i])}});
  }
  report["order"] = ids_of(game->ids, order);
  report["payoff"] = number(payoff);
  report["payoff_decimal"] = decimal(payoff);
  out << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& epsilon_text, bool oracle,
               bool all_vertices, std::ostream& out) {
  const Rational epsilon = parse_epsilon(epsilon_text);
  const Limits limits = Limits::from_env();
  const InstanceFile file = load_checked(path);
  VerifyReport report;
  if (const auto* game = std::get_if<Game>(&file)) {
    report = oracle ? oracle_only(*game, epsilon, limits)
                    : verify(*game,
                             solve_closed_form(game->spec, game->k, limits.indexability_locations),
                             epsilon, limits);
  } else {
    const Tree tree(std::get<RootedTree>(file));
    report = oracle ? oracle_only(tree, epsilon, all_vertices, limits)
                    : verify(tree, solve_tree(tree), epsilon, all_vertices, limits);
  }
  out << verify_report(report).dump(2) << '\n';
  return report.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_sample(const std::string& path, std::uint64_t seed, std::size_t count, std::ostream& out) {
  const InstanceFile file = load_checked(path);
  std::mt19937_64 rng(seed);
  if (const auto* game = std::get_if<Game>(&file)) {
    const GameSolution solution =
        solve_closed_form(game->spec, game->k, Limits::from_env().indexability_locations);
    for (std::size_t i = 0; i < count; ++i) {
      out << join_ids(ids_of(game->ids, sample_order(solution, game->size(), rng))) << '\n';
    }
  } else {
    const Tree tree(std::get<RootedTree>(file));
    const TreeSolution solution = solve_tree(tree);
    const auto ids = tree.ids();
    for (std::size_t i = 0; i < count; ++i) {
      const ExpandingSearch s = sample_search(tree, solution, rng);
      std::vector<std::string> line;
      for (std::size_t v : s.sequence) line.push_back(ids[v]);
      out << join_ids(line) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solver for search-and-rescue games", "rescue-games"};
  app.require_subcommand(1);

  std::string path;
  bool cost_view = false;
  auto* solve = app.add_subcommand("solve", "Closed-form value and optimal strategies");
  solve->add_option("file", path, "Instance file (JSON)")->required();
  solve->add_flag("--cost-view", cost_view,
                  "Also report the expected cost paid (additive, travel-search)");

  std::string hider_path;
  bool minimize = false;
  auto* best = app.add_subcommand("best-response", "Index-rule best response to a known hider");
  best->add_option("file", path, "Instance file (JSON)")->required();
  best->add_option("--hider", hider_path, "JSON object mapping ids to probabilities")->required();
  best->add_flag("--min", minimize, "Minimize instead of maximize");

  std::string epsilon = "1/1000000000";
  bool oracle = false;
  bool all_vertices = false;
  auto* check = app.add_subcommand("verify", "Check the closed form against the matrix-game oracle");
  check->add_option("file", path, "Instance file (JSON)")->required();
  check->add_option("--epsilon", epsilon, "Tolerance for the value comparison")->capture_default_str();
  check->add_flag("--oracle-only", oracle, "Only solve the payoff matrix");
  check->add_flag("--all-vertices", all_vertices,
                  "Tree games: let the hider use every vertex, not only leaves");

  std::uint64_t seed = 1;
  std::size_t count = 1;
  auto* sample = app.add_subcommand("sample", "Draw pure searches from the optimal searcher mix");
  sample->add_option("file", path, "Instance file (JSON)")->required();
  sample->add_option("--seed", seed, "Random seed")->capture_default_str();
  sample->add_option("--count", count, "Number of searches")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(path, cost_view, out);
    if (best->parsed()) return cmd_best_response(path, hider_path, minimize, out);
    if (check->parsed()) return cmd_verify(path, epsilon, oracle, all_vertices, out);
    return cmd_sample(path, seed, count, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    if (e.kind() == ErrorKind::kUnsupported && check->parsed() == false) {
      err << "hint: `rescue-games verify --oracle-only` solves the payoff matrix directly\n";
    }
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace rescue
