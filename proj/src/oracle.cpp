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

#include "rescue/oracle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "rescue/error.hpp"

namespace rescue {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& s : parts) {
    if (!out.empty()) out += ",";
    out += s;
  }
  return out;
}

void check_entry_cap(const Rational& rows, std::size_t cols, const Limits& limits,
                     const std::string& what) {
  const Rational entries = rows * Rational(static_cast<std::int64_t>(cols));
  if (entries > Rational(static_cast<std::int64_t>(limits.matrix_entries))) {
    fail(ErrorKind::kResourceLimit, what + " payoff matrix would have " + entries.to_string() +
                                        " entries, cap is " +
                                        std::to_string(limits.matrix_entries));
  }
}

// Exact simplex for  max sum(w)  s.t.  B w <= 1, w >= 0  with B > 0, using
// Bland's rule. Returns primal w and the duals of the row constraints.
struct PackingSolution {
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective;
};

PackingSolution solve_packing(const std::vector<std::vector<Rational>>& b,
                              std::size_t& pivots, std::size_t max_pivots) {
  const std::size_t m = b.size();
  const std::size_t n = b.front().size();
  const std::size_t width = n + m;
  // tableau[i] = [coefficients..., rhs]; row m is the objective row.
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = b[i][j];
    t[i][n + i] = Rational(1);
    t[i][width] = Rational(1);
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = Rational(-1);

  while (true) {
    std::size_t entering = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (t[m][j].sign() < 0) {
        entering = j;
        break;
      }
    }
    if (entering == width) break;
    std::size_t leaving = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][entering].sign() <= 0) continue;
      const Rational ratio = t[i][width] / t[i][entering];
      if (leaving == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving == m) fail(ErrorKind::kBudgetExceeded, "restricted game LP is unbounded");
    if (++pivots > max_pivots) {
      fail(ErrorKind::kBudgetExceeded, "simplex pivot budget exhausted");
    }
    const Rational pivot = t[leaving][entering];
    for (Rational& cell : t[leaving]) cell /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leaving || t[i][entering].is_zero()) continue;
      const Rational factor = t[i][entering];
      for (std::size_t j = 0; j <= width; ++j) {
        if (!t[leaving][j].is_zero()) t[i][j] -= factor * t[leaving][j];
      }
    }
    basis[leaving] = entering;
  }

  PackingSolution out;
  out.primal.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.primal[basis[i]] = t[i][width];
  }
  for (std::size_t i = 0; i < m; ++i) out.dual.push_back(t[m][n + i]);
  out.objective = t[m][width];
  return out;
}

// The payoff matrix over a common denominator, for fast exact row scans.
struct ScaledMatrix {
  std::vector<std::vector<mpz_class>> numerators;
  mpz_class denominator;
  std::vector<std::vector<double>> approx;
  double magnitude = 0.0;
};

ScaledMatrix scale(const MatrixGame& game) {
  ScaledMatrix s;
  s.denominator = 1;
  for (const auto& row : game.payoffs) {
    for (const Rational& v : row) {
      mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(),
              v.raw().get_den_mpz_t());
    }
  }
  for (const auto& row : game.payoffs) {
    auto& out = s.numerators.emplace_back();
    auto& approx = s.approx.emplace_back();
    out.reserve(row.size());
    approx.reserve(row.size());
    for (const Rational& v : row) {
      out.push_back(v.raw().get_num() * (s.denominator / v.raw().get_den()));
      approx.push_back(v.to_double());
      s.magnitude = std::max(s.magnitude, std::abs(approx.back()));
    }
  }
  return s;
}

Rational from_mpq(const mpq_class& q) { return Rational::parse(q.get_str()); }

// Largest exact row payoff against `col_mix`, scanning only rows whose
// floating-point estimate is within a generous margin of the best estimate.
std::pair<std::size_t, Rational> best_row(const ScaledMatrix& s,
                                          const std::vector<Rational>& col_mix) {
  const std::size_t cols = col_mix.size();
  std::vector<double> y(cols);
  mpz_class common = 1;
  for (std::size_t c = 0; c < cols; ++c) {
    y[c] = col_mix[c].to_double();
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), col_mix[c].raw().get_den_mpz_t());
  }
  std::vector<mpz_class> weights(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    weights[c] = col_mix[c].raw().get_num() * (common / col_mix[c].raw().get_den());
  }
  std::vector<double> estimate(s.approx.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < s.approx.size(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += s.approx[r][c] * y[c];
    estimate[r] = acc;
    top = std::max(top, acc);
  }
  const double margin = 1e-7 * (1.0 + s.magnitude);
  std::size_t best = s.approx.size();
  mpz_class best_value;
  mpz_class acc;
  for (std::size_t r = 0; r < s.approx.size(); ++r) {
    if (estimate[r] < top - margin) continue;
    acc = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (weights[c] != 0) acc += s.numerators[r][c] * weights[c];
    }
    if (best == s.approx.size() || acc > best_value) {
      best = r;
      best_value = acc;
    }
  }
  mpq_class value(best_value, s.denominator * common);
  value.canonicalize();
  return {best, from_mpq(value)};
}

}  // namespace

MatrixGame build_matrix_unstructured(const Game& game, const Limits& limits) {
  const auto issues = validate_game(game);
  if (!issues.empty()) fail(ErrorKind::kInvalidArgument, describe(issues));
  const std::size_t n = game.size();
  Rational orders(1);
  for (std::size_t i = 2; i <= n; ++i) orders *= Rational(static_cast<std::int64_t>(i));
  const auto columns = subsets_of_size(n, game.k);
  check_entry_cap(orders, columns.size(), limits, "unstructured");

  const SetFunctionTable f(as_set_function(game.spec), n);
  MatrixGame m;
  for (LocationSet c : columns) m.col_labels.push_back("{" + join(ids_of(game.ids, c)) + "}");
  SearchOrder order = identity_order(n);
  std::vector<LocationSet> prefix(n);
  std::vector<std::size_t> position(n);
  do {
    LocationSet seen;
    for (std::size_t t = 0; t < n; ++t) {
      seen.insert(order.sequence[t]);
      prefix[t] = seen;
      position[order.sequence[t]] = t;
    }
    auto& row = m.payoffs.emplace_back();
    row.reserve(columns.size());
    for (LocationSet c : columns) {
      std::size_t last = 0;
      for (std::size_t i : c.members()) last = std::max(last, position[i]);
      row.push_back(f(prefix[last]));
    }
    m.row_labels.push_back(join(ids_of(game.ids, order)));
  } while (std::next_permutation(order.sequence.begin(), order.sequence.end()));
  return m;
}

MatrixGame build_matrix_unstructured(const Instance& instance, const Limits& limits) {
  require_valid(instance);
  return build_matrix_unstructured(as_game(instance), limits);
}

MatrixGame build_matrix_tree(const Tree& tree, bool all_vertices, const Limits& limits) {
  std::vector<std::size_t> columns;
  if (all_vertices) {
    columns.resize(tree.size());
    std::iota(columns.begin(), columns.end(), std::size_t{0});
  } else {
    columns = tree.leaves();
  }
  const Rational count = count_expanding_searches(tree);
  check_entry_cap(count, columns.size(), limits, "tree");
  const auto searches = enumerate_expanding_searches(tree, limits.expanding_searches);

  MatrixGame m;
  for (std::size_t v : columns) m.col_labels.push_back(tree.id(v));
  std::vector<Rational> prefix(tree.size());
  for (const ExpandingSearch& s : searches) {
    Rational running(1);
    std::vector<std::string> label;
    for (std::size_t v : s.sequence) {
      running *= tree.p(v);
      prefix[v] = running;
      label.push_back(tree.id(v));
    }
    auto& row = m.payoffs.emplace_back();
    for (std::size_t v : columns) row.push_back(prefix[v]);
    m.row_labels.push_back(join(label));
  }
  return m;
}

OracleSolution solve_matrix(const MatrixGame& game, const Rational& epsilon,
                            const SolveBudget& budget) {
  if (epsilon.sign() <= 0) fail(ErrorKind::kInvalidArgument, "epsilon must be positive");
  if (game.rows() == 0 || game.cols() == 0) {
    fail(ErrorKind::kInvalidArgument, "matrix game is empty");
  }
  for (const auto& row : game.payoffs) {
    if (row.size() != game.cols()) fail(ErrorKind::kInvalidArgument, "matrix game is ragged");
  }
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();

  Rational lowest = game.payoffs[0][0];
  for (const auto& row : game.payoffs) {
    for (const Rational& v : row) lowest = std::min(lowest, v);
  }
  // Shifted payoffs are >= 1, so the restricted value is positive.
  const Rational shift = Rational(1) - lowest;
  const ScaledMatrix scaled = scale(game);

  std::vector<std::size_t> active;
  {
    std::vector<Rational> uniform(cols, Rational(1) / Rational(static_cast<std::int64_t>(cols)));
    active.push_back(best_row(scaled, uniform).first);
  }

  std::size_t pivots = 0;
  Rational lower;
  Rational upper;
  for (std::size_t round = 1;; ++round) {
    if (round > budget.max_generation_rounds) {
      fail(ErrorKind::kBudgetExceeded, "row generation budget exhausted; value lies in [" +
                                           lower.to_string() + ", " + upper.to_string() + "]");
    }
    std::vector<std::vector<Rational>> restricted;
    for (std::size_t r : active) {
      auto& row = restricted.emplace_back();
      for (const Rational& v : game.payoffs[r]) row.push_back(v + shift);
    }
    PackingSolution lp;
    try {
      lp = solve_packing(restricted, pivots, budget.max_pivots);
    } catch (const Error& e) {
      fail(ErrorKind::kBudgetExceeded, std::string(e.what()) + "; value lies in [" +
                                           lower.to_string() + ", " + upper.to_string() + "]");
    }
    const Rational shifted_value = Rational(1) / lp.objective;
    const Rational value = shifted_value - shift;
    std::vector<Rational> col_mix(cols);
    for (std::size_t c = 0; c < cols; ++c) col_mix[c] = lp.primal[c] * shifted_value;

    const auto [row, row_value] = best_row(scaled, col_mix);
    lower = value;
    upper = row_value;
    if (row_value > value) {
      if (std::find(active.begin(), active.end(), row) != active.end()) {
        fail(ErrorKind::kBudgetExceeded, "row generation stalled");
      }
      active.push_back(row);
      continue;
    }

    OracleSolution out;
    out.value = value;
    out.epsilon = Rational(0);
    out.row_mix.assign(rows, Rational(0));
    for (std::size_t i = 0; i < active.size(); ++i) {
      out.row_mix[active[i]] = lp.dual[i] * shifted_value;
    }
    out.col_mix = std::move(col_mix);
    out.best_row = row;
    out.best_row_payoff = row_value;
    for (std::size_t c = 0; c < cols; ++c) {
      Rational against;
      for (std::size_t r : active) {
        if (!out.row_mix[r].is_zero()) against += out.row_mix[r] * game.payoffs[r][c];
      }
      if (c == 0 || against < out.best_col_payoff) {
        out.best_col = c;
        out.best_col_payoff = against;
      }
    }
    out.iterations = round;
    return out;
  }
}

namespace {

VerifyReport oracle_report(const MatrixGame& m, const Rational& epsilon) {
  VerifyReport report;
  report.rows = m.rows();
  report.cols = m.cols();
  report.epsilon = epsilon;
  const OracleSolution oracle = solve_matrix(m, epsilon);
  report.oracle_value = oracle.value;
  return report;
}

void compare_values(VerifyReport& report, const Rational& closed, const Rational& epsilon) {
  report.closed_form_value = closed;
  if (abs(closed - report.oracle_value) > epsilon) {
    report.failures.push_back("closed-form value " + closed.to_string() +
                              " differs from the oracle value " +
                              report.oracle_value.to_string());
  }
}

}  // namespace

VerifyReport verify(const Game& game, const GameSolution& solution, const Rational& epsilon,
                    const Limits& limits) {
  const MatrixGame m = build_matrix_unstructured(game, limits);
  VerifyReport report = oracle_report(m, epsilon);
  compare_values(report, solution.value, epsilon);

  const std::size_t n = game.size();
  check_mix(solution.hider, n, game.k);
  check_mix(solution.searcher, n, game.k);
  const auto columns = subsets_of_size(n, game.k);
  std::map<LocationSet, std::size_t> column_of;
  for (std::size_t c = 0; c < columns.size(); ++c) column_of[columns[c]] = c;

  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational earned;
    for (const auto& [set, w] : solution.hider.support) earned += w * m.payoffs[r][column_of.at(set)];
    if (earned > solution.value) {
      report.failures.push_back("search " + m.row_labels[r] + " earns " + earned.to_string() +
                                " > " + solution.value.to_string() + " against the hider mix");
    }
  }
  const SetFunction f = as_set_function(game.spec);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Rational held = mixed_payoff(f, n, game.k, point_mix(columns[c]), solution.searcher);
    if (held < solution.value) {
      report.failures.push_back("hiding at " + m.col_labels[c] + " holds the searcher mix to " +
                                held.to_string() + " < " + solution.value.to_string());
    }
  }
  report.pass = report.failures.empty();
  return report;
}

VerifyReport verify(const Tree& tree, const TreeSolution& solution, const Rational& epsilon,
                    bool all_vertices, const Limits& limits) {
  const MatrixGame m = build_matrix_tree(tree, all_vertices, limits);
  VerifyReport report = oracle_report(m, epsilon);
  compare_values(report, solution.value, epsilon);

  const std::vector<Rational> x = vertex_weights(tree, solution.hider.entries());
  std::vector<Rational> column_weight;
  for (const std::string& id : m.col_labels) column_weight.push_back(x[tree.index_of(id)]);
  Rational hider_total;
  for (const Rational& w : x) hider_total += w;
  if (hider_total != Rational(1)) {
    report.failures.push_back("hider weights sum to " + hider_total.to_string());
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational earned;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!column_weight[c].is_zero()) earned += column_weight[c] * m.payoffs[r][c];
    }
    if (earned > solution.value) {
      report.failures.push_back("search " + m.row_labels[r] + " earns " + earned.to_string() +
                                " > " + solution.value.to_string() + " against the hider mix");
    }
  }
  const auto mix = searcher_distribution(tree, solution);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const std::size_t v = tree.index_of(m.col_labels[c]);
    Rational held;
    for (const auto& [search, w] : mix) held += w * point_payoff(tree, search, v);
    if (held < solution.value) {
      report.failures.push_back("hiding at " + m.col_labels[c] + " holds the searcher mix to " +
                                held.to_string() + " < " + solution.value.to_string());
    }
  }
  report.pass = report.failures.empty();
  return report;
}

VerifyReport oracle_only(const Game& game, const Rational& epsilon, const Limits& limits) {
  VerifyReport report = oracle_report(build_matrix_unstructured(game, limits), epsilon);
  report.oracle_only = true;
  report.pass = true;
  return report;
}

VerifyReport oracle_only(const Tree& tree, const Rational& epsilon, bool all_vertices,
                         const Limits& limits) {
  VerifyReport report = oracle_report(build_matrix_tree(tree, all_vertices, limits), epsilon);
  report.oracle_only = true;
  report.pass = true;
  return report;
}

}  // namespace rescue
