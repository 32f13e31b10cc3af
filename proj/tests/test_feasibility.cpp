#include <doctest.h>

#include <random>

#include "configset/error.hpp"
#include "configset/feasibility.hpp"
#include "fourier_motzkin.hpp"

using namespace configset;

namespace {

EquationSystem example_system() {
  auto zz = std::make_shared<FgAbelianGroup>(1, std::vector<Integer>{});
  Handle h = make_handle(zz, {zz->from_coordinates({1}), zz->from_coordinates({2})});
  return build_equations(enumerate(h, Partition::congruence(zz, {3}), Mode::one_sided));
}

EquationSystem f2_system() {
  auto f = std::make_shared<FreeGroup>(2);
  Handle h = make_handle(f, f->standard_generators());
  return build_equations(enumerate(h, Partition::prefix(f), Mode::one_sided));
}

RationalMatrix matrix_of(std::initializer_list<std::initializer_list<int>> rows) {
  RationalMatrix m;
  for (auto r : rows) {
    std::vector<Rational> row;
    for (int v : r) row.emplace_back(v);
    m.push_back(row);
  }
  return m;
}

}  // namespace

TEST_CASE("example: uniform normalized solution") {
  EquationSystem eq = example_system();
  FeasibilityOutcome out = solve_normalized(eq);
  REQUIRE(out.feasible);
  CHECK(out.solution == std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  CHECK(verify_solution(to_matrix(eq), out.solution));
  CHECK(oracle::oracle_feasibility(to_matrix(eq), 3, oracle::kOracleMaxVariables));
  CHECK(solve_nonzero_nonnegative(eq).feasible);
  CHECK_THROWS_AS(nonnegative_row_reduction(eq), Error);
}

TEST_CASE("trivial partition: the single configuration carries everything") {
  auto zz = std::make_shared<FgAbelianGroup>(1, std::vector<Integer>{});
  Handle h = make_handle(zz, zz->standard_generators());
  EquationSystem eq = build_equations(enumerate(h, Partition::trivial(zz), Mode::one_sided));
  FeasibilityOutcome out = solve_normalized(eq);
  REQUIRE(out.feasible);
  CHECK(out.solution == std::vector<Rational>{Rational(1)});
}

TEST_CASE("F2 first-letter system is infeasible") {
  EquationSystem eq = f2_system();
  RationalMatrix a = to_matrix(eq);
  FeasibilityOutcome out = solve_normalized(eq);
  CHECK_FALSE(out.feasible);
  REQUIRE(out.certificate.has_value());
  CHECK(verify_certificate(a, eq.variable_count(), *out.certificate));
  CHECK_FALSE(oracle::oracle_feasibility(a, eq.variable_count(), oracle::kOracleMaxVariables));
  CHECK_FALSE(solve_nonzero_nonnegative(eq).feasible);

  RowReduction rr = nonnegative_row_reduction(eq);
  REQUIRE(rr.row.size() == eq.variable_count());
  for (const auto& v : rr.row) CHECK(v > 0);
  std::vector<Rational> combo(eq.variable_count(), Rational(0));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t k = 0; k < combo.size(); ++k) combo[k] += rr.multipliers[r] * a[r][k];
  }
  // The row is a positive multiple of the combination.
  Rational scale = Rational(rr.row[0]) / combo[0];
  CHECK(scale > 0);
  for (std::size_t k = 0; k < combo.size(); ++k) CHECK(combo[k] * scale == Rational(rr.row[k]));
}

TEST_CASE("row reduction of a single positive row") {
  RowReduction rr = nonnegative_row_reduction(matrix_of({{1}}), 1);
  CHECK(rr.row == std::vector<Integer>{1});
}

TEST_CASE("oracle examples") {
  CHECK(oracle::oracle_feasibility(matrix_of({{0, 0}, {0, 0}}), 2, 12));
  CHECK_FALSE(oracle::oracle_feasibility(matrix_of({{1, -1}, {1, 1}}), 2, 12));
  CHECK(oracle::oracle_feasibility(matrix_of({{1, -1}}), 2, 12));
  CHECK_THROWS_AS(oracle::oracle_feasibility(RationalMatrix{std::vector<Rational>(13, Rational(0))}, 13, 12), Error);
}

TEST_CASE("simplex agrees with the elimination oracle on random systems") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> dim(1, 6);
  std::size_t feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(dim(rng));
    const std::size_t cols = static_cast<std::size_t>(dim(rng));
    RationalMatrix a(rows, std::vector<Rational>(cols));
    for (auto& row : a) {
      for (auto& v : row) v = entry(rng);
    }
    FeasibilityOutcome out = solve_normalized(a, cols);
    bool oracle = oracle::oracle_feasibility(a, cols, 12);
    CHECK(out.feasible == oracle);
    if (out.feasible) {
      ++feasible;
      CHECK(verify_solution(a, out.solution));
    } else {
      REQUIRE(out.certificate.has_value());
      CHECK(verify_certificate(a, cols, *out.certificate));
    }
    CHECK(solve_nonzero_nonnegative(a, cols).feasible == out.feasible);
  }
  CHECK(feasible > 0);
  CHECK(feasible < 200);
}

TEST_CASE("push forward along a refinement") {
  auto zz = std::make_shared<FgAbelianGroup>(1, std::vector<Integer>{});
  Handle h = make_handle(zz, {zz->from_coordinates({1}), zz->from_coordinates({2})});
  Partition fine = Partition::congruence(zz, {6});
  Partition coarse = Partition::congruence(zz, {3});
  ConfigurationSet fs = enumerate(h, fine, Mode::one_sided);
  ConfigurationSet cs = enumerate(h, coarse, Mode::one_sided);
  FeasibilityOutcome f = solve_normalized(build_equations(fs));
  REQUIRE(f.feasible);
  RefinementResult r = is_refinement(fine, coarse, ball(h, 6));
  REQUIRE(r.refines);
  std::vector<Rational> g = push_forward(fs.configurations, f.solution, r.collapse, cs.configurations);
  CHECK(verify_solution(to_matrix(build_equations(cs)), g));
  Rational total = 0;
  for (const auto& v : g) total += v;
  CHECK(total == 1);
}
