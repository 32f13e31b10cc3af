#include <doctest.h>

#include <string>

#include "configset/error.hpp"
#include "configset/report.hpp"

using namespace configset;

namespace {

const char* kExample = "group z\ngenerators 1, 2\npartition mod 3\n";
const char* kFree = "group free 2\ngenerators a, b\npartition prefix\nanalyze paradox tarski normal\n";

ErrorCode parse_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error for: " << text);
  return ErrorCode::io_error;
}

std::string message_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse the worked example") {
  ExperimentSpec s = parse_spec(kExample);
  CHECK(s.pair.handle.generator_count() == 2);
  CHECK(s.pair.partition->block_count() == 3);
  CHECK(s.mode == Mode::one_sided);
  CHECK(s.analyses == std::set<Analysis>{Analysis::enumerate, Analysis::equations, Analysis::solve});

  ExperimentSpec t = parse_spec("group z; generators 1, 2; partition mod 3; translate 1; mode two_sided; radius 5");
  CHECK(t.mode == Mode::two_sided);
  CHECK(t.radius == 5u);
  CHECK(t.pair.partition->translator().has_value());
}

TEST_CASE("structure forms") {
  for (const char* text : {"z", "z^3", "abelian 1 2 3", "cyclic 6", "dihedral 4", "symmetric 3", "free 2",
                           "cyclic 2 x cyclic 4", "z x cyclic 3", "cyclic 2 * cyclic 3", "table 0 1 / 1 0",
                           "semigroup free 2", "semigroup freemonoid 2", "semigroup nat", "semigroup nat 2"}) {
    CAPTURE(text);
    CHECK(parse_structure(text) != nullptr);
  }
  CHECK_THROWS_AS(parse_structure("cyclic 0"), Error);
  CHECK_THROWS_AS(parse_structure("banana"), Error);
}

TEST_CASE("partition forms") {
  CHECK(parse_spec("group cyclic 6; generators 1; partition explicit 1 1 2 2 3 3").pair.partition->block_count() == 3);
  CHECK(parse_spec("group z^2; generators (1,0), (0,1); partition mod 2 3").pair.partition->block_count() == 6);
  CHECK(parse_spec("group z; generators 1; partition mod 4 blocks 1 2 1 2").pair.partition->block_count() == 2);
  CHECK(parse_spec("group free 2; generators a, b; partition prefix identity a").pair.partition->block_count() == 4);
  CHECK(parse_spec("group z; generators 1; partition quotient cyclic 3 images 1 blocks 1 2 2")
            .pair.partition->block_count() == 2);
  CHECK(parse_spec("group z; generators 1; partition trivial").pair.partition->block_count() == 1);
}

TEST_CASE("input errors") {
  CHECK(parse_error("group z\ngenerators\npartition mod 3\n") == ErrorCode::semantic_error);
  CHECK(parse_error("group free 2\ngenerators a, b\npartition mod 3\n") == ErrorCode::semantic_error);
  CHECK(parse_error("group z\ngenerators 1\n") == ErrorCode::semantic_error);
  CHECK(parse_error("group z\ngenerators 1\npartition mod 3\nfrobnicate\n") == ErrorCode::syntax_error);
  CHECK(parse_error("group z\ngroup z\ngenerators 1\npartition mod 3\n") == ErrorCode::syntax_error);
  CHECK(parse_error("group z\ngenerators q\npartition mod 3\n") == ErrorCode::semantic_error);
  CHECK(message_of("group z\ngenerators 1\npartition mod 0\n").find("line 3") != std::string::npos);
  CHECK(message_of("# comment\n\ngroup z\ngenerators\npartition mod 3\n").find("line 4") != std::string::npos);
}

TEST_CASE("run the worked example") {
  Report r = run(parse_spec(kExample));
  const auto& b = r.body;
  CHECK(b["configurations"]["count"] == 3);
  CHECK(b["configurations"]["exactness"]["status"] == "exact");
  CHECK(b["equations"]["row_count"] == 6);
  CHECK(b["feasibility"]["verdict"] == "normalized_solution");
  CHECK(b["feasibility"]["solution"][0]["value"] == "1/3");
  CHECK(b["feasibility"]["solution"][0]["configuration"] == nlohmann::json::array({1, 2, 3}));
  CHECK(b["feasibility"]["verified"] == true);
  CHECK(b["feasibility"]["solvers_agree"] == true);
  CHECK_FALSE(b.contains("paradox"));
  CHECK(r.timing.contains("total_ms"));

  RunOptions opts;
  opts.analyses = std::set<Analysis>{Analysis::paradox};
  Report skipped = run(parse_spec(kExample), opts);
  CHECK(skipped.body["paradox"]["status"] == "not_applicable");
}

TEST_CASE("run F2") {
  Report r = run(parse_spec(kFree));
  const auto& b = r.body;
  CHECK(b["configurations"]["count"] == 11);
  CHECK(b["feasibility"]["verdict"] == "infeasible");
  CHECK(b["feasibility"]["verified"] == true);
  CHECK(b["paradox"]["condition"]["status"] == "certificate");
  CHECK(b["paradox"]["status"] == "decomposition");
  CHECK(b["paradox"]["decomposition"]["verification"]["violations"].empty());
  CHECK(b["paradox"]["decomposition"]["verification"]["interior_size"] == 485);
  CHECK(b["tarski"]["bound"] == format_integer(tarski_upper_bound(11)));
  CHECK(b["normal"]["convention"] == "compose");
  CHECK(b["normal"]["alternative_convention"] == "one-line");
}

TEST_CASE("semigroup runs use the left mode") {
  ExperimentSpec s = parse_spec("semigroup nat\ngenerators 1\npartition mod 2\nanalyze paradox\n");
  CHECK(s.mode == Mode::semigroup_left);
  Report r = run(s);
  CHECK(r.body["configurations"]["tuples"] == nlohmann::json::array({{1, 2}, {2, 1}}));
  CHECK(r.body["feasibility"]["verdict"] == "normalized_solution");
  CHECK(r.body["paradox"]["status"] == "not_applicable");
}

TEST_CASE("compare") {
  ExperimentSpec a = parse_spec(kExample);
  CHECK(compare_command(a, a).body["compare"]["verdict"] == "equal");
  ExperimentSpec t = parse_spec("group z; generators 1, 2; partition mod 3; translate 1");
  CHECK(compare_command(a, t).body["compare"]["verdict"] == "equal");
  ExperimentSpec swapped = parse_spec("group z; generators 2, 1; partition mod 3");
  CHECK(compare_command(a, swapped).body["compare"]["verdict"] == "different");
  ExperimentSpec m2 = parse_spec("group z; generators 1, 2; partition mod 2");
  CHECK_THROWS_AS(compare_command(a, m2), Error);

  ExperimentSpec inline_cmp = parse_spec(
      "group z; generators 1, 2; partition mod 3; compare-group z; compare-generators 2, 1; "
      "compare-partition mod 3; analyze compare");
  CHECK(run(inline_cmp).body["compare"]["verdict"] == "different");
}

TEST_CASE("canonical output is deterministic") {
  const std::string first = canonical_json(run(parse_spec(kFree)));
  const std::string second = canonical_json(run(parse_spec(kFree)));
  CHECK(first == second);
  CHECK(first.find("timing") == std::string::npos);
  CHECK(full_json(run(parse_spec(kExample))).find("\"timing\"") != std::string::npos);
  CHECK(render_text(run(parse_spec(kExample))).find("count: 3") != std::string::npos);
}
