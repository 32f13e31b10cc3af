// Acceptance checks: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "configset/error.hpp"
#include "configset/report.hpp"
#include "fourier_motzkin.hpp"

using namespace configset;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::vector<std::string> kCorpus = {
    "group z; generators 1; partition mod 2",
    "group z; generators 1; partition mod 5",
    "group z; generators 1, 2; partition mod 3",
    "group z; generators 2, 3; partition mod 4",
    "group z; generators 1, 2, 3; partition mod 6",
    "group z; generators 1, 4; partition mod 6 blocks 1 2 2 3 3 1",
    "group z; generators 1, 2; partition quotient cyclic 6 images 1 blocks 1 2 3 1 2 3",
    "group z^2; generators (1,0), (0,1); partition mod 2 3",
    "group z^2; generators (1,0), (0,1), (1,1); partition mod 2 2",
    "group z^2; generators (1,2), (0,1); partition mod 3 2 blocks 1 2 3 4 5 1",
    "group z^2; generators (1,0), (0,1); partition quotient cyclic 4 images 1, 2 blocks 1 2 3 4",
    "group abelian 0 6; generators 1; partition mod 6",
    "group abelian 0 6; generators 1, 2; partition mod 3",
    "group abelian 0 6; generators 1, 3, 5; partition mod 2",
    "group cyclic 6; generators 1, 2; partition quotient cyclic 3 images 1 blocks 1 2 3",
    "group cyclic 6; generators 1; partition explicit 1 2 2 3 3 1",
    "group abelian 0 2 4; generators (1,0), (0,1); partition mod 2 2",
    "group abelian 0 2 4; generators (1,1), (0,1); partition mod 2 4 blocks 1 2 3 4 5 6 1 2",
    "group cyclic 2 x cyclic 4; generators a, b; partition quotient cyclic 2 images 1, 1 blocks 1 2",
    "group abelian 1 3; generators (1,0), (0,1); partition mod 2 3",
    "group abelian 1 3; generators (1,1); partition mod 3 3 blocks 1 2 3 2 3 1 3 1 2",
    "group abelian 1 3; generators (1,0), (1,1), (0,2); partition mod 1 3",
    "group z x cyclic 3; generators a, b; partition quotient cyclic 3 images 1, 1 blocks 1 2 3",
    "group z x cyclic 3; generators ab, b; partition quotient cyclic 6 images 3, 2 blocks 1 1 2 2 3 3",
};

const char* kFree = "group free 2; generators a, b; partition prefix; analyze paradox tarski";

struct Loaded {
  std::string text;
  ExperimentSpec spec;
};

std::vector<Loaded> load_corpus() {
  std::vector<Loaded> out;
  for (const auto& t : kCorpus) out.push_back({t, parse_spec(t)});
  return out;
}

bool is_abelian(const Semigroup& s) {
  if (s.kind() == StructureKind::fg_abelian) return true;
  if (s.kind() == StructureKind::finite_group) return true;  // corpus finite groups are cyclic
  if (s.kind() != StructureKind::direct_product) return false;
  for (const auto& f : dynamic_cast<const DirectProductGroup&>(s).factors()) {
    if (!is_abelian(*f)) return false;
  }
  return true;
}

Integer slow_tarski(std::size_t l) {
  Integer p = 1;
  for (std::size_t k = 0; k < 2 * l; ++k) p *= l;
  return p + l;
}

Outcome example_reproduction() {
  ExperimentSpec s = parse_spec("group z; generators 1, 2; partition mod 3");
  const auto& h = s.pair.handle;
  const auto& p = *s.pair.partition;
  ConfigurationSet set = enumerate(h, p, Mode::one_sided);
  const std::vector<Configuration> want{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  if (set.configurations != want) return {false, "configuration set differs"};
  if (set.exactness.status != Exactness::Status::exact) return {false, "not exact"};
  const auto& zz = dynamic_cast<const FgAbelianGroup&>(*h.structure);
  for (const auto& c : set.configurations) {
    BasePointSet x0 = base_point_set(c, set, h, p);
    for (long v = -30; v <= 30; ++v) {
      const bool in_block = static_cast<std::size_t>(((v % 3) + 3) % 3) + 1 == c[0];
      if (x0.contains(zz.from_coordinates({Integer(v)})) != in_block) return {false, "x0 differs from E_i"};
    }
  }
  return {true, "3 configurations, x0(C) = E_{C_0}"};
}

Outcome amenable_suite(const std::vector<Loaded>& corpus) {
  std::size_t solved = 0;
  for (const auto& c : corpus) {
    ConfigurationSet set = enumerate(c.spec.pair.handle, *c.spec.pair.partition, Mode::one_sided);
    EquationSystem eq = build_equations(set);
    FeasibilityOutcome out = solve_normalized(eq);
    if (out.feasible && verify_solution(to_matrix(eq), out.solution)) {
      ++solved;
    } else {
      return {false, "no normalized solution for: " + c.text};
    }
  }
  return {solved >= 20, std::to_string(solved) + "/" + std::to_string(corpus.size()) + " instances solved"};
}

Outcome non_amenable_witness() {
  ExperimentSpec s = parse_spec(kFree);
  ConfigurationSet set = enumerate(s.pair.handle, *s.pair.partition, Mode::one_sided);
  EquationSystem eq = build_equations(set);
  if (eq.block_count() != 5) return {false, "expected 5 blocks"};
  FeasibilityOutcome out = solve_nonzero_nonnegative(eq);
  const bool oracle = oracle::oracle_feasibility(to_matrix(eq), eq.variable_count(), oracle::kOracleMaxVariables);
  if (out.feasible || oracle) return {false, "instance reported feasible"};
  if (!out.certificate || !verify_certificate(to_matrix(eq), eq.variable_count(), *out.certificate)) {
    return {false, "certificate did not verify"};
  }
  return {true, "infeasible, certificate verified, oracle agrees"};
}

Outcome decomposition_validity() {
  ExperimentSpec s = parse_spec(kFree);
  ConfigurationSet set = enumerate(s.pair.handle, *s.pair.partition, Mode::one_sided);
  EquationSystem eq = build_equations(set);
  RowReduction rr = nonnegative_row_reduction(eq);
  ParadoxicalCondition cond = check_paradoxical_condition(eq, {rr.row});
  SynthesisResult res = synthesize_decomposition(s.pair.handle, *s.pair.partition, set, &cond);
  VerificationReport v = verify_decomposition(res.decomposition, 6);
  std::string detail = std::to_string(res.decomposition.piece_count()) + " pieces, radius 6, ball " +
                       std::to_string(v.ball_size) + ", cover region " + std::to_string(v.interior_size) + ", " +
                       std::to_string(v.violations.size()) + " violations";
  return {v.valid() && v.interior_size == 485, detail};
}

Outcome tarski_bound() {
  Report r = run(parse_spec(kFree));
  const auto& t = r.body["tarski"];
  if (t["status"] != "bound") return {false, "no bound reported"};
  const std::size_t l = t["l"].get<std::size_t>();
  const bool matches = t["bound"].get<std::string>() == format_integer(slow_tarski(l));
  const bool l3 = format_integer(tarski_upper_bound(3)) == "732";
  return {matches && l3, "l = " + std::to_string(l) + ", bound " + t["bound"].get<std::string>() + "; l = 3 gives " +
                             format_integer(tarski_upper_bound(3))};
}

Outcome translation_lemma() {
  std::mt19937 rng(7331);
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t counterexamples = 0;
  const std::vector<std::string> free_words{"a", "b", "A", "B", "ab", "aB", "ba", "bb", "Ab"};
  for (int trial = 0; trial < 10; ++trial) {
    std::string text;
    std::size_t radius = 4;
    switch (rng() % 3) {
      case 0: {
        text = "group z; generators " + std::to_string(1 + rng() % 3) + ", " + std::to_string(1 + rng() % 4) +
               "; partition mod " + std::to_string(2 + rng() % 5);
        radius = 8;
        break;
      }
      case 1: {
        text = "group z^2; generators (1,0), (" + std::to_string(rng() % 3) + ",1); partition mod " +
               std::to_string(2 + rng() % 2) + " " + std::to_string(2 + rng() % 2);
        radius = 6;
        break;
      }
      default: {
        text = "group free 2; generators " + free_words[rng() % free_words.size()] + ", " +
               free_words[rng() % free_words.size()] + "; partition prefix";
        radius = 6;
        break;
      }
    }
    ExperimentSpec s = parse_spec(text);
    AtomFamily fam(s.pair.handle, *s.pair.partition, enumerate(s.pair.handle, *s.pair.partition, Mode::one_sided));
    TranslationLemmaReport rep = check_translation_lemma(fam, radius);
    ++instances;
    checks += rep.checks;
    counterexamples += rep.counterexamples.size();
  }
  return {counterexamples == 0 && checks > 0, std::to_string(instances) + " instances, " + std::to_string(checks) +
                                                  " membership checks, " + std::to_string(counterexamples) +
                                                  " counterexamples"};
}

Outcome refinement_transfer() {
  struct Pair {
    std::string group;
    std::string gens;
    std::string fine;
    std::string coarse;
  };
  const std::vector<Pair> pairs{
      {"z", "1, 2", "mod 6", "mod 3"},
      {"z", "1, 3", "mod 6", "mod 2"},
      {"z", "2, 5", "mod 4", "mod 4 blocks 1 2 1 2"},
      {"abelian 0 12", "1, 4", "mod 12", "mod 4"},
      {"abelian 0 12", "1, 5", "mod 6", "mod 3"},
  };
  std::size_t ok = 0;
  for (const auto& p : pairs) {
    ExperimentSpec f = parse_spec("group " + p.group + "; generators " + p.gens + "; partition " + p.fine);
    ExperimentSpec e = parse_spec("group " + p.group + "; generators " + p.gens + "; partition " + p.coarse);
    const Handle& h = f.pair.handle;
    ConfigurationSet fs = enumerate(h, *f.pair.partition, Mode::one_sided);
    ConfigurationSet es = enumerate(h, *e.pair.partition, Mode::one_sided);
    FeasibilityOutcome sol = solve_normalized(build_equations(fs));
    RefinementResult r = is_refinement(*f.pair.partition, *e.pair.partition, ball(h, 12));
    if (!sol.feasible || !r.refines) continue;
    auto g = push_forward(fs.configurations, sol.solution, r.collapse, es.configurations);
    Rational total = 0;
    for (const auto& v : g) total += v;
    if (total == 1 && verify_solution(to_matrix(build_equations(es)), g)) ++ok;
  }
  return {ok == pairs.size(), std::to_string(ok) + "/" + std::to_string(pairs.size()) + " pairs transfer exactly"};
}

Outcome abelian_collapse(const std::vector<Loaded>& corpus) {
  std::size_t instances = 0;
  std::size_t tuples = 0;
  std::size_t violations = 0;
  for (const auto& c : corpus) {
    if (!is_abelian(*c.spec.pair.handle.structure)) continue;
    ConfigurationSet set = enumerate(c.spec.pair.handle, *c.spec.pair.partition, Mode::two_sided);
    const std::size_t n = set.generator_count;
    for (const auto& t : set.configurations) {
      ++tuples;
      for (std::size_t j = 1; j <= n; ++j) violations += t[j] != t[j + n] ? 1 : 0;
    }
    ++instances;
  }
  return {violations == 0 && instances > 0, std::to_string(instances) + " instances, " + std::to_string(tuples) +
                                                " two-sided tuples, " + std::to_string(violations) + " violations"};
}

Outcome oracle_agreement(const std::vector<Loaded>& corpus) {
  std::size_t compared = 0;
  std::size_t disagreements = 0;
  std::vector<ExperimentSpec> specs;
  for (const auto& c : corpus) specs.push_back(c.spec);
  specs.push_back(parse_spec("group free 2; generators a, b; partition prefix identity a"));
  specs.push_back(parse_spec("semigroup nat; generators 1; partition mod 3"));
  for (const auto& s : specs) {
    const Handle& h = s.pair.handle;
    ConfigurationSet set = s.mode == Mode::semigroup_left ? enumerate_semigroup(h, *s.pair.partition)
                                                          : enumerate(h, *s.pair.partition, Mode::one_sided);
    EquationSystem eq = build_equations(set);
    if (eq.variable_count() > 10) continue;
    ++compared;
    const bool lp = solve_nonzero_nonnegative(eq).feasible;
    const bool fm = oracle::oracle_feasibility(to_matrix(eq), eq.variable_count(), oracle::kOracleMaxVariables);
    disagreements += lp != fm ? 1 : 0;
  }
  return {disagreements == 0 && compared > 0,
          std::to_string(compared) + " systems compared, " + std::to_string(disagreements) + " disagreements"};
}

Outcome semigroup_checks() {
  auto fs = std::make_shared<FreeSemigroup>(2, false);
  Handle h = make_handle(fs, fs->standard_generators());
  const Element a = fs->parse_element("a");
  const Element b = fs->parse_element("b");
  SemigroupParadoxReport rep = left_paradox_semigroup(h, {{Side::a, a, {{a}, {}, {}}}, {Side::b, b, {{b}, {}, {}}}}, 5);
  std::size_t feasible = 0;
  for (int k = 1; k <= 6; ++k) {
    ExperimentSpec s = parse_spec("semigroup nat; generators 1; partition mod " + std::to_string(k));
    FeasibilityOutcome out = solve_normalized(build_equations(enumerate_semigroup(s.pair.handle, *s.pair.partition)));
    feasible += out.feasible ? 1 : 0;
  }
  ExperimentSpec two = parse_spec("semigroup nat 2; generators (1,0), (0,1), (1,1); partition mod 2 3");
  feasible += solve_normalized(build_equations(enumerate_semigroup(two.pair.handle, *two.pair.partition))).feasible;
  return {rep.valid() && feasible == 7, "aS/bS: " + std::to_string(rep.violations.size()) + " violations on " +
                                            std::to_string(rep.ball_size) + " words; N mod k feasible " +
                                            std::to_string(feasible) + "/7"};
}

Outcome determinism(const std::vector<Loaded>& corpus) {
  auto render_all = [&] {
    std::string out;
    for (const auto& c : corpus) {
      RunOptions o;
      o.analyses = std::set<Analysis>{Analysis::solve, Analysis::normal};
      out += canonical_json(run(c.spec, o));
    }
    out += canonical_json(run(parse_spec(kFree)));
    return out;
  };
  const std::string first = render_all();
  const std::string second = render_all();
  const std::string third = render_all();
  return {first == second && second == third, std::to_string(first.size()) + " bytes, 3 runs identical"};
}

}  // namespace

int main() {
  const std::vector<Loaded> corpus = load_corpus();
  struct Criterion {
    const char* name;
    double limit_ms;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"example reproduction", 1000, example_reproduction},
      {"amenable suite", 60000, [&] { return amenable_suite(corpus); }},
      {"non-amenable witness", 0, non_amenable_witness},
      {"decomposition validity", 120000, decomposition_validity},
      {"tarski bound", 0, tarski_bound},
      {"translation lemma", 0, translation_lemma},
      {"refinement transfer", 0, refinement_transfer},
      {"abelian two-sided collapse", 0, [&] { return abelian_collapse(corpus); }},
      {"solver-oracle agreement", 0, [&] { return oracle_agreement(corpus); }},
      {"semigroup", 0, semigroup_checks},
      {"determinism", 0, [&] { return determinism(corpus); }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& c = criteria[k];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_ms > 0 && ms >= c.limit_ms) {
      out.pass = false;
      out.detail += " (time limit exceeded)";
    }
    if (!out.pass) ++failures;
    std::printf("%s %2zu %-28s %9.1f ms  %s\n", out.pass ? "PASS" : "FAIL", k + 1, c.name, ms, out.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
