#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "configset/error.hpp"
#include "configset/paradox.hpp"

using namespace configset;

namespace {

struct F2 {
  std::shared_ptr<const FreeGroup> group = std::make_shared<FreeGroup>(2);
  Handle handle = make_handle(group, group->standard_generators());
  Partition partition = Partition::prefix(group);
  ConfigurationSet set = enumerate(handle, partition, Mode::one_sided);
  EquationSystem system = build_equations(set);
};

// M = T P_pi (B - A) - P_rho A written out with explicit loops.
IntMatrix normal_matrix(const IntMatrix& a, const IntMatrix& b, const std::vector<std::size_t>& pi,
                        const std::vector<std::size_t>& rho) {
  const std::size_t n = a.size();
  const std::size_t c = a[0].size();
  IntMatrix m(n, std::vector<int>(c, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < c; ++k) {
      int acc = 0;
      for (std::size_t s = 0; s <= r; ++s) acc += b[pi[s] - 1][k] - a[pi[s] - 1][k];
      m[r][k] = acc - a[rho[r] - 1][k];
    }
  }
  return m;
}

std::vector<Integer> rebuild(const EquationSystem& system,
                             const std::vector<std::pair<std::size_t, std::size_t>>& indices) {
  std::vector<Integer> out(system.variable_count(), 0);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto lj = system.indicator(i + 1, indices[i].first);
    auto lk = system.indicator(i + 1, indices[i].second);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += lj[c] - lk[c];
  }
  return out;
}

}  // namespace

TEST_CASE("structured rows") {
  F2 f;
  StructuredRow zero = *express_row(f.system, std::vector<Integer>(f.system.variable_count(), 0));
  for (const auto& [j, k] : zero.indices) CHECK(j == k);
  CHECK(zero.indices.size() == 5);

  std::vector<Integer> row(f.system.variable_count());
  for (std::size_t k = 0; k < row.size(); ++k) {
    row[k] = f.system.indicator(1, 0)[k] - f.system.indicator(1, 1)[k];
  }
  auto s = express_row(f.system, row);
  REQUIRE(s.has_value());
  CHECK(rebuild(f.system, s->indices) == row);
  // The hand-written form (0,1), (j,j), ... is also a valid expression.
  std::vector<std::pair<std::size_t, std::size_t>> hand{{0, 1}, {2, 2}, {2, 2}, {2, 2}, {2, 2}};
  CHECK(rebuild(f.system, hand) == row);

  std::vector<Integer> impossible(f.system.variable_count(), 0);
  impossible[0] = 7;
  CHECK_FALSE(express_row(f.system, impossible).has_value());
  CHECK_THROWS_AS(express_row(f.system, row, 1), Error);
}

TEST_CASE("paradoxical condition on F2") {
  F2 f;
  RowReduction rr = nonnegative_row_reduction(f.system);
  ParadoxicalCondition cond = check_paradoxical_condition(f.system, {rr.row});
  REQUIRE(cond.status == ConditionStatus::certificate);
  CHECK(cond.from_given_rows);
  for (const auto& r : cond.rows) CHECK(rebuild(f.system, r.indices) == r.row);
}

TEST_CASE("atom family") {
  F2 f;
  AtomFamily fam(f.handle, f.partition, f.set);
  CHECK(fam.partitions_configurations());
  for (std::size_t j = 0; j <= 2; ++j) {
    std::vector<std::size_t> all;
    for (std::size_t i = 1; i <= 5; ++i) {
      auto a = fam.atoms(i, j);
      all.insert(all.end(), a.begin(), a.end());
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expect(f.set.size());
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(all == expect);
  }
  CHECK(fam.in_union(f.group->parse_element("Ba"), 5, 0));
  CHECK(fam.in_union(f.group->parse_element("Ba"), 2, 2));
  CHECK_FALSE(fam.in_union(f.group->parse_element("Ba"), 1, 2));

  TranslationLemmaReport tl = check_translation_lemma(fam, 5);
  CHECK(tl.counterexamples.empty());
  CHECK(tl.checks > 0);
}

TEST_CASE("decomposition synthesis on F2") {
  F2 f;
  RowReduction rr = nonnegative_row_reduction(f.system);
  ParadoxicalCondition cond = check_paradoxical_condition(f.system, {rr.row});
  SynthesisResult res = synthesize_decomposition(f.handle, f.partition, f.set, &cond);
  CHECK(res.verification.valid());
  CHECK(res.verification.radius == 6);
  CHECK(res.verification.interior_size == 485);
  CHECK(res.verification.ball_size == 1457);
  CHECK(res.decomposition.piece_count() >= 4);

  VerificationReport again = verify_decomposition(res.decomposition, 7);
  CHECK(again.valid());

  auto translators = candidate_translators(f.handle, &cond);
  CHECK(translators.front() == f.group->identity());
}

TEST_CASE("synthesis refuses amenable instances") {
  auto zz = std::make_shared<FgAbelianGroup>(1, std::vector<Integer>{});
  Handle h = make_handle(zz, {zz->from_coordinates({1}), zz->from_coordinates({2})});
  Partition p = Partition::congruence(zz, {3});
  try {
    synthesize_decomposition(h, p, enumerate(h, p, Mode::one_sided));
    FAIL("expected precondition failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_failed);
  }
}

TEST_CASE("synthesis on a second F2 instance never returns an unverified result") {
  auto f = std::make_shared<FreeGroup>(2);
  Handle h = make_handle(f, f->standard_generators());
  Partition p = Partition::prefix(f, 1, 1);
  ConfigurationSet s = enumerate(h, p, Mode::one_sided);
  SynthesisOptions opts;
  opts.radius = 5;
  opts.max_pieces = 5;
  try {
    SynthesisResult r = synthesize_decomposition(h, p, s, nullptr, opts);
    CHECK(r.verification.valid());
    CHECK(verify_decomposition(r.decomposition, 5).valid());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::synthesis_failed);
  }
}

TEST_CASE("verification lists violations") {
  F2 f;
  const Element e = f.group->identity();
  std::vector<std::size_t> everything(f.set.size());
  std::iota(everything.begin(), everything.end(), 0);

  ParadoxicalDecomposition overlap{f.handle, f.partition, f.set,
                                   {{Side::a, e, everything}, {Side::b, e, everything}}};
  VerificationReport r = verify_decomposition(overlap, 3);
  std::size_t overlaps = 0;
  for (const auto& v : r.violations) {
    if (v.kind == DecompositionViolation::Kind::overlap) {
      ++overlaps;
      CHECK(v.pieces == std::vector<std::size_t>{0, 1});
    }
  }
  CHECK(overlaps == r.ball_size);

  ParadoxicalDecomposition empty{f.handle, f.partition, f.set, {{Side::a, e, {}}, {Side::b, e, {}}}};
  VerificationReport q = verify_decomposition(empty, 3);
  CHECK(q.violations.size() == 2 * q.interior_size);
  CHECK(q.interior_size == q.ball_size);
}

TEST_CASE("tarski bound") {
  CHECK(tarski_upper_bound(1) == 2);
  CHECK(tarski_upper_bound(2) == 18);
  CHECK(tarski_upper_bound(3) == 732);
  CHECK(format_integer(tarski_upper_bound(11)) == "81402749386839761113332");
  for (std::size_t l = 1; l < 20; ++l) CHECK(tarski_upper_bound(l) < tarski_upper_bound(l + 1));
  CHECK_THROWS_AS(tarski_upper_bound(0), Error);
}

TEST_CASE("normal condition") {
  NormalConditionResult one = check_normal_condition({{0}}, {{1}});
  CHECK(one.normal);
  CHECK(one.permutation == std::vector<std::size_t>{1});
  CHECK(one.witness == IntMatrix{{1}});

  try {
    check_normal_condition({{1, 0}}, {{1, 0}});
    FAIL("expected precondition failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_failed);
  }

  IntMatrix a{{1, 0}, {0, 1}};
  IntMatrix b{{1, 1}, {1, 1}};
  // pi = (1,2): rho = pi.sigma = (2,1).  pi = (2,1): rho = (1,2).
  IntMatrix m_id = normal_matrix(a, b, {1, 2}, {2, 1});
  IntMatrix m_sw = normal_matrix(a, b, {2, 1}, {1, 2});
  CHECK(m_id == IntMatrix{{0, 0}, {0, 1}});
  CHECK(m_sw == IntMatrix{{0, 0}, {1, 0}});
  NormalConditionResult two = check_normal_condition(a, b);
  CHECK(two.normal);
  CHECK(two.permutation == std::vector<std::size_t>{1, 2});
  CHECK(two.witness == m_id);
  CHECK(two.permutations_checked == 1);

  NormalConditionResult alt = check_normal_condition(a, b, PiConvention::one_line);
  CHECK(alt.normal);

  IntMatrix big(9, std::vector<int>{0});
  IntMatrix big_b(9, std::vector<int>{1});
  CHECK_THROWS_AS(check_normal_condition(big, big_b), Error);
  CHECK_THROWS_AS(check_normal_condition({{0, 1}}, {{1}}), Error);
}

TEST_CASE("normal condition distinguishes the conventions") {
  // Three rows so that pi.sigma and sigma.pi differ for some pi.
  IntMatrix a{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  IntMatrix b{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  NormalConditionResult c = check_normal_condition(a, b, PiConvention::compose);
  NormalConditionResult o = check_normal_condition(a, b, PiConvention::one_line);
  for (const auto* r : {&c, &o}) {
    if (!r->normal) continue;
    for (const auto& row : r->witness) {
      for (int v : row) CHECK(v >= -1);
    }
  }
}

TEST_CASE("semigroup left paradox") {
  auto fs = std::make_shared<FreeSemigroup>(2, false);
  Handle h = make_handle(fs, fs->standard_generators());
  const Element a = fs->parse_element("a");
  const Element b = fs->parse_element("b");
  std::vector<SemigroupPiece> pieces{{Side::a, a, {{a}, {}, {}}}, {Side::b, b, {{b}, {}, {}}}};
  SemigroupParadoxReport r = left_paradox_semigroup(h, pieces, 5);
  CHECK(r.valid());
  CHECK(r.ball_size == 62);
  // a and b lie in no piece; the identity checks only need the preimages.
  CHECK(r.unassigned == std::vector<Element>{a, b});

  std::vector<SemigroupPiece> clash{{Side::a, a, {{a}, {}, {}}}, {Side::b, b, {{a}, {}, {}}}};
  SemigroupParadoxReport bad = left_paradox_semigroup(h, clash, 4);
  CHECK_FALSE(bad.valid());
  bool overlap = false;
  for (const auto& v : bad.violations) overlap = overlap || v.kind == DecompositionViolation::Kind::overlap;
  CHECK(overlap);

  SemigroupSearchResult found = search_semigroup_paradox(h, Partition::prefix(fs), 5);
  CHECK(found.pieces.has_value());

  auto n = std::make_shared<NaturalNumbers>(1);
  Handle hn = make_handle(n, n->standard_generators());
  for (std::size_t m : {1u, 2u, 3u}) {
    Partition p = m == 1 ? Partition::trivial(n) : Partition::congruence(n, {Integer(m)});
    SemigroupSearchResult none = search_semigroup_paradox(hn, p, 6);
    CHECK_FALSE(none.pieces.has_value());
    if (m > 1) CHECK(none.systems_checked > 0);
  }
}

TEST_CASE("normal subsystem search runs on F2") {
  F2 f;
  auto found = search_normal_subsystems(f.system);
  if (found) {
    for (const auto& row : found->result.witness) {
      for (int v : row) CHECK(v >= -1);
    }
  }
}
