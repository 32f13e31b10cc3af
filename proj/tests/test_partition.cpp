#include <doctest.h>

#include "configset/error.hpp"
#include "configset/partition.hpp"

using namespace configset;

namespace {

std::shared_ptr<const FgAbelianGroup> z() { return std::make_shared<FgAbelianGroup>(1, std::vector<Integer>{}); }

Element zi(const FgAbelianGroup& g, long v) { return g.from_coordinates({Integer(v)}); }

}  // namespace

TEST_CASE("congruence colors") {
  auto zz = z();
  Partition p = Partition::congruence(zz, {3});
  CHECK(p.block_count() == 3);
  CHECK(p.color(zi(*zz, 7)) == 2);
  CHECK(p.color(zi(*zz, 0)) == 1);
  CHECK(p.color(zi(*zz, -1)) == 3);

  auto z2 = std::make_shared<FgAbelianGroup>(2, std::vector<Integer>{});
  Partition q = Partition::congruence(z2, {2, 3});
  CHECK(q.block_count() == 6);
  CHECK(q.color(z2->from_coordinates({1, 2})) == 1 + 1 * 3 + 2);

  Partition merged = Partition::congruence(zz, {4}, std::vector<std::size_t>{1, 2, 1, 2});
  CHECK(merged.block_count() == 2);
  CHECK(merged.color(zi(*zz, 6)) == 1);

  auto f = std::make_shared<FreeGroup>(2);
  CHECK_THROWS_AS(Partition::congruence(f, {3}), Error);
}

TEST_CASE("trivial partition") {
  auto f = std::make_shared<FreeGroup>(2);
  Partition p = Partition::trivial(f);
  CHECK(p.block_count() == 1);
  CHECK(p.color(f->parse_element("abAB")) == 1);
}

TEST_CASE("prefix partition on F2") {
  auto f = std::make_shared<FreeGroup>(2);
  Partition p = Partition::prefix(f);
  CHECK(p.block_count() == 5);
  CHECK(p.color(f->identity()) == 1);
  CHECK(p.color(f->parse_element("ab")) == 2);
  CHECK(p.color(f->parse_element("Ab")) == 3);
  CHECK(p.color(f->parse_element("b")) == 4);
  CHECK(p.color(f->parse_element("BA")) == 5);

  Partition joined = Partition::prefix(f, 1, 1);
  CHECK(joined.block_count() == 4);
  CHECK(joined.color(f->identity()) == joined.color(f->parse_element("a")));
}

TEST_CASE("translate") {
  auto zz = z();
  Partition p = Partition::congruence(zz, {3});
  Partition t = p.translate(zi(*zz, 1));
  CHECK(t.color(zi(*zz, 0)) == 3);
  for (long v = -6; v <= 6; ++v) CHECK(t.color(zi(*zz, v)) == p.color(zi(*zz, v - 1)));

  Partition same = p.translate(zz->identity());
  for (long v = -6; v <= 6; ++v) CHECK(same.color(zi(*zz, v)) == p.color(zi(*zz, v)));

  Partition back = t.translate(zi(*zz, -1));
  for (long v = -6; v <= 6; ++v) CHECK(back.color(zi(*zz, v)) == p.color(zi(*zz, v)));

  auto c6 = FiniteGroup::cyclic(6);
  Partition e = Partition::explicit_blocks(c6, 2, {1, 1, 2, 2, 2, 1});
  Element x = c6->element_at(2);
  Partition ex = e.translate(x);
  for (std::size_t k = 0; k < 6; ++k) {
    Element y = c6->element_at(k);
    CHECK(ex.color(y) == e.color(c6->multiply(y, c6->inverse(x))));
  }

  auto f = std::make_shared<FreeGroup>(2);
  Partition fp = Partition::prefix(f);
  Element a = f->parse_element("a");
  Partition ft = fp.translate(a).translate(f->inverse(a));
  for (const auto& w : ball(make_handle(f, f->standard_generators()), 3).elements) {
    CHECK(ft.color(w) == fp.color(w));
  }

  auto fs = std::make_shared<FreeSemigroup>(2, false);
  CHECK_THROWS_AS(Partition::trivial(fs).translate(fs->parse_element("a")), Error);
}

TEST_CASE("explicit partitions validate their input") {
  auto c6 = FiniteGroup::cyclic(6);
  CHECK_THROWS_AS(Partition::explicit_blocks(c6, 2, {1, 1, 2}), Error);
  CHECK_THROWS_AS(Partition::explicit_blocks(c6, 2, {1, 1, 1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(Partition::explicit_blocks(c6, 2, {1, 1, 3, 2, 2, 2}), Error);
}

TEST_CASE("quotient partitions factor through the homomorphism") {
  auto zz = z();
  auto c3 = FiniteGroup::cyclic(3);
  auto hom = std::make_shared<Homomorphism>(zz, c3, std::vector<Element>{c3->element_at(1)});
  std::map<Element, std::size_t> blocks{{c3->element_at(0), 1}, {c3->element_at(1), 2}, {c3->element_at(2), 2}};
  Partition p = Partition::quotient(hom, 2, blocks);
  for (long v = -7; v <= 7; ++v) {
    CHECK(p.color(zi(*zz, v)) == blocks.at(hom->apply(zi(*zz, v))));
  }
  auto reps = p.witness_representatives(1000);
  REQUIRE(reps.has_value());
  CHECK(reps->size() == 3);
}

TEST_CASE("refinement") {
  auto zz = z();
  Handle h = make_handle(zz, zz->standard_generators());
  Ball sample = ball(h, 12);
  Partition m6 = Partition::congruence(zz, {6});
  Partition m3 = Partition::congruence(zz, {3});
  Partition m2 = Partition::congruence(zz, {2});

  RefinementResult r = is_refinement(m6, m3, sample);
  CHECK(r.refines);
  CHECK(r.collapse == std::vector<std::size_t>{1, 2, 3, 1, 2, 3});

  RefinementResult self = is_refinement(m3, m3, sample);
  CHECK(self.refines);
  CHECK(self.collapse == std::vector<std::size_t>{1, 2, 3});

  RefinementResult no = is_refinement(m3, m2, sample);
  CHECK_FALSE(no.refines);
  CHECK(no.counterexample.has_value());

  auto f = std::make_shared<FreeGroup>(2);
  CHECK_THROWS_AS(is_refinement(m3, Partition::trivial(f), sample), Error);
}
