#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "configset/configuration.hpp"
#include "configset/error.hpp"

using namespace configset;

namespace {

std::shared_ptr<const FgAbelianGroup> z() { return std::make_shared<FgAbelianGroup>(1, std::vector<Integer>{}); }

Handle z_handle(std::initializer_list<long> gens) {
  auto zz = z();
  std::vector<Element> g;
  for (long v : gens) g.push_back(zz->from_coordinates({Integer(v)}));
  return make_handle(zz, g);
}

// Reduced words as strings over a, A, b, B and their first-letter colors
// (e = 1, a = 2, A = 3, b = 4, B = 5).
std::string reduce_prepend(char c, const std::string& w) {
  if (!w.empty() && w[0] != c && std::tolower(w[0]) == std::tolower(c)) return w.substr(1);
  return c + w;
}

std::size_t first_letter_color(const std::string& w) {
  if (w.empty()) return 1;
  return std::string("aAbB").find(w[0]) + 2;
}

std::set<Configuration> f2_oracle(std::size_t radius) {
  std::set<std::string> words{""};
  std::set<std::string> frontier{""};
  for (std::size_t r = 0; r < radius; ++r) {
    std::set<std::string> next;
    for (const auto& w : frontier) {
      for (char c : std::string("aAbB")) next.insert(reduce_prepend(c, w));
    }
    for (const auto& w : next) {
      if (w.size() == r + 1) words.insert(w);
    }
    frontier = next;
  }
  std::set<Configuration> out;
  for (const auto& w : words) {
    out.insert({first_letter_color(w), first_letter_color(reduce_prepend('a', w)),
                first_letter_color(reduce_prepend('b', w))});
  }
  return out;
}

const std::set<Configuration> kF2Configurations{
    {1, 2, 4}, {2, 2, 4}, {3, 1, 4}, {3, 3, 4}, {3, 4, 4}, {3, 5, 4},
    {4, 2, 4}, {5, 2, 1}, {5, 2, 2}, {5, 2, 3}, {5, 2, 5},
};

std::set<Configuration> as_set(const ConfigurationSet& s) {
  return {s.configurations.begin(), s.configurations.end()};
}

}  // namespace

TEST_CASE("example: Z with (1, 2) mod 3") {
  Handle h = z_handle({1, 2});
  Partition p = Partition::congruence(h.structure, {3});
  ConfigurationSet s = enumerate(h, p, Mode::one_sided);
  CHECK(s.configurations == std::vector<Configuration>{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}});
  CHECK(s.exactness.status == Exactness::Status::exact);
  CHECK(s.tuple_length() == 3);
  CHECK(s.identity_color == 1);

  auto zz = std::static_pointer_cast<const FgAbelianGroup>(h.structure);
  CHECK(configuration_of(h, p, Mode::one_sided, zz->from_coordinates({4})) == Configuration{2, 3, 1});
}

TEST_CASE("trivial partition has one configuration") {
  Handle h = z_handle({1, 5, 7});
  ConfigurationSet s = enumerate(h, Partition::trivial(h.structure), Mode::one_sided);
  CHECK(s.configurations == std::vector<Configuration>{{1, 1, 1, 1}});
}

TEST_CASE("F2 with first-letter partition") {
  auto f = std::make_shared<FreeGroup>(2);
  Handle h = make_handle(f, f->standard_generators());
  Partition p = Partition::prefix(f);
  CHECK(f2_oracle(3) == kF2Configurations);
  CHECK(f2_oracle(5) == kF2Configurations);

  ConfigurationSet s = enumerate(h, p, Mode::one_sided, {.radius = 3});
  CHECK(as_set(s) == kF2Configurations);
  CHECK(s.size() == 11);
  ConfigurationSet wider = enumerate(h, p, Mode::one_sided, {.radius = 4});
  CHECK(as_set(wider) == kF2Configurations);
  CHECK(s.exactness.complete());
  CHECK(std::is_sorted(s.configurations.begin(), s.configurations.end()));
}

TEST_CASE("base-point sets") {
  Handle h = z_handle({1, 2});
  auto zz = std::static_pointer_cast<const FgAbelianGroup>(h.structure);
  Partition p = Partition::congruence(h.structure, {3});
  ConfigurationSet s = enumerate(h, p, Mode::one_sided);
  BasePointSet x0 = base_point_set({1, 2, 3}, s, h, p);
  for (long v = -9; v <= 9; ++v) {
    Element x = zz->from_coordinates({Integer(v)});
    CHECK(x0.contains(x) == (((v % 3) + 3) % 3 == 0));
  }
  CHECK_THROWS_AS(base_point_set({1, 1, 1}, s, h, p), Error);

  ConfigurationSet trivial = enumerate(h, Partition::trivial(h.structure), Mode::one_sided);
  BasePointSet all = base_point_set(trivial.configurations[0], trivial, h, Partition::trivial(h.structure));
  for (long v = -4; v <= 4; ++v) CHECK(all.contains(zz->from_coordinates({Integer(v)})));

  auto f = std::make_shared<FreeGroup>(2);
  Handle hf = make_handle(f, f->standard_generators());
  Partition pf = Partition::prefix(f);
  ConfigurationSet sf = enumerate(hf, pf, Mode::one_sided);
  BasePointSet xb = base_point_set({4, 2, 4}, sf, hf, pf);
  CHECK(xb.contains(f->parse_element("b")));
  CHECK_FALSE(xb.contains(f->parse_element("a")));
}

TEST_CASE("base-point sets partition the ball") {
  auto f = std::make_shared<FreeGroup>(2);
  Handle h = make_handle(f, f->standard_generators());
  Partition p = Partition::prefix(f);
  ConfigurationSet s = enumerate(h, p, Mode::one_sided);
  std::vector<BasePointSet> sets;
  for (const auto& c : s.configurations) sets.push_back(base_point_set(c, s, h, p));
  for (const auto& x : ball(h, 4).elements) {
    std::size_t hits = 0;
    for (const auto& x0 : sets) hits += x0.contains(x) ? 1 : 0;
    CHECK(hits == 1);
  }
}

TEST_CASE("compare") {
  Handle h = z_handle({1, 2});
  Partition p = Partition::congruence(h.structure, {3});
  ConfigurationSet s = enumerate(h, p, Mode::one_sided);
  CHECK(compare(s, s).verdict == ComparisonVerdict::equal);

  auto zz = std::static_pointer_cast<const FgAbelianGroup>(h.structure);
  ConfigurationSet t = enumerate(h, p.translate(zz->from_coordinates({1})), Mode::one_sided);
  CHECK(compare(s, t).verdict == ComparisonVerdict::equal);

  ConfigurationSet mod2 = enumerate(h, Partition::congruence(h.structure, {2}), Mode::one_sided);
  try {
    compare(s, mod2);
    FAIL("expected shape mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::shape_mismatch);
  }

  Handle swapped = z_handle({2, 1});
  ConfigurationSet u = enumerate(swapped, Partition::congruence(swapped.structure, {3}), Mode::one_sided);
  ComparisonReport r = compare(s, u);
  CHECK(r.verdict == ComparisonVerdict::different);
  CHECK(r.a_minus_b.size() == 3);
  CHECK(r.b_minus_a.size() == 3);
}

TEST_CASE("semigroup configurations") {
  auto n = std::make_shared<NaturalNumbers>(1);
  Handle h = make_handle(n, n->standard_generators());
  ConfigurationSet s = enumerate_semigroup(h, Partition::congruence(n, {2}));
  CHECK(s.configurations == std::vector<Configuration>{{1, 2}, {2, 1}});
  CHECK(s.mode == Mode::semigroup_left);

  ConfigurationSet t = enumerate_semigroup(h, Partition::trivial(n));
  CHECK(t.configurations == std::vector<Configuration>{{1, 1}});

  auto fs = std::make_shared<FreeSemigroup>(2, false);
  Handle hs = make_handle(fs, fs->standard_generators());
  ConfigurationSet u = enumerate_semigroup(hs, Partition::prefix(fs));
  CHECK(u.configurations == std::vector<Configuration>{{1, 1, 2}, {2, 1, 2}});
}

TEST_CASE("two-sided configurations collapse on abelian groups") {
  auto g = std::make_shared<FgAbelianGroup>(1, std::vector<Integer>{3});
  std::vector<Element> gens{g->from_coordinates({1, 0}), g->from_coordinates({0, 1}), g->from_coordinates({2, 2})};
  Handle h = make_handle(g, gens);
  Partition p = Partition::congruence(g, {4, 3});
  ConfigurationSet one = enumerate(h, p, Mode::one_sided);
  ConfigurationSet two = enumerate(h, p, Mode::two_sided);
  const std::size_t n = h.generator_count();
  CHECK(two.tuple_length() == 2 * n + 1);
  std::set<Configuration> projected;
  for (const auto& c : two.configurations) {
    for (std::size_t j = 1; j <= n; ++j) CHECK(c[j] == c[n + j]);
    projected.insert(Configuration(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n + 1)));
  }
  CHECK(projected == as_set(one));
  CHECK(two.size() == one.size());
}

TEST_CASE("two-sided configurations differ on F2") {
  auto f = std::make_shared<FreeGroup>(2);
  Handle h = make_handle(f, f->standard_generators());
  ConfigurationSet two = enumerate(h, Partition::prefix(f), Mode::two_sided);
  bool asymmetric = false;
  for (const auto& c : two.configurations) asymmetric = asymmetric || c[1] != c[3] || c[2] != c[4];
  CHECK(asymmetric);
}
