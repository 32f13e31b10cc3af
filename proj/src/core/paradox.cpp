#include "configset/paradox.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "configset/error.hpp"

namespace configset {

// ---------------------------------------------------------------------------
// Atoms

AtomFamily::AtomFamily(Handle handle, Partition partition, ConfigurationSet set)
    : handle_(std::move(handle)), partition_(std::move(partition)), set_(std::move(set)) {
  if (set_.generator_count != handle_.generators.size() || set_.block_count != partition_.block_count()) {
    throw Error(ErrorCode::shape_mismatch, "configuration set does not match the handle and partition");
  }
}

std::vector<std::size_t> AtomFamily::atoms(std::size_t color, std::size_t position) const {
  if (color < 1 || color > set_.block_count || position > set_.generator_count) {
    throw Error(ErrorCode::index_out_of_range, "A^" + std::to_string(position) + "_" + std::to_string(color) +
                                                   " out of range");
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < set_.size(); ++k) {
    if (set_.configurations[k][position] == color) out.push_back(k);
  }
  return out;
}

std::optional<std::size_t> AtomFamily::atom_of(const Element& x) const {
  return set_.index_of(configuration_of(handle_, partition_, set_.mode, x));
}

bool AtomFamily::in_union(const Element& x, std::size_t color, std::size_t position) const {
  auto k = atom_of(x);
  return k && set_.configurations[*k][position] == color;
}

bool AtomFamily::partitions_configurations() const {
  for (std::size_t j = 0; j <= set_.generator_count; ++j) {
    std::vector<int> hits(set_.size(), 0);
    for (std::size_t i = 1; i <= set_.block_count; ++i)
      for (auto k : atoms(i, j)) ++hits[k];
    if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) return false;
  }
  return true;
}

namespace {

// g_0 = e, then the handle's generators.
std::vector<Element> extended_generators(const Handle& handle) {
  std::vector<Element> out{handle.require_group().identity()};
  out.insert(out.end(), handle.generators.begin(), handle.generators.end());
  return out;
}

std::size_t generator_length(const Ball& b, const Element& x) {
  return b.distance(x).value_or(b.radius + 1);
}

}  // namespace

TranslationLemmaReport check_translation_lemma(const AtomFamily& family, std::size_t radius, std::size_t cap) {
  const Handle& handle = family.handle();
  const Group& g = handle.require_group();
  const Ball b = ball(handle, radius, cap);
  const auto gens = extended_generators(handle);
  std::size_t maxlen = 0;
  for (const auto& x : gens) maxlen = std::max(maxlen, generator_length(b, x));

  TranslationLemmaReport out;
  out.radius = radius;
  out.checked_radius = radius >= 2 * maxlen ? radius - 2 * maxlen : 0;
  if (radius < 2 * maxlen) return out;

  std::map<Element, std::optional<std::size_t>> atom_cache;
  auto atom = [&](const Element& x) -> std::optional<std::size_t> {
    auto it = atom_cache.find(x);
    if (it != atom_cache.end()) return it->second;
    auto k = family.atom_of(x);
    atom_cache.emplace(x, k);
    return k;
  };
  const auto& configs = family.set().configurations;
  const std::size_t n = handle.generators.size();
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t jp = 0; jp <= n; ++jp) {
      const Element t_inv = g.multiply(g.inverse(gens[j]), gens[jp]);
      for (const auto& y : b.within(out.checked_radius)) {
        const Element pre = g.multiply(t_inv, y);
        const bool pre_in_ball = b.distance(pre).has_value();
        const auto pre_atom = atom(pre);
        const auto y_atom = atom(y);
        for (std::size_t i = 1; i <= family.set().block_count; ++i) {
          const bool lhs = pre_in_ball && pre_atom && configs[*pre_atom][j] == i;
          const bool rhs = y_atom && configs[*y_atom][jp] == i;
          ++out.checks;
          if (lhs != rhs) out.counterexamples.emplace_back(i, j, jp, y);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Paradoxical condition

namespace {

using IntRow = std::vector<long>;

struct ColorOption {
  IntRow contribution;
  std::pair<std::size_t, std::size_t> indices;
};

// Distinct L^j_i - L^k_i for one color, each with its lexicographically first (j, k).
std::vector<ColorOption> color_options(const EquationSystem& system, std::size_t color) {
  const std::size_t n = system.generator_count();
  std::vector<std::vector<int>> ind;
  for (std::size_t j = 0; j <= n; ++j) ind.push_back(system.indicator(color, j));
  std::vector<ColorOption> out;
  std::set<IntRow> seen;
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t k = 0; k <= n; ++k) {
      IntRow v(system.variable_count());
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = ind[j][c] - ind[k][c];
      if (seen.insert(v).second) out.push_back({std::move(v), {j, k}});
    }
  }
  return out;
}

class RowSearch {
 public:
  RowSearch(const EquationSystem& system, std::size_t cap) : cap_(cap), width_(system.variable_count()) {
    for (std::size_t i = 1; i <= system.block_count(); ++i) options_.push_back(color_options(system, i));
    for (const auto& o : options_.back()) last_.emplace(o.contribution, o.indices);
  }

  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> express(const IntRow& target) {
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    IntRow partial(width_, 0);
    if (dfs(0, partial, target, chosen)) return chosen;
    return std::nullopt;
  }

  /// Every distinct structured row, in the order of first appearance.
  void enumerate(const std::function<void(const IntRow&, const std::vector<std::pair<std::size_t, std::size_t>>&)>& visit) {
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    IntRow partial(width_, 0);
    std::set<IntRow> seen;
    walk(0, partial, chosen, seen, visit);
  }

 private:
  void tick() {
    if (++nodes_ > cap_) {
      throw Error(ErrorCode::search_cap_exceeded,
                  "paradoxical-condition search exceeded " + std::to_string(cap_) + " nodes");
    }
  }

  bool dfs(std::size_t color, IntRow& partial, const IntRow& target,
           std::vector<std::pair<std::size_t, std::size_t>>& chosen) {
    tick();
    if (color + 1 == options_.size()) {
      IntRow rest(width_);
      for (std::size_t c = 0; c < width_; ++c) rest[c] = target[c] - partial[c];
      auto it = last_.find(rest);
      if (it == last_.end()) return false;
      chosen.push_back(it->second);
      return true;
    }
    for (const auto& o : options_[color]) {
      for (std::size_t c = 0; c < width_; ++c) partial[c] += o.contribution[c];
      chosen.push_back(o.indices);
      if (dfs(color + 1, partial, target, chosen)) return true;
      chosen.pop_back();
      for (std::size_t c = 0; c < width_; ++c) partial[c] -= o.contribution[c];
    }
    return false;
  }

  void walk(std::size_t color, IntRow& partial, std::vector<std::pair<std::size_t, std::size_t>>& chosen,
            std::set<IntRow>& seen,
            const std::function<void(const IntRow&, const std::vector<std::pair<std::size_t, std::size_t>>&)>& visit) {
    tick();
    if (color == options_.size()) {
      if (seen.insert(partial).second) visit(partial, chosen);
      return;
    }
    for (const auto& o : options_[color]) {
      for (std::size_t c = 0; c < width_; ++c) partial[c] += o.contribution[c];
      chosen.push_back(o.indices);
      walk(color + 1, partial, chosen, seen, visit);
      chosen.pop_back();
      for (std::size_t c = 0; c < width_; ++c) partial[c] -= o.contribution[c];
    }
  }

  std::size_t cap_;
  std::size_t width_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<ColorOption>> options_;
  std::map<IntRow, std::pair<std::size_t, std::size_t>> last_;
};

StructuredRow make_structured(const IntRow& row, std::vector<std::pair<std::size_t, std::size_t>> indices) {
  StructuredRow out;
  for (long v : row) out.row.emplace_back(v);
  out.indices = std::move(indices);
  return out;
}

}  // namespace

std::optional<StructuredRow> express_row(const EquationSystem& system, const std::vector<Integer>& row,
                                         std::size_t cap) {
  if (row.size() != system.variable_count()) throw Error(ErrorCode::shape_mismatch, "row length differs from variable count");
  const long bound = static_cast<long>(system.block_count());
  IntRow target;
  for (const auto& v : row) {
    if (v > bound || v < -bound) return std::nullopt;
    target.push_back(static_cast<long>(v));
  }
  RowSearch search(system, cap);
  auto indices = search.express(target);
  if (!indices) return std::nullopt;
  return make_structured(target, std::move(*indices));
}

ParadoxicalCondition check_paradoxical_condition(const EquationSystem& system,
                                                 const std::vector<std::vector<Integer>>& b, std::size_t cap) {
  ParadoxicalCondition out;
  if (!b.empty()) {
    std::vector<StructuredRow> rows;
    for (const auto& row : b) {
      auto s = express_row(system, row, cap);
      if (!s) break;
      rows.push_back(std::move(*s));
    }
    if (rows.size() == b.size()) {
      out.status = ConditionStatus::certificate;
      out.from_given_rows = true;
      out.rows = std::move(rows);
      return out;
    }
  }

  const std::size_t width = system.variable_count();
  std::optional<StructuredRow> positive;
  std::vector<StructuredRow> nonnegative;
  RowSearch search(system, cap);
  search.enumerate([&](const IntRow& row, const auto& indices) {
    if (positive) return;
    if (std::all_of(row.begin(), row.end(), [](long v) { return v > 0; })) {
      positive = make_structured(row, indices);
    } else if (std::all_of(row.begin(), row.end(), [](long v) { return v >= 0; }) &&
               std::any_of(row.begin(), row.end(), [](long v) { return v > 0; })) {
      nonnegative.push_back(make_structured(row, indices));
    }
  });
  if (positive) {
    out.status = ConditionStatus::certificate;
    out.rows.push_back(std::move(*positive));
    return out;
  }
  // Greedy cover of the columns by nonnegative rows; B f = 0 then forces f = 0.
  std::vector<bool> covered(width, false);
  std::size_t remaining = width;
  std::vector<StructuredRow> chosen;
  while (remaining > 0) {
    std::size_t best = nonnegative.size();
    std::size_t best_gain = 0;
    for (std::size_t r = 0; r < nonnegative.size(); ++r) {
      std::size_t gain = 0;
      for (std::size_t c = 0; c < width; ++c)
        if (!covered[c] && nonnegative[r].row[c] > 0) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = r;
      }
    }
    if (best == nonnegative.size()) return out;
    for (std::size_t c = 0; c < width; ++c) {
      if (!covered[c] && nonnegative[best].row[c] > 0) {
        covered[c] = true;
        --remaining;
      }
    }
    chosen.push_back(nonnegative[best]);
  }
  out.status = ConditionStatus::certificate;
  out.rows = std::move(chosen);
  return out;
}

// ---------------------------------------------------------------------------
// Decompositions

const char* violation_kind_name(DecompositionViolation::Kind kind) {
  switch (kind) {
    case DecompositionViolation::Kind::overlap: return "overlap";
    case DecompositionViolation::Kind::uncovered_a: return "uncovered_A";
    case DecompositionViolation::Kind::uncovered_b: return "uncovered_B";
  }
  return "unknown";
}

bool ParadoxicalDecomposition::contains(std::size_t piece, const Element& x) const {
  auto k = set.index_of(configuration_of(handle, partition, set.mode, x));
  if (!k) return false;
  const auto& atoms = pieces.at(piece).atoms;
  return std::find(atoms.begin(), atoms.end(), *k) != atoms.end();
}

VerificationReport verify_decomposition(const ParadoxicalDecomposition& dec, std::size_t radius, std::size_t cap) {
  const Group& g = dec.handle.require_group();
  const Ball b = ball(dec.handle, radius, cap);
  VerificationReport out;
  out.radius = radius;
  out.ball_size = b.size();
  for (const auto& p : dec.pieces) out.max_translator_length = std::max(out.max_translator_length, generator_length(b, p.translator));

  std::map<Element, std::optional<std::size_t>> atom_cache;
  auto atom = [&](const Element& x) -> std::optional<std::size_t> {
    auto it = atom_cache.find(x);
    if (it != atom_cache.end()) return it->second;
    auto k = dec.set.index_of(configuration_of(dec.handle, dec.partition, dec.set.mode, x));
    atom_cache.emplace(x, k);
    return k;
  };
  std::vector<std::set<std::size_t>> atom_sets;
  std::vector<Element> inverses;
  for (const auto& p : dec.pieces) {
    atom_sets.emplace_back(p.atoms.begin(), p.atoms.end());
    inverses.push_back(g.inverse(p.translator));
  }
  auto in_piece = [&](std::size_t piece, const Element& x) {
    auto k = atom(x);
    return k && atom_sets[piece].count(*k) > 0;
  };

  for (const auto& y : b.elements) {
    std::vector<std::size_t> hits;
    for (std::size_t p = 0; p < dec.pieces.size(); ++p)
      if (in_piece(p, y)) hits.push_back(p);
    if (hits.size() > 1) out.violations.push_back({DecompositionViolation::Kind::overlap, y, hits});
  }
  if (out.max_translator_length > radius) return out;
  const auto interior = b.within(radius - out.max_translator_length);
  out.interior_size = interior.size();
  for (const auto& y : interior) {
    bool a = false;
    bool bb = false;
    for (std::size_t p = 0; p < dec.pieces.size(); ++p) {
      bool& flag = dec.pieces[p].side == Side::a ? a : bb;
      if (!flag && in_piece(p, g.multiply(inverses[p], y))) flag = true;
    }
    if (!a) out.violations.push_back({DecompositionViolation::Kind::uncovered_a, y, {}});
    if (!bb) out.violations.push_back({DecompositionViolation::Kind::uncovered_b, y, {}});
  }
  return out;
}

std::vector<Element> candidate_translators(const Handle& handle, const ParadoxicalCondition* condition) {
  const Group& g = handle.require_group();
  const auto gens = extended_generators(handle);
  std::set<Element> all;
  for (const auto& gj : gens)
    for (const auto& gjp : gens) all.insert(g.multiply(g.inverse(gjp), gj));
  std::set<Element> suggested;
  if (condition) {
    for (const auto& row : condition->rows) {
      for (const auto& [j, k] : row.indices) {
        if (j == k || j >= gens.size() || k >= gens.size()) continue;
        suggested.insert(g.multiply(g.inverse(gens[k]), gens[j]));
        suggested.insert(g.multiply(g.inverse(gens[j]), gens[k]));
      }
    }
  }
  const Ball b = ball(handle, 2);
  std::vector<Element> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(), [&](const Element& x, const Element& y) {
    auto kx = std::make_pair(generator_length(b, x), suggested.count(x) == 0);
    auto ky = std::make_pair(generator_length(b, y), suggested.count(y) == 0);
    return kx < ky;
  });
  return out;
}

namespace {

// Positive clauses over (atom, piece) literals with at most one piece per atom.
class CoverSolver {
 public:
  using Literal = std::pair<int, int>;

  CoverSolver(std::size_t atoms, std::vector<std::vector<Literal>> clauses, std::size_t node_cap)
      : assignment_(atoms, -1), clauses_(std::move(clauses)), node_cap_(node_cap) {}

  bool solve() { return search(); }
  const std::vector<int>& assignment() const { return assignment_; }

 private:
  bool search() {
    if (++nodes_ > node_cap_) return false;
    std::size_t best = clauses_.size();
    std::size_t best_free = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = 0; c < clauses_.size(); ++c) {
      bool satisfied = false;
      std::size_t free = 0;
      for (const auto& [atom, piece] : clauses_[c]) {
        if (assignment_[atom] == piece) {
          satisfied = true;
          break;
        }
        if (assignment_[atom] < 0) ++free;
      }
      if (satisfied) continue;
      if (free == 0) return false;
      if (free < best_free) {
        best_free = free;
        best = c;
      }
    }
    if (best == clauses_.size()) return true;
    for (const auto& [atom, piece] : clauses_[best]) {
      if (assignment_[atom] >= 0) continue;
      assignment_[atom] = piece;
      if (search()) return true;
      assignment_[atom] = -1;
    }
    return false;
  }

  std::vector<int> assignment_;
  std::vector<std::vector<Literal>> clauses_;
  std::size_t node_cap_;
  std::size_t nodes_ = 0;
};

void multisets(std::size_t size, std::size_t alphabet, std::size_t start, std::vector<std::size_t>& current,
               std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == size) {
    out.push_back(current);
    return;
  }
  for (std::size_t k = start; k < alphabet; ++k) {
    current.push_back(k);
    multisets(size, alphabet, k, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<std::size_t>> multisets(std::size_t size, std::size_t alphabet) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  multisets(size, alphabet, 0, current, out);
  return out;
}

}  // namespace

SynthesisResult synthesize_decomposition(const Handle& handle, const Partition& partition,
                                         const ConfigurationSet& set, const ParadoxicalCondition* condition,
                                         const SynthesisOptions& options) {
  if (set.mode == Mode::semigroup_left || !handle.group()) {
    throw Error(ErrorCode::precondition_failed, "decomposition synthesis needs a group configuration set");
  }
  if (solve_nonzero_nonnegative(build_equations(set)).feasible) {
    throw Error(ErrorCode::precondition_failed,
                "the configuration equations have a normalized solution; no paradoxical decomposition exists");
  }
  const Group& g = handle.require_group();
  const auto translators = candidate_translators(handle, condition);
  const Ball b = ball(handle, options.radius, options.ball_cap);
  std::vector<std::size_t> lengths;
  for (const auto& t : translators) lengths.push_back(generator_length(b, t));

  // atom_at[t][y]: atom of t^{-1} y for every ball element y, -1 if unlisted.
  std::vector<std::vector<int>> atom_at(translators.size(), std::vector<int>(b.size(), -1));
  for (std::size_t t = 0; t < translators.size(); ++t) {
    const Element inv = g.inverse(translators[t]);
    for (std::size_t y = 0; y < b.size(); ++y) {
      auto k = set.index_of(configuration_of(handle, partition, set.mode, g.multiply(inv, b.elements[y])));
      if (k) atom_at[t][y] = static_cast<int>(*k);
    }
  }

  std::size_t attempts = 0;
  for (std::size_t tau = 4; tau <= options.max_pieces; ++tau) {
    for (std::size_t p = 2; p + 2 <= tau; ++p) {
      const std::size_t q = tau - p;
      if (p > q) continue;
      const auto side_a = multisets(p, translators.size());
      const auto side_b = multisets(q, translators.size());
      struct Combo {
        std::size_t maxlen;
        std::size_t a;
        std::size_t b;
      };
      std::vector<Combo> combos;
      for (std::size_t ia = 0; ia < side_a.size(); ++ia) {
        for (std::size_t ib = 0; ib < side_b.size(); ++ib) {
          if (p == q && side_b[ib] < side_a[ia]) continue;
          std::size_t maxlen = 0;
          for (auto t : side_a[ia]) maxlen = std::max(maxlen, lengths[t]);
          for (auto t : side_b[ib]) maxlen = std::max(maxlen, lengths[t]);
          if (maxlen <= options.radius) combos.push_back({maxlen, ia, ib});
        }
      }
      std::stable_sort(combos.begin(), combos.end(),
                       [](const Combo& x, const Combo& y) { return x.maxlen < y.maxlen; });

      for (const auto& combo : combos) {
        if (++attempts > options.max_attempts) {
          throw Error(ErrorCode::synthesis_failed,
                      "no verified decomposition within " + std::to_string(options.max_attempts) + " translator choices");
        }
        std::vector<std::size_t> chosen = side_a[combo.a];
        chosen.insert(chosen.end(), side_b[combo.b].begin(), side_b[combo.b].end());
        const std::size_t interior = b.within(options.radius - combo.maxlen).size();
        std::set<std::vector<CoverSolver::Literal>> clause_set;
        bool hopeless = false;
        for (std::size_t y = 0; y < interior && !hopeless; ++y) {
          for (int side = 0; side < 2; ++side) {
            std::vector<CoverSolver::Literal> clause;
            const std::size_t lo = side == 0 ? 0 : p;
            const std::size_t hi = side == 0 ? p : tau;
            for (std::size_t piece = lo; piece < hi; ++piece) {
              const int a = atom_at[chosen[piece]][y];
              if (a >= 0) clause.emplace_back(a, static_cast<int>(piece));
            }
            if (clause.empty()) {
              hopeless = true;
              break;
            }
            std::sort(clause.begin(), clause.end());
            clause_set.insert(std::move(clause));
          }
        }
        if (hopeless) continue;
        CoverSolver solver(set.size(), {clause_set.begin(), clause_set.end()}, options.node_cap);
        if (!solver.solve()) continue;

        ParadoxicalDecomposition dec{handle, partition, set, {}};
        for (std::size_t piece = 0; piece < tau; ++piece) {
          DecompositionPiece out{piece < p ? Side::a : Side::b, translators[chosen[piece]], {}};
          for (std::size_t atom = 0; atom < set.size(); ++atom)
            if (solver.assignment()[atom] == static_cast<int>(piece)) out.atoms.push_back(atom);
          dec.pieces.push_back(std::move(out));
        }
        auto report = verify_decomposition(dec, options.radius, options.ball_cap);
        if (!report.valid()) continue;
        return SynthesisResult{std::move(dec), std::move(report), attempts};
      }
    }
  }
  throw Error(ErrorCode::synthesis_failed,
              "no verified decomposition with at most " + std::to_string(options.max_pieces) + " pieces");
}

Integer tarski_upper_bound(std::size_t l) {
  if (l == 0) throw Error(ErrorCode::precondition_failed, "the bound needs l >= 1");
  const Integer base(l);
  return base + boost::multiprecision::pow(base, static_cast<unsigned>(2 * l));
}

// ---------------------------------------------------------------------------
// Normal condition

const char* pi_convention_name(PiConvention convention) {
  return convention == PiConvention::compose ? "compose" : "one-line";
}

NormalConditionResult check_normal_condition(const IntMatrix& a, const IntMatrix& b, PiConvention convention) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n) throw Error(ErrorCode::shape_mismatch, "A and B need the same nonzero row count");
  const std::size_t width = a[0].size();
  for (std::size_t r = 0; r < n; ++r) {
    if (a[r].size() != width || b[r].size() != width) throw Error(ErrorCode::shape_mismatch, "A and B differ in shape");
    for (std::size_t c = 0; c < width; ++c) {
      if ((a[r][c] != 0 && a[r][c] != 1) || (b[r][c] != 0 && b[r][c] != 1)) {
        throw Error(ErrorCode::precondition_failed, "A and B must be 0/1 matrices");
      }
    }
  }
  if (n > kMaxNormalRows) {
    throw Error(ErrorCode::search_cap_exceeded,
                std::to_string(n) + " rows exceed the exhaustive permutation limit of " + std::to_string(kMaxNormalRows));
  }
  IntMatrix diff(n, std::vector<int>(width));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < width; ++c) diff[r][c] = b[r][c] - a[r][c];
  for (std::size_t c = 0; c < width; ++c) {
    int sum = 0;
    for (std::size_t r = 0; r < n; ++r) sum += diff[r][c];
    if (sum <= 0) {
      throw Error(ErrorCode::precondition_failed,
                  "column " + std::to_string(c + 1) + " of sum(B - A) is not strictly positive");
    }
  }

  NormalConditionResult out;
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    ++out.permutations_checked;
    std::vector<std::size_t> rho(n);
    for (std::size_t i = 0; i < n; ++i) {
      rho[i] = convention == PiConvention::compose ? pi[(i + 1) % n] : (pi[i] + 1) % n;
    }
    IntMatrix m(n, std::vector<int>(width));
    std::vector<int> running(width, 0);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t c = 0; c < width; ++c) {
        running[c] += diff[pi[i]][c];
        m[i][c] = running[c] - a[rho[i]][c];
        if (m[i][c] < -1) ok = false;
      }
    }
    if (ok) {
      out.normal = true;
      for (auto v : pi) out.permutation.push_back(v + 1);
      out.witness = std::move(m);
      return out;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

std::optional<NormalSubsystem> search_normal_subsystems(const EquationSystem& system, PiConvention convention,
                                                        std::size_t max_rows) {
  const auto& labels = system.labels();
  const std::size_t limit = std::min({max_rows, kMaxNormalRows, labels.size()});
  for (std::size_t len = 1; len <= limit; ++len) {
    for (std::size_t first = 0; first + len <= labels.size(); ++first) {
      for (bool swapped : {false, true}) {
        IntMatrix a;
        IntMatrix b;
        for (std::size_t r = first; r < first + len; ++r) {
          auto base = system.indicator(labels[r].color, 0);
          auto moved = system.indicator(labels[r].color, labels[r].position);
          b.push_back(swapped ? moved : base);
          a.push_back(swapped ? base : moved);
        }
        try {
          auto result = check_normal_condition(a, b, convention);
          if (result.normal) return NormalSubsystem{first, len, swapped, std::move(result)};
        } catch (const Error& e) {
          if (e.code() != ErrorCode::precondition_failed) throw;
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Semigroups

namespace {

bool in_piece_set(const Semigroup& s, const SemigroupPieceSet& piece, const Partition* partition, const Element& x) {
  for (const auto& e : piece.elements)
    if (e == x) return true;
  for (const auto& ideal : piece.ideals)
    if (s.left_divides(ideal, x)) return true;
  if (!piece.blocks.empty()) {
    const std::size_t c = partition->color(x);
    if (std::find(piece.blocks.begin(), piece.blocks.end(), c) != piece.blocks.end()) return true;
  }
  return false;
}

}  // namespace

SemigroupParadoxReport left_paradox_semigroup(const Handle& handle, const std::vector<SemigroupPiece>& pieces,
                                              std::size_t radius, const Partition* partition, std::size_t cap) {
  const Semigroup& s = *handle.structure;
  for (const auto& p : pieces) {
    if (!p.set.blocks.empty() && !partition) {
      throw Error(ErrorCode::precondition_failed, "block pieces need a partition");
    }
  }
  const Ball b = ball(handle, radius, cap);
  SemigroupParadoxReport out;
  out.radius = radius;
  out.ball_size = b.size();
  for (const auto& t : b.elements) {
    std::vector<std::size_t> hits;
    for (std::size_t p = 0; p < pieces.size(); ++p)
      if (in_piece_set(s, pieces[p].set, partition, t)) hits.push_back(p);
    if (hits.size() > 1) out.violations.push_back({DecompositionViolation::Kind::overlap, t, hits});
    if (hits.empty()) out.unassigned.push_back(t);
    bool a = false;
    bool bb = false;
    for (const auto& p : pieces) {
      bool& flag = p.side == Side::a ? a : bb;
      if (!flag && in_piece_set(s, p.set, partition, s.multiply(p.translator, t))) flag = true;
    }
    if (!a) out.violations.push_back({DecompositionViolation::Kind::uncovered_a, t, {}});
    if (!bb) out.violations.push_back({DecompositionViolation::Kind::uncovered_b, t, {}});
  }
  return out;
}

SemigroupSearchResult search_semigroup_paradox(const Handle& handle, const Partition& partition, std::size_t radius,
                                               std::size_t max_pieces) {
  const Semigroup& s = *handle.structure;
  const Ball b = ball(handle, radius);
  const std::vector<Element> translators = ball(handle, 1).elements;
  const std::size_t m = partition.block_count();

  // moved[t][y] = color of translators[t] * y.
  std::vector<std::vector<std::size_t>> moved(translators.size(), std::vector<std::size_t>(b.size()));
  for (std::size_t t = 0; t < translators.size(); ++t)
    for (std::size_t y = 0; y < b.size(); ++y) moved[t][y] = partition.color(s.multiply(translators[t], b.elements[y]));

  SemigroupSearchResult out;
  for (std::size_t tau = 2; tau <= max_pieces; ++tau) {
    for (std::size_t p = 1; p < tau; ++p) {
      const std::size_t q = tau - p;
      for (const auto& ta : multisets(p, translators.size())) {
        for (const auto& tb : multisets(q, translators.size())) {
          std::vector<std::size_t> chosen = ta;
          chosen.insert(chosen.end(), tb.begin(), tb.end());
          // owner[c-1] in 0..tau: 0 leaves block c unassigned.
          std::vector<std::size_t> owner(m, 0);
          for (;;) {
            std::vector<bool> used(tau, false);
            for (auto o : owner)
              if (o) used[o - 1] = true;
            if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) {
              ++out.systems_checked;
              bool ok = true;
              for (std::size_t y = 0; y < b.size() && ok; ++y) {
                bool a = false;
                bool bb = false;
                for (std::size_t piece = 0; piece < tau; ++piece) {
                  if (owner[moved[chosen[piece]][y] - 1] == piece + 1) (piece < p ? a : bb) = true;
                }
                ok = a && bb;
              }
              if (ok) {
                std::vector<SemigroupPiece> pieces;
                for (std::size_t piece = 0; piece < tau; ++piece) {
                  SemigroupPiece sp{piece < p ? Side::a : Side::b, translators[chosen[piece]], {}};
                  for (std::size_t c = 0; c < m; ++c)
                    if (owner[c] == piece + 1) sp.set.blocks.push_back(c + 1);
                  pieces.push_back(std::move(sp));
                }
                if (left_paradox_semigroup(handle, pieces, radius, &partition).valid()) {
                  out.pieces = std::move(pieces);
                  return out;
                }
              }
            }
            std::size_t k = 0;
            while (k < m && owner[k] == tau) owner[k++] = 0;
            if (k == m) break;
            ++owner[k];
          }
        }
      }
    }
  }
  return out;
}

}  // namespace configset
