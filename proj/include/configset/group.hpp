#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "configset/arith.hpp"

namespace configset {

enum class StructureKind {
  finite_group,
  free_group,
  fg_abelian,
  direct_product,
  free_product,
  finite_semigroup,
  free_semigroup,
  free_monoid,
  natural_numbers,
};

const char* structure_kind_name(StructureKind kind);

/// An element in canonical normal form. Equality of normal forms is equality
/// of elements, for every kind.
///
///   finite_group / finite_semigroup : {table index}
///   free_group                      : reduced letters, +k for generator k, -k for its inverse
///   fg_abelian                      : free coordinates, then torsion residues
///   direct_product                  : per factor: {length, factor normal form...}
///   free_product                    : per syllable: {factor, length, factor normal form...}
///   free_semigroup / free_monoid    : positive letters
///   natural_numbers                 : nonnegative coordinates
struct Element {
  StructureKind kind{};
  std::vector<Integer> normal_form;

  friend bool operator==(const Element&, const Element&) = default;
};

bool operator<(const Element& lhs, const Element& rhs);

/// Product of standard generators, left to right: (generator index, exponent).
using GeneratorWord = std::vector<std::pair<std::size_t, Integer>>;

class Semigroup {
 public:
  virtual ~Semigroup() = default;

  virtual StructureKind kind() const = 0;
  virtual std::string describe() const = 0;
  virtual bool is_group() const { return false; }

  /// nullopt for infinite structures.
  virtual std::optional<std::size_t> order() const = 0;
  /// All elements in normal-form order. Finite structures only.
  virtual std::vector<Element> elements() const;

  virtual std::vector<Element> standard_generators() const = 0;
  virtual std::optional<Element> identity_element() const = 0;
  virtual Element multiply(const Element& lhs, const Element& rhs) const = 0;

  /// Throws kind_mismatch when the element does not belong here.
  virtual void validate(const Element& element) const = 0;
  virtual std::string format(const Element& element) const = 0;

  /// Length of a shortest word in the standard generators.
  virtual std::size_t word_length(const Element& element) const = 0;

  /// True iff element = divisor * t for some t in the structure.
  virtual bool left_divides(const Element& divisor, const Element& element) const = 0;

  /// Kind-specific literal syntax: integers, tuples, "#k" table indices.
  virtual std::optional<Element> parse_literal(std::string_view text) const;

  /// Positive powers only; groups override for negative exponents.
  virtual Element power(const Element& base, const Integer& exponent) const;

  /// Parses a literal or a word over the standard generator letters
  /// (a, b, c, ...; upper case for inverses; optional ^k exponents; "id" for
  /// the identity).
  Element parse_element(std::string_view text) const;
};

class Group : public Semigroup {
 public:
  bool is_group() const override { return true; }
  std::optional<Element> identity_element() const override { return identity(); }
  bool left_divides(const Element&, const Element&) const override { return true; }
  Element power(const Element& base, const Integer& exponent) const override;

  virtual Element identity() const = 0;
  virtual Element inverse(const Element& element) const = 0;

  /// Some word in the standard generators evaluating to the element.
  virtual GeneratorWord as_word(const Element& element) const = 0;

  /// Throws semantic_error unless standard generator k -> images[k]
  /// extends to a homomorphism into target.
  virtual void check_homomorphism(std::span<const Element> images, const Group& target) const = 0;
};

/// Image of element under the homomorphism fixed by images of the standard
/// generators.
Element apply_homomorphism(const Group& domain, std::span<const Element> images,
                           const Group& target, const Element& element);

/// Formats a generator word with letters a, b, ... (inverses upper case).
std::string format_generator_word(const GeneratorWord& word);

class FiniteGroup final : public Group {
 public:
  /// table[i][j] = index of i*j. Validated (associativity, identity, inverses).
  FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> table,
              std::vector<std::size_t> generator_indices, bool cyclic_literals = false);

  static std::shared_ptr<const FiniteGroup> cyclic(std::size_t order);
  static std::shared_ptr<const FiniteGroup> dihedral(std::size_t n);
  static std::shared_ptr<const FiniteGroup> symmetric(std::size_t n);
  /// Closure of permutations of {0..degree-1}; composition (p*q)(x) = p(q(x)).
  static std::shared_ptr<const FiniteGroup> from_permutations(
      std::string name, const std::vector<std::vector<std::size_t>>& generators);
  /// Table given by rows; standard generators are all non-identity elements.
  static std::shared_ptr<const FiniteGroup> from_table(std::vector<std::vector<std::size_t>> table);

  StructureKind kind() const override { return StructureKind::finite_group; }
  std::string describe() const override { return name_; }
  std::optional<std::size_t> order() const override { return table_.size(); }
  std::vector<Element> elements() const override;
  std::vector<Element> standard_generators() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  void validate(const Element& element) const override;
  std::string format(const Element& element) const override;
  std::size_t word_length(const Element& element) const override;
  std::optional<Element> parse_literal(std::string_view text) const override;

  Element identity() const override;
  Element inverse(const Element& element) const override;
  GeneratorWord as_word(const Element& element) const override;
  void check_homomorphism(std::span<const Element> images, const Group& target) const override;

  Element element_at(std::size_t index) const;
  std::size_t index_of(const Element& element) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::string name_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> generators_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverses_;
  std::vector<GeneratorWord> words_;
  bool cyclic_literals_ = false;
};

class FreeGroup final : public Group {
 public:
  explicit FreeGroup(std::size_t rank);

  StructureKind kind() const override { return StructureKind::free_group; }
  std::string describe() const override;
  std::optional<std::size_t> order() const override;
  std::vector<Element> standard_generators() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  void validate(const Element& element) const override;
  std::string format(const Element& element) const override;
  std::size_t word_length(const Element& element) const override;

  Element identity() const override;
  Element inverse(const Element& element) const override;
  GeneratorWord as_word(const Element& element) const override;
  void check_homomorphism(std::span<const Element> images, const Group& target) const override;

  std::size_t rank() const { return rank_; }
  /// Element from signed letters (+k generator k, -k its inverse), reduced.
  Element from_letters(const std::vector<int>& letters) const;

 private:
  std::size_t rank_;
};

/// Z^free_rank x Z/t_1 x ... x Z/t_k.
class FgAbelianGroup final : public Group {
 public:
  FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion);

  StructureKind kind() const override { return StructureKind::fg_abelian; }
  std::string describe() const override;
  std::optional<std::size_t> order() const override;
  std::vector<Element> elements() const override;
  std::vector<Element> standard_generators() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  void validate(const Element& element) const override;
  std::string format(const Element& element) const override;
  std::size_t word_length(const Element& element) const override;
  std::optional<Element> parse_literal(std::string_view text) const override;

  Element identity() const override;
  Element inverse(const Element& element) const override;
  GeneratorWord as_word(const Element& element) const override;
  void check_homomorphism(std::span<const Element> images, const Group& target) const override;

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t rank() const { return free_rank_ + torsion_.size(); }
  Element from_coordinates(std::vector<Integer> coordinates) const;

 private:
  std::size_t free_rank_;
  std::vector<Integer> torsion_;
};

class DirectProductGroup final : public Group {
 public:
  explicit DirectProductGroup(std::vector<std::shared_ptr<const Group>> factors);

  StructureKind kind() const override { return StructureKind::direct_product; }
  std::string describe() const override;
  std::optional<std::size_t> order() const override;
  std::vector<Element> elements() const override;
  std::vector<Element> standard_generators() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  void validate(const Element& element) const override;
  std::string format(const Element& element) const override;
  std::size_t word_length(const Element& element) const override;
  std::optional<Element> parse_literal(std::string_view text) const override;

  Element identity() const override;
  Element inverse(const Element& element) const override;
  GeneratorWord as_word(const Element& element) const override;
  void check_homomorphism(std::span<const Element> images, const Group& target) const override;

  const std::vector<std::shared_ptr<const Group>>& factors() const { return factors_; }
  std::vector<Element> split(const Element& element) const;
  Element join(const std::vector<Element>& components) const;

 private:
  std::vector<std::shared_ptr<const Group>> factors_;
  std::vector<std::size_t> generator_offsets_;
};

/// Free product of finite groups, syllable normal form.
class FreeProductGroup final : public Group {
 public:
  explicit FreeProductGroup(std::vector<std::shared_ptr<const Group>> factors);

  StructureKind kind() const override { return StructureKind::free_product; }
  std::string describe() const override;
  std::optional<std::size_t> order() const override;
  std::vector<Element> standard_generators() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  void validate(const Element& element) const override;
  std::string format(const Element& element) const override;
  std::size_t word_length(const Element& element) const override;

  Element identity() const override;
  Element inverse(const Element& element) const override;
  GeneratorWord as_word(const Element& element) const override;
  void check_homomorphism(std::span<const Element> images, const Group& target) const override;

  const std::vector<std::shared_ptr<const Group>>& factors() const { return factors_; }
  /// Syllables as (factor index, non-identity factor element).
  std::vector<std::pair<std::size_t, Element>> syllables(const Element& element) const;
  Element from_syllables(const std::vector<std::pair<std::size_t, Element>>& syllables) const;

 private:
  std::vector<std::shared_ptr<const Group>> factors_;
  std::vector<std::size_t> generator_offsets_;
};

class FiniteSemigroup final : public Semigroup {
 public:
  /// Associativity is validated; standard generators are all elements.
  explicit FiniteSemigroup(std::vector<std::vector<std::size_t>> table);

  StructureKind kind() const override { return StructureKind::finite_semigroup; }
  std::string describe() const override;
  std::optional<std::size_t> order() const override { return table_.size(); }
  std::vector<Element> elements() const override;
  std::vector<Element> standard_generators() const override;
  std::optional<Element> identity_element() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  void validate(const Element& element) const override;
  std::string format(const Element& element) const override;
  std::size_t word_length(const Element& element) const override;
  bool left_divides(const Element& divisor, const Element& element) const override;
  std::optional<Element> parse_literal(std::string_view text) const override;

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::optional<std::size_t> identity_;
};

/// Words over positive letters; the monoid variant contains the empty word.
class FreeSemigroup final : public Semigroup {
 public:
  FreeSemigroup(std::size_t rank, bool with_identity);

  StructureKind kind() const override;
  std::string describe() const override;
  std::optional<std::size_t> order() const override;
  std::vector<Element> standard_generators() const override;
  std::optional<Element> identity_element() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  void validate(const Element& element) const override;
  std::string format(const Element& element) const override;
  std::size_t word_length(const Element& element) const override;
  bool left_divides(const Element& divisor, const Element& element) const override;

  std::size_t rank() const { return rank_; }
  bool has_identity() const { return with_identity_; }

 private:
  std::size_t rank_;
  bool with_identity_;
};

/// Additive monoid N^k, 0 included.
class NaturalNumbers final : public Semigroup {
 public:
  explicit NaturalNumbers(std::size_t rank);

  StructureKind kind() const override { return StructureKind::natural_numbers; }
  std::string describe() const override;
  std::optional<std::size_t> order() const override;
  std::vector<Element> standard_generators() const override;
  std::optional<Element> identity_element() const override;
  Element multiply(const Element& lhs, const Element& rhs) const override;
  void validate(const Element& element) const override;
  std::string format(const Element& element) const override;
  std::size_t word_length(const Element& element) const override;
  bool left_divides(const Element& divisor, const Element& element) const override;
  std::optional<Element> parse_literal(std::string_view text) const override;

  std::size_t rank() const { return rank_; }
  Element from_coordinates(std::vector<Integer> coordinates) const;

 private:
  std::size_t rank_;
};

/// A structure together with the ordered generator tuple g = (g_1, ..., g_n).
struct Handle {
  std::shared_ptr<const Semigroup> structure;
  std::vector<Element> generators;

  /// nullptr when the structure is not a group.
  const Group* group() const;
  const Group& require_group() const;
  std::size_t generator_count() const { return generators.size(); }
};

/// Validates that the generator tuple is nonempty and belongs to the structure.
Handle make_handle(std::shared_ptr<const Semigroup> structure, std::vector<Element> generators);

/// (J, sigma): the product g_{J(1)}^{sigma(1)} ... g_{J(p)}^{sigma(p)}, indices 1-based.
struct RepresentativePair {
  std::vector<std::size_t> indices;
  std::vector<int> signs;
  bool reduced = false;

  /// Shape, sign values, and (when flagged) the reduced-form rule.
  void validate() const;
};

Element word_evaluate(const RepresentativePair& pair, const Handle& handle);

inline constexpr std::size_t kDefaultBallCap = 1'000'000;

/// Elements reachable by words of length <= radius over the handle's
/// generators (and their inverses for groups), ordered by word length and then
/// by normal form.
struct Ball {
  std::size_t radius = 0;
  std::vector<Element> elements;
  /// Elements at distance exactly r occupy [layer_starts[r], layer_starts[r+1]).
  std::vector<std::size_t> layer_starts;

  std::size_t size() const { return elements.size(); }
  /// Elements at distance <= r (a prefix of elements).
  std::span<const Element> within(std::size_t r) const;
  std::optional<std::size_t> distance(const Element& element) const;

 private:
  friend Ball ball(const Handle& handle, std::size_t radius, std::size_t cap);
  std::map<Element, std::size_t> distances_;
};

Ball ball(const Handle& handle, std::size_t radius, std::size_t cap = kDefaultBallCap);

}  // namespace configset
