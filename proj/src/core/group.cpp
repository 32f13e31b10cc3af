#include "configset/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "configset/error.hpp"

namespace configset {

namespace {

constexpr std::size_t kMaxFiniteOrder = 2048;

[[noreturn]] void kind_error(const std::string& message) {
  throw Error(ErrorCode::kind_mismatch, message);
}

std::size_t to_size(const Integer& value) {
  if (value < 0 || value > Integer(std::numeric_limits<std::size_t>::max())) {
    throw Error(ErrorCode::index_out_of_range, "value out of range: " + value.str());
  }
  return value.convert_to<std::size_t>();
}

Integer floor_mod(const Integer& value, const Integer& modulus) {
  Integer r = value % modulus;
  if (r < 0) r += modulus;
  return r;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

std::optional<Integer> parse_plain_integer(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return std::nullopt;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
  }
  std::string digits(text.substr(start));
  Integer value(digits);
  return text[0] == '-' ? Integer(-value) : value;
}

/// Splits "(x, y, z)" at top-level commas; nullopt unless parenthesized.
std::optional<std::vector<std::string>> split_tuple(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  for (char c : text.substr(1, text.size() - 2)) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.emplace_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.emplace_back(trim(current));
  return parts;
}

std::optional<std::vector<Integer>> parse_integer_tuple(std::string_view text, std::size_t arity) {
  std::vector<Integer> values;
  if (auto parts = split_tuple(text)) {
    for (const auto& part : *parts) {
      auto v = parse_plain_integer(part);
      if (!v) return std::nullopt;
      values.push_back(*v);
    }
  } else if (arity == 1) {
    auto v = parse_plain_integer(text);
    if (!v) return std::nullopt;
    values.push_back(*v);
  } else {
    return std::nullopt;
  }
  if (values.size() != arity) return std::nullopt;
  return values;
}

std::string format_integer_tuple(const std::vector<Integer>& values) {
  if (values.size() == 1) return values[0].str();
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += values[i].str();
  }
  return out + ")";
}

std::optional<std::size_t> parse_table_index(std::string_view text, std::size_t order) {
  text = trim(text);
  if (text.empty() || text[0] != '#') return std::nullopt;
  auto v = parse_plain_integer(text.substr(1));
  if (!v || *v < 0 || *v >= Integer(order)) return std::nullopt;
  return v->convert_to<std::size_t>();
}

char letter_for(std::size_t generator, bool inverse) {
  char c = static_cast<char>('a' + generator);
  return inverse ? static_cast<char>(std::toupper(c)) : c;
}

/// Checks that a finite table is closed and returns the identity, if any.
std::optional<std::size_t> find_table_identity(const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t n = table.size();
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) return e;
  }
  return std::nullopt;
}

void check_table_shape(const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorCode::semantic_error, "multiplication table is empty");
  if (n > kMaxFiniteOrder) throw Error(ErrorCode::resource_limit, "finite structure too large");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorCode::semantic_error, "multiplication table is not square");
    for (auto v : row) {
      if (v >= n) throw Error(ErrorCode::semantic_error, "multiplication table entry out of range");
    }
  }
}

void check_associative(const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t n = table.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw Error(ErrorCode::semantic_error, "multiplication table is not associative");
        }
}

GeneratorWord shift_word(const GeneratorWord& word, std::size_t offset) {
  GeneratorWord out;
  out.reserve(word.size());
  for (const auto& [g, e] : word) out.emplace_back(g + offset, e);
  return out;
}

}  // namespace

const char* structure_kind_name(StructureKind kind) {
  switch (kind) {
    case StructureKind::finite_group: return "finite";
    case StructureKind::free_group: return "free";
    case StructureKind::fg_abelian: return "fg_abelian";
    case StructureKind::direct_product: return "direct_product";
    case StructureKind::free_product: return "free_product";
    case StructureKind::finite_semigroup: return "finite_semigroup";
    case StructureKind::free_semigroup: return "free_semigroup";
    case StructureKind::free_monoid: return "free_monoid";
    case StructureKind::natural_numbers: return "natural_numbers";
  }
  return "unknown";
}

bool operator<(const Element& lhs, const Element& rhs) {
  if (lhs.kind != rhs.kind) return lhs.kind < rhs.kind;
  return std::lexicographical_compare(lhs.normal_form.begin(), lhs.normal_form.end(),
                                      rhs.normal_form.begin(), rhs.normal_form.end());
}

std::string format_generator_word(const GeneratorWord& word) {
  if (word.empty()) return "e";
  std::string out;
  for (const auto& [g, e] : word) {
    if (e == 0) continue;
    Integer magnitude = e < 0 ? Integer(-e) : e;
    char c = letter_for(g, e < 0);
    if (magnitude <= 3) {
      out.append(magnitude.convert_to<std::size_t>(), c);
    } else {
      out += c;
      out += "^" + magnitude.str();
    }
  }
  return out.empty() ? "e" : out;
}

// ---------------------------------------------------------------------------
// Semigroup / Group defaults

std::vector<Element> Semigroup::elements() const {
  throw Error(ErrorCode::precondition_failed, describe() + " is infinite; cannot list elements");
}

std::optional<Element> Semigroup::parse_literal(std::string_view) const { return std::nullopt; }

Element Semigroup::power(const Element& base, const Integer& exponent) const {
  if (exponent == 0) {
    if (auto id = identity_element()) return *id;
    throw Error(ErrorCode::precondition_failed, "zero power in a semigroup without identity");
  }
  if (exponent < 0) throw Error(ErrorCode::precondition_failed, "negative power in a semigroup");
  Element result = base;
  Element square = base;
  Integer remaining = exponent - 1;
  while (remaining > 0) {
    if ((remaining & 1) != 0) result = multiply(result, square);
    remaining >>= 1;
    if (remaining > 0) square = multiply(square, square);
  }
  return result;
}

Element Group::power(const Element& base, const Integer& exponent) const {
  if (exponent == 0) return identity();
  if (exponent < 0) return Semigroup::power(inverse(base), -exponent);
  return Semigroup::power(base, exponent);
}

Element Semigroup::parse_element(std::string_view text) const {
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::syntax_error, "empty element");
  if (auto literal = parse_literal(text)) return *literal;
  const auto generators = standard_generators();
  if (text == "id" || (text == "e" && generators.size() < 5)) {
    if (auto id = identity_element()) return *id;
    throw Error(ErrorCode::semantic_error, describe() + " has no identity element");
  }
  std::optional<Element> result;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos++];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') continue;
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::syntax_error, "unexpected character '" + std::string(1, c) + "' in element '" +
                                               std::string(text) + "'");
    }
    bool inverse = std::isupper(static_cast<unsigned char>(c)) != 0;
    std::size_t index = static_cast<std::size_t>(std::tolower(static_cast<unsigned char>(c)) - 'a');
    if (index >= generators.size()) {
      throw Error(ErrorCode::semantic_error, "letter '" + std::string(1, c) + "' is not a generator of " +
                                                 describe());
    }
    Integer exponent = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      std::size_t start = pos;
      if (pos < text.size() && text[pos] == '-') ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      auto v = parse_plain_integer(text.substr(start, pos - start));
      if (!v) throw Error(ErrorCode::syntax_error, "malformed exponent in '" + std::string(text) + "'");
      exponent = *v;
    }
    if (inverse) exponent = -exponent;
    if (exponent < 0 && !is_group()) {
      throw Error(ErrorCode::semantic_error, "inverses are not available in " + describe());
    }
    Element factor = power(generators[index], exponent);
    result = result ? multiply(*result, factor) : factor;
  }
  if (!result) throw Error(ErrorCode::syntax_error, "empty element");
  return *result;
}

Element apply_homomorphism(const Group& domain, std::span<const Element> images, const Group& target,
                           const Element& element) {
  Element result = target.identity();
  for (const auto& [g, e] : domain.as_word(element)) {
    if (g >= images.size()) throw Error(ErrorCode::index_out_of_range, "homomorphism image missing");
    result = target.multiply(result, target.power(images[g], e));
  }
  return result;
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> table,
                         std::vector<std::size_t> generator_indices, bool cyclic_literals)
    : name_(std::move(name)),
      table_(std::move(table)),
      generators_(std::move(generator_indices)),
      cyclic_literals_(cyclic_literals) {
  check_table_shape(table_);
  const std::size_t n = table_.size();
  auto identity = find_table_identity(table_);
  if (!identity) throw Error(ErrorCode::semantic_error, name_ + ": table has no identity");
  identity_ = *identity;
  inverses_.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (table_[x][y] == identity_ && table_[y][x] == identity_) {
        inverses_[x] = y;
        break;
      }
    }
    if (inverses_[x] == n) throw Error(ErrorCode::semantic_error, name_ + ": element without inverse");
  }
  for (auto g : generators_) {
    if (g >= n) throw Error(ErrorCode::semantic_error, name_ + ": generator index out of range");
  }
  // Shortest words by breadth-first search under left multiplication.
  words_.assign(n, {});
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{identity_};
  seen[identity_] = true;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < generators_.size(); ++k) {
      std::size_t y = table_[generators_[k]][x];
      if (seen[y]) continue;
      seen[y] = true;
      GeneratorWord word = words_[x];
      if (!word.empty() && word.front().first == k) {
        word.front().second += 1;
      } else {
        word.insert(word.begin(), {k, Integer(1)});
      }
      words_[y] = std::move(word);
      queue.push_back(y);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorCode::semantic_error, name_ + ": standard generators do not generate the group");
  }
}

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(std::size_t order) {
  if (order == 0) throw Error(ErrorCode::semantic_error, "cyclic group of order 0");
  if (order > kMaxFiniteOrder) throw Error(ErrorCode::resource_limit, "cyclic group too large");
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) table[i][j] = (i + j) % order;
  std::vector<std::size_t> gens{order == 1 ? std::size_t{0} : std::size_t{1}};
  return std::make_shared<FiniteGroup>("C" + std::to_string(order), std::move(table), std::move(gens), true);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::dihedral(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::semantic_error, "dihedral group needs n >= 3");
  std::vector<std::size_t> rotation(n), reflection(n);
  for (std::size_t i = 0; i < n; ++i) {
    rotation[i] = (i + 1) % n;
    reflection[i] = (n - i) % n;
  }
  return from_permutations("D" + std::to_string(n), {rotation, reflection});
}

std::shared_ptr<const FiniteGroup> FiniteGroup::symmetric(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::semantic_error, "symmetric group needs n >= 2");
  std::vector<std::size_t> transposition(n), cycle(n);
  for (std::size_t i = 0; i < n; ++i) {
    transposition[i] = i;
    cycle[i] = (i + 1) % n;
  }
  std::swap(transposition[0], transposition[1]);
  std::vector<std::vector<std::size_t>> gens{transposition};
  if (cycle != transposition) gens.push_back(cycle);
  return from_permutations("S" + std::to_string(n), gens);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_permutations(
    std::string name, const std::vector<std::vector<std::size_t>>& generators) {
  if (generators.empty()) throw Error(ErrorCode::semantic_error, "no permutation generators");
  const std::size_t degree = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != degree) throw Error(ErrorCode::semantic_error, "permutations of different degree");
    std::vector<std::size_t> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < degree; ++i)
      if (sorted[i] != i) throw Error(ErrorCode::semantic_error, "not a permutation");
  }
  auto compose = [&](const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
    std::vector<std::size_t> r(degree);
    for (std::size_t x = 0; x < degree; ++x) r[x] = p[q[x]];
    return r;
  };
  std::vector<std::size_t> id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = i;
  std::vector<std::vector<std::size_t>> perms{id};
  std::map<std::vector<std::size_t>, std::size_t> index{{id, 0}};
  for (std::size_t head = 0; head < perms.size(); ++head) {
    for (const auto& g : generators) {
      auto next = compose(g, perms[head]);
      if (index.count(next)) continue;
      if (perms.size() >= kMaxFiniteOrder) throw Error(ErrorCode::resource_limit, name + " too large");
      index.emplace(next, perms.size());
      perms.push_back(std::move(next));
    }
  }
  const std::size_t n = perms.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = index.at(compose(perms[i], perms[j]));
  std::vector<std::size_t> gens;
  for (const auto& g : generators) gens.push_back(index.at(g));
  return std::make_shared<FiniteGroup>(std::move(name), std::move(table), std::move(gens));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table) {
  check_table_shape(table);
  check_associative(table);
  auto identity = find_table_identity(table);
  if (!identity) throw Error(ErrorCode::semantic_error, "table has no identity");
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (i != *identity) gens.push_back(i);
  if (gens.empty()) gens.push_back(*identity);
  std::string name = "T" + std::to_string(table.size());
  return std::make_shared<FiniteGroup>(std::move(name), std::move(table), std::move(gens));
}

std::vector<Element> FiniteGroup::elements() const {
  std::vector<Element> out;
  out.reserve(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) out.push_back(element_at(i));
  return out;
}

std::vector<Element> FiniteGroup::standard_generators() const {
  std::vector<Element> out;
  for (auto g : generators_) out.push_back(element_at(g));
  return out;
}

Element FiniteGroup::element_at(std::size_t index) const {
  if (index >= table_.size()) throw Error(ErrorCode::index_out_of_range, name_ + ": index out of range");
  return Element{StructureKind::finite_group, {Integer(index)}};
}

std::size_t FiniteGroup::index_of(const Element& element) const {
  validate(element);
  return element.normal_form[0].convert_to<std::size_t>();
}

void FiniteGroup::validate(const Element& element) const {
  if (element.kind != StructureKind::finite_group || element.normal_form.size() != 1 ||
      element.normal_form[0] < 0 || element.normal_form[0] >= Integer(table_.size())) {
    kind_error("element does not belong to " + name_);
  }
}

Element FiniteGroup::multiply(const Element& lhs, const Element& rhs) const {
  return element_at(table_[index_of(lhs)][index_of(rhs)]);
}

Element FiniteGroup::identity() const { return element_at(identity_); }

Element FiniteGroup::inverse(const Element& element) const { return element_at(inverses_[index_of(element)]); }

GeneratorWord FiniteGroup::as_word(const Element& element) const { return words_[index_of(element)]; }

std::size_t FiniteGroup::word_length(const Element& element) const {
  std::size_t len = 0;
  for (const auto& [g, e] : as_word(element)) len += to_size(e);
  return len;
}

std::string FiniteGroup::format(const Element& element) const {
  std::size_t index = index_of(element);
  if (cyclic_literals_) return std::to_string(index);
  return format_generator_word(words_[index]);
}

std::optional<Element> FiniteGroup::parse_literal(std::string_view text) const {
  if (auto idx = parse_table_index(text, table_.size())) return element_at(*idx);
  if (cyclic_literals_) {
    if (auto v = parse_plain_integer(text)) {
      return element_at(floor_mod(*v, Integer(table_.size())).convert_to<std::size_t>());
    }
  }
  return std::nullopt;
}

void FiniteGroup::check_homomorphism(std::span<const Element> images, const Group& target) const {
  if (images.size() != generators_.size()) {
    throw Error(ErrorCode::semantic_error, "homomorphism from " + name_ + " needs " +
                                               std::to_string(generators_.size()) + " images");
  }
  for (const auto& img : images) target.validate(img);
  const std::size_t n = table_.size();
  std::vector<Element> phi;
  phi.reserve(n);
  for (std::size_t x = 0; x < n; ++x) phi.push_back(apply_homomorphism(*this, images, target, element_at(x)));
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    if (!(phi[generators_[k]] == images[k])) {
      throw Error(ErrorCode::semantic_error, "generator images of " + name_ + " are inconsistent");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < generators_.size(); ++k) {
      if (!(phi[table_[generators_[k]][x]] == target.multiply(images[k], phi[x]))) {
        throw Error(ErrorCode::semantic_error, "generator images do not define a homomorphism from " + name_);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// FreeGroup

FreeGroup::FreeGroup(std::size_t rank) : rank_(rank) {
  if (rank == 0 || rank > 26) throw Error(ErrorCode::semantic_error, "free group rank must be in 1..26");
}

std::string FreeGroup::describe() const { return "F" + std::to_string(rank_); }

std::optional<std::size_t> FreeGroup::order() const { return std::nullopt; }

std::vector<Element> FreeGroup::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t k = 1; k <= rank_; ++k) out.push_back(Element{StructureKind::free_group, {Integer(k)}});
  return out;
}

void FreeGroup::validate(const Element& element) const {
  if (element.kind != StructureKind::free_group) kind_error("element does not belong to " + describe());
  const auto& w = element.normal_form;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0 || w[i] > Integer(rank_) || w[i] < -Integer(rank_)) {
      kind_error("letter out of range for " + describe());
    }
    if (i > 0 && w[i] == -w[i - 1]) kind_error("free group word is not reduced");
  }
}

Element FreeGroup::multiply(const Element& lhs, const Element& rhs) const {
  validate(lhs);
  validate(rhs);
  Element out = lhs;
  auto& w = out.normal_form;
  for (const auto& letter : rhs.normal_form) {
    if (!w.empty() && w.back() == -letter) {
      w.pop_back();
    } else {
      w.push_back(letter);
    }
  }
  return out;
}

Element FreeGroup::identity() const { return Element{StructureKind::free_group, {}}; }

Element FreeGroup::inverse(const Element& element) const {
  validate(element);
  Element out{StructureKind::free_group, {}};
  for (auto it = element.normal_form.rbegin(); it != element.normal_form.rend(); ++it) {
    out.normal_form.push_back(-*it);
  }
  return out;
}

GeneratorWord FreeGroup::as_word(const Element& element) const {
  validate(element);
  GeneratorWord out;
  for (const auto& letter : element.normal_form) {
    std::size_t g = to_size(letter < 0 ? Integer(-letter) : letter) - 1;
    Integer e = letter < 0 ? -1 : 1;
    if (!out.empty() && out.back().first == g) {
      out.back().second += e;
    } else {
      out.emplace_back(g, e);
    }
  }
  return out;
}

std::size_t FreeGroup::word_length(const Element& element) const {
  validate(element);
  return element.normal_form.size();
}

std::string FreeGroup::format(const Element& element) const {
  validate(element);
  if (element.normal_form.empty()) return "e";
  std::string out;
  for (const auto& letter : element.normal_form) {
    std::size_t g = to_size(letter < 0 ? Integer(-letter) : letter) - 1;
    out += letter_for(g, letter < 0);
  }
  return out;
}

void FreeGroup::check_homomorphism(std::span<const Element> images, const Group& target) const {
  if (images.size() != rank_) {
    throw Error(ErrorCode::semantic_error, "homomorphism from " + describe() + " needs " +
                                               std::to_string(rank_) + " images");
  }
  for (const auto& img : images) target.validate(img);
}

Element FreeGroup::from_letters(const std::vector<int>& letters) const {
  Element out = identity();
  for (int letter : letters) {
    if (letter == 0 || static_cast<std::size_t>(letter < 0 ? -letter : letter) > rank_) {
      throw Error(ErrorCode::index_out_of_range, "letter out of range for " + describe());
    }
    out = multiply(out, Element{StructureKind::free_group, {Integer(letter)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// FgAbelianGroup

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (const auto& t : torsion_) {
    if (t < 2) throw Error(ErrorCode::semantic_error, "torsion orders must be at least 2");
  }
  if (rank() == 0) throw Error(ErrorCode::semantic_error, "abelian group of rank 0");
}

std::string FgAbelianGroup::describe() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.push_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& t : torsion_) parts.push_back("C" + t.str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " x " : "") + parts[i];
  return out;
}

std::optional<std::size_t> FgAbelianGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer total = 1;
  for (const auto& t : torsion_) total *= t;
  if (total > Integer(std::numeric_limits<std::size_t>::max())) return std::nullopt;
  return total.convert_to<std::size_t>();
}

std::vector<Element> FgAbelianGroup::elements() const {
  auto n = order();
  if (!n) return Semigroup::elements();
  if (*n > kDefaultBallCap) throw Error(ErrorCode::resource_limit, describe() + " too large to list");
  std::vector<Element> out;
  std::vector<Integer> coords(torsion_.size(), 0);
  for (std::size_t count = 0; count < *n; ++count) {
    out.push_back(Element{StructureKind::fg_abelian, coords});
    for (std::size_t k = torsion_.size(); k-- > 0;) {
      if (++coords[k] < torsion_[k]) break;
      coords[k] = 0;
    }
  }
  return out;
}

std::vector<Element> FgAbelianGroup::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t k = 0; k < rank(); ++k) {
    std::vector<Integer> coords(rank(), 0);
    coords[k] = 1;
    out.push_back(from_coordinates(coords));
  }
  return out;
}

Element FgAbelianGroup::from_coordinates(std::vector<Integer> coordinates) const {
  if (coordinates.size() != rank()) kind_error("wrong number of coordinates for " + describe());
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    coordinates[free_rank_ + k] = floor_mod(coordinates[free_rank_ + k], torsion_[k]);
  }
  return Element{StructureKind::fg_abelian, std::move(coordinates)};
}

void FgAbelianGroup::validate(const Element& element) const {
  if (element.kind != StructureKind::fg_abelian || element.normal_form.size() != rank()) {
    kind_error("element does not belong to " + describe());
  }
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    const auto& r = element.normal_form[free_rank_ + k];
    if (r < 0 || r >= torsion_[k]) kind_error("torsion coordinate not reduced in " + describe());
  }
}

Element FgAbelianGroup::multiply(const Element& lhs, const Element& rhs) const {
  validate(lhs);
  validate(rhs);
  std::vector<Integer> coords(rank());
  for (std::size_t k = 0; k < rank(); ++k) coords[k] = lhs.normal_form[k] + rhs.normal_form[k];
  return from_coordinates(std::move(coords));
}

Element FgAbelianGroup::identity() const { return from_coordinates(std::vector<Integer>(rank(), 0)); }

Element FgAbelianGroup::inverse(const Element& element) const {
  validate(element);
  std::vector<Integer> coords(rank());
  for (std::size_t k = 0; k < rank(); ++k) coords[k] = -element.normal_form[k];
  return from_coordinates(std::move(coords));
}

GeneratorWord FgAbelianGroup::as_word(const Element& element) const {
  validate(element);
  GeneratorWord out;
  for (std::size_t k = 0; k < rank(); ++k) {
    if (element.normal_form[k] != 0) out.emplace_back(k, element.normal_form[k]);
  }
  return out;
}

std::size_t FgAbelianGroup::word_length(const Element& element) const {
  validate(element);
  Integer total = 0;
  for (std::size_t k = 0; k < rank(); ++k) {
    const auto& c = element.normal_form[k];
    if (k < free_rank_) {
      total += c < 0 ? Integer(-c) : c;
    } else {
      const auto& t = torsion_[k - free_rank_];
      total += std::min(c, Integer(t - c));
    }
  }
  return to_size(total);
}

std::string FgAbelianGroup::format(const Element& element) const {
  validate(element);
  return format_integer_tuple(element.normal_form);
}

std::optional<Element> FgAbelianGroup::parse_literal(std::string_view text) const {
  if (auto coords = parse_integer_tuple(text, rank())) return from_coordinates(std::move(*coords));
  return std::nullopt;
}

void FgAbelianGroup::check_homomorphism(std::span<const Element> images, const Group& target) const {
  if (images.size() != rank()) {
    throw Error(ErrorCode::semantic_error, "homomorphism from " + describe() + " needs " +
                                               std::to_string(rank()) + " images");
  }
  for (const auto& img : images) target.validate(img);
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (!(target.multiply(images[i], images[j]) == target.multiply(images[j], images[i]))) {
        throw Error(ErrorCode::semantic_error, "images of an abelian group must commute");
      }
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    if (!(target.power(images[free_rank_ + k], torsion_[k]) == target.identity())) {
      throw Error(ErrorCode::semantic_error, "image order does not divide torsion order " + torsion_[k].str());
    }
  }
}

// ---------------------------------------------------------------------------
// DirectProductGroup

DirectProductGroup::DirectProductGroup(std::vector<std::shared_ptr<const Group>> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::semantic_error, "direct product without factors");
  std::size_t offset = 0;
  for (const auto& f : factors_) {
    if (!f) throw Error(ErrorCode::semantic_error, "null factor");
    generator_offsets_.push_back(offset);
    offset += f->standard_generators().size();
  }
  generator_offsets_.push_back(offset);
}

std::string DirectProductGroup::describe() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::string d = factors_[i]->describe();
    if (d.find(' ') != std::string::npos) d = "(" + d + ")";
    out += (i ? " x " : "") + d;
  }
  return out;
}

std::optional<std::size_t> DirectProductGroup::order() const {
  std::size_t total = 1;
  for (const auto& f : factors_) {
    auto n = f->order();
    if (!n) return std::nullopt;
    if (*n != 0 && total > std::numeric_limits<std::size_t>::max() / *n) return std::nullopt;
    total *= *n;
  }
  return total;
}

std::vector<Element> DirectProductGroup::elements() const {
  auto n = order();
  if (!n) return Semigroup::elements();
  if (*n > kDefaultBallCap) throw Error(ErrorCode::resource_limit, describe() + " too large to list");
  std::vector<std::vector<Element>> lists;
  for (const auto& f : factors_) lists.push_back(f->elements());
  std::vector<Element> out;
  std::vector<std::size_t> idx(factors_.size(), 0);
  for (std::size_t count = 0; count < *n; ++count) {
    std::vector<Element> comps;
    for (std::size_t k = 0; k < factors_.size(); ++k) comps.push_back(lists[k][idx[k]]);
    out.push_back(join(comps));
    for (std::size_t k = factors_.size(); k-- > 0;) {
      if (++idx[k] < lists[k].size()) break;
      idx[k] = 0;
    }
  }
  return out;
}

std::vector<Element> DirectProductGroup::split(const Element& element) const {
  if (element.kind != StructureKind::direct_product) kind_error("element does not belong to " + describe());
  std::vector<Element> out;
  const auto& nf = element.normal_form;
  std::size_t pos = 0;
  for (const auto& f : factors_) {
    if (pos >= nf.size()) kind_error("truncated direct product element");
    std::size_t len = to_size(nf[pos++]);
    if (pos + len > nf.size()) kind_error("truncated direct product element");
    Element comp{f->kind(), std::vector<Integer>(nf.begin() + static_cast<std::ptrdiff_t>(pos),
                                                 nf.begin() + static_cast<std::ptrdiff_t>(pos + len))};
    f->validate(comp);
    out.push_back(std::move(comp));
    pos += len;
  }
  if (pos != nf.size()) kind_error("trailing data in direct product element");
  return out;
}

Element DirectProductGroup::join(const std::vector<Element>& components) const {
  if (components.size() != factors_.size()) kind_error("wrong number of components for " + describe());
  Element out{StructureKind::direct_product, {}};
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    factors_[k]->validate(components[k]);
    out.normal_form.push_back(Integer(components[k].normal_form.size()));
    out.normal_form.insert(out.normal_form.end(), components[k].normal_form.begin(),
                           components[k].normal_form.end());
  }
  return out;
}

std::vector<Element> DirectProductGroup::standard_generators() const {
  std::vector<Element> out;
  std::vector<Element> ids;
  for (const auto& f : factors_) ids.push_back(f->identity());
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    for (const auto& g : factors_[k]->standard_generators()) {
      auto comps = ids;
      comps[k] = g;
      out.push_back(join(comps));
    }
  }
  return out;
}

void DirectProductGroup::validate(const Element& element) const { split(element); }

Element DirectProductGroup::multiply(const Element& lhs, const Element& rhs) const {
  auto a = split(lhs);
  auto b = split(rhs);
  for (std::size_t k = 0; k < factors_.size(); ++k) a[k] = factors_[k]->multiply(a[k], b[k]);
  return join(a);
}

Element DirectProductGroup::identity() const {
  std::vector<Element> ids;
  for (const auto& f : factors_) ids.push_back(f->identity());
  return join(ids);
}

Element DirectProductGroup::inverse(const Element& element) const {
  auto a = split(element);
  for (std::size_t k = 0; k < factors_.size(); ++k) a[k] = factors_[k]->inverse(a[k]);
  return join(a);
}

GeneratorWord DirectProductGroup::as_word(const Element& element) const {
  auto a = split(element);
  GeneratorWord out;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    auto w = shift_word(factors_[k]->as_word(a[k]), generator_offsets_[k]);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::size_t DirectProductGroup::word_length(const Element& element) const {
  auto a = split(element);
  std::size_t total = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) total += factors_[k]->word_length(a[k]);
  return total;
}

std::string DirectProductGroup::format(const Element& element) const {
  auto a = split(element);
  std::string out = "(";
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    out += (k ? "," : "") + factors_[k]->format(a[k]);
  }
  return out + ")";
}

std::optional<Element> DirectProductGroup::parse_literal(std::string_view text) const {
  auto parts = split_tuple(text);
  if (!parts || parts->size() != factors_.size()) return std::nullopt;
  std::vector<Element> comps;
  for (std::size_t k = 0; k < factors_.size(); ++k) comps.push_back(factors_[k]->parse_element((*parts)[k]));
  return join(comps);
}

void DirectProductGroup::check_homomorphism(std::span<const Element> images, const Group& target) const {
  if (images.size() != generator_offsets_.back()) {
    throw Error(ErrorCode::semantic_error, "homomorphism from " + describe() + " needs " +
                                               std::to_string(generator_offsets_.back()) + " images");
  }
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    factors_[k]->check_homomorphism(
        images.subspan(generator_offsets_[k], generator_offsets_[k + 1] - generator_offsets_[k]), target);
  }
  for (std::size_t k = 0; k < factors_.size(); ++k)
    for (std::size_t l = k + 1; l < factors_.size(); ++l)
      for (std::size_t i = generator_offsets_[k]; i < generator_offsets_[k + 1]; ++i)
        for (std::size_t j = generator_offsets_[l]; j < generator_offsets_[l + 1]; ++j)
          if (!(target.multiply(images[i], images[j]) == target.multiply(images[j], images[i]))) {
            throw Error(ErrorCode::semantic_error, "images of different direct factors must commute");
          }
}

// ---------------------------------------------------------------------------
// FreeProductGroup

FreeProductGroup::FreeProductGroup(std::vector<std::shared_ptr<const Group>> factors)
    : factors_(std::move(factors)) {
  if (factors_.size() < 2) throw Error(ErrorCode::semantic_error, "free product needs at least two factors");
  std::size_t offset = 0;
  for (const auto& f : factors_) {
    if (!f) throw Error(ErrorCode::semantic_error, "null factor");
    auto n = f->order();
    if (!n) throw Error(ErrorCode::semantic_error, "free product factors must be finite");
    if (*n < 2) throw Error(ErrorCode::semantic_error, "free product factors must be nontrivial");
    generator_offsets_.push_back(offset);
    offset += f->standard_generators().size();
  }
  generator_offsets_.push_back(offset);
}

std::string FreeProductGroup::describe() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::string d = factors_[i]->describe();
    if (d.find(' ') != std::string::npos) d = "(" + d + ")";
    out += (i ? " * " : "") + d;
  }
  return out;
}

std::optional<std::size_t> FreeProductGroup::order() const { return std::nullopt; }

std::vector<std::pair<std::size_t, Element>> FreeProductGroup::syllables(const Element& element) const {
  if (element.kind != StructureKind::free_product) kind_error("element does not belong to " + describe());
  std::vector<std::pair<std::size_t, Element>> out;
  const auto& nf = element.normal_form;
  std::size_t pos = 0;
  while (pos < nf.size()) {
    if (pos + 2 > nf.size()) kind_error("truncated free product element");
    std::size_t f = to_size(nf[pos]);
    std::size_t len = to_size(nf[pos + 1]);
    pos += 2;
    if (f >= factors_.size() || pos + len > nf.size()) kind_error("malformed free product element");
    Element x{factors_[f]->kind(), std::vector<Integer>(nf.begin() + static_cast<std::ptrdiff_t>(pos),
                                                        nf.begin() + static_cast<std::ptrdiff_t>(pos + len))};
    factors_[f]->validate(x);
    if (x == factors_[f]->identity()) kind_error("free product syllable is the identity");
    if (!out.empty() && out.back().first == f) kind_error("free product syllables do not alternate");
    out.emplace_back(f, std::move(x));
    pos += len;
  }
  return out;
}

Element FreeProductGroup::from_syllables(const std::vector<std::pair<std::size_t, Element>>& syllables) const {
  Element out{StructureKind::free_product, {}};
  for (const auto& [f, x] : syllables) {
    out.normal_form.push_back(Integer(f));
    out.normal_form.push_back(Integer(x.normal_form.size()));
    out.normal_form.insert(out.normal_form.end(), x.normal_form.begin(), x.normal_form.end());
  }
  return out;
}

std::vector<Element> FreeProductGroup::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    for (const auto& g : factors_[k]->standard_generators()) {
      if (g == factors_[k]->identity()) {
        out.push_back(identity());
      } else {
        out.push_back(from_syllables({{k, g}}));
      }
    }
  }
  return out;
}

void FreeProductGroup::validate(const Element& element) const { syllables(element); }

Element FreeProductGroup::multiply(const Element& lhs, const Element& rhs) const {
  auto word = syllables(lhs);
  for (auto& [f, x] : syllables(rhs)) {
    if (!word.empty() && word.back().first == f) {
      Element merged = factors_[f]->multiply(word.back().second, x);
      if (merged == factors_[f]->identity()) {
        word.pop_back();
      } else {
        word.back().second = std::move(merged);
      }
    } else {
      word.emplace_back(f, std::move(x));
    }
  }
  return from_syllables(word);
}

Element FreeProductGroup::identity() const { return Element{StructureKind::free_product, {}}; }

Element FreeProductGroup::inverse(const Element& element) const {
  auto word = syllables(element);
  std::reverse(word.begin(), word.end());
  for (auto& [f, x] : word) x = factors_[f]->inverse(x);
  return from_syllables(word);
}

GeneratorWord FreeProductGroup::as_word(const Element& element) const {
  GeneratorWord out;
  for (const auto& [f, x] : syllables(element)) {
    auto w = shift_word(factors_[f]->as_word(x), generator_offsets_[f]);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::size_t FreeProductGroup::word_length(const Element& element) const {
  std::size_t total = 0;
  for (const auto& [f, x] : syllables(element)) total += factors_[f]->word_length(x);
  return total;
}

std::string FreeProductGroup::format(const Element& element) const {
  return format_generator_word(as_word(element));
}

void FreeProductGroup::check_homomorphism(std::span<const Element> images, const Group& target) const {
  if (images.size() != generator_offsets_.back()) {
    throw Error(ErrorCode::semantic_error, "homomorphism from " + describe() + " needs " +
                                               std::to_string(generator_offsets_.back()) + " images");
  }
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    factors_[k]->check_homomorphism(
        images.subspan(generator_offsets_[k], generator_offsets_[k + 1] - generator_offsets_[k]), target);
  }
}

// ---------------------------------------------------------------------------
// FiniteSemigroup

FiniteSemigroup::FiniteSemigroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
  check_table_shape(table_);
  check_associative(table_);
  identity_ = find_table_identity(table_);
}

std::string FiniteSemigroup::describe() const { return "semigroup(" + std::to_string(table_.size()) + ")"; }

std::vector<Element> FiniteSemigroup::elements() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < table_.size(); ++i) out.push_back(Element{StructureKind::finite_semigroup, {Integer(i)}});
  return out;
}

std::vector<Element> FiniteSemigroup::standard_generators() const { return elements(); }

std::optional<Element> FiniteSemigroup::identity_element() const {
  if (!identity_) return std::nullopt;
  return Element{StructureKind::finite_semigroup, {Integer(*identity_)}};
}

void FiniteSemigroup::validate(const Element& element) const {
  if (element.kind != StructureKind::finite_semigroup || element.normal_form.size() != 1 ||
      element.normal_form[0] < 0 || element.normal_form[0] >= Integer(table_.size())) {
    kind_error("element does not belong to " + describe());
  }
}

Element FiniteSemigroup::multiply(const Element& lhs, const Element& rhs) const {
  validate(lhs);
  validate(rhs);
  std::size_t a = lhs.normal_form[0].convert_to<std::size_t>();
  std::size_t b = rhs.normal_form[0].convert_to<std::size_t>();
  return Element{StructureKind::finite_semigroup, {Integer(table_[a][b])}};
}

std::string FiniteSemigroup::format(const Element& element) const {
  validate(element);
  return "#" + element.normal_form[0].str();
}

std::size_t FiniteSemigroup::word_length(const Element& element) const {
  validate(element);
  return identity_ && element.normal_form[0] == Integer(*identity_) ? 0 : 1;
}

bool FiniteSemigroup::left_divides(const Element& divisor, const Element& element) const {
  validate(divisor);
  validate(element);
  std::size_t s = divisor.normal_form[0].convert_to<std::size_t>();
  std::size_t x = element.normal_form[0].convert_to<std::size_t>();
  return std::find(table_[s].begin(), table_[s].end(), x) != table_[s].end();
}

std::optional<Element> FiniteSemigroup::parse_literal(std::string_view text) const {
  if (auto idx = parse_table_index(text, table_.size())) {
    return Element{StructureKind::finite_semigroup, {Integer(*idx)}};
  }
  if (auto v = parse_plain_integer(text); v && *v >= 0 && *v < Integer(table_.size())) {
    return Element{StructureKind::finite_semigroup, {*v}};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// FreeSemigroup

FreeSemigroup::FreeSemigroup(std::size_t rank, bool with_identity) : rank_(rank), with_identity_(with_identity) {
  if (rank == 0 || rank > 26) throw Error(ErrorCode::semantic_error, "free semigroup rank must be in 1..26");
}

StructureKind FreeSemigroup::kind() const {
  return with_identity_ ? StructureKind::free_monoid : StructureKind::free_semigroup;
}

std::string FreeSemigroup::describe() const {
  return (with_identity_ ? "FM" : "FS") + std::to_string(rank_);
}

std::optional<std::size_t> FreeSemigroup::order() const { return std::nullopt; }

std::vector<Element> FreeSemigroup::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t k = 1; k <= rank_; ++k) out.push_back(Element{kind(), {Integer(k)}});
  return out;
}

std::optional<Element> FreeSemigroup::identity_element() const {
  if (!with_identity_) return std::nullopt;
  return Element{kind(), {}};
}

void FreeSemigroup::validate(const Element& element) const {
  if (element.kind != kind()) kind_error("element does not belong to " + describe());
  if (element.normal_form.empty() && !with_identity_) kind_error("empty word is not in " + describe());
  for (const auto& letter : element.normal_form) {
    if (letter < 1 || letter > Integer(rank_)) kind_error("letter out of range for " + describe());
  }
}

Element FreeSemigroup::multiply(const Element& lhs, const Element& rhs) const {
  validate(lhs);
  validate(rhs);
  Element out = lhs;
  out.normal_form.insert(out.normal_form.end(), rhs.normal_form.begin(), rhs.normal_form.end());
  return out;
}

std::string FreeSemigroup::format(const Element& element) const {
  validate(element);
  if (element.normal_form.empty()) return "e";
  std::string out;
  for (const auto& letter : element.normal_form) out += letter_for(to_size(letter) - 1, false);
  return out;
}

std::size_t FreeSemigroup::word_length(const Element& element) const {
  validate(element);
  return element.normal_form.size();
}

bool FreeSemigroup::left_divides(const Element& divisor, const Element& element) const {
  validate(divisor);
  validate(element);
  const auto& d = divisor.normal_form;
  const auto& w = element.normal_form;
  std::size_t min_len = d.size() + (with_identity_ ? 0 : 1);
  return w.size() >= min_len && std::equal(d.begin(), d.end(), w.begin());
}

// ---------------------------------------------------------------------------
// NaturalNumbers

NaturalNumbers::NaturalNumbers(std::size_t rank) : rank_(rank) {
  if (rank == 0) throw Error(ErrorCode::semantic_error, "N^k needs k >= 1");
}

std::string NaturalNumbers::describe() const { return rank_ == 1 ? "N" : "N^" + std::to_string(rank_); }

std::optional<std::size_t> NaturalNumbers::order() const { return std::nullopt; }

Element NaturalNumbers::from_coordinates(std::vector<Integer> coordinates) const {
  Element out{StructureKind::natural_numbers, std::move(coordinates)};
  validate(out);
  return out;
}

std::vector<Element> NaturalNumbers::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t k = 0; k < rank_; ++k) {
    std::vector<Integer> coords(rank_, 0);
    coords[k] = 1;
    out.push_back(from_coordinates(coords));
  }
  return out;
}

std::optional<Element> NaturalNumbers::identity_element() const {
  return from_coordinates(std::vector<Integer>(rank_, 0));
}

void NaturalNumbers::validate(const Element& element) const {
  if (element.kind != StructureKind::natural_numbers || element.normal_form.size() != rank_) {
    kind_error("element does not belong to " + describe());
  }
  for (const auto& c : element.normal_form) {
    if (c < 0) kind_error("negative coordinate in " + describe());
  }
}

Element NaturalNumbers::multiply(const Element& lhs, const Element& rhs) const {
  validate(lhs);
  validate(rhs);
  std::vector<Integer> coords(rank_);
  for (std::size_t k = 0; k < rank_; ++k) coords[k] = lhs.normal_form[k] + rhs.normal_form[k];
  return from_coordinates(std::move(coords));
}

std::string NaturalNumbers::format(const Element& element) const {
  validate(element);
  return format_integer_tuple(element.normal_form);
}

std::size_t NaturalNumbers::word_length(const Element& element) const {
  validate(element);
  Integer total = 0;
  for (const auto& c : element.normal_form) total += c;
  return to_size(total);
}

bool NaturalNumbers::left_divides(const Element& divisor, const Element& element) const {
  validate(divisor);
  validate(element);
  for (std::size_t k = 0; k < rank_; ++k)
    if (element.normal_form[k] < divisor.normal_form[k]) return false;
  return true;
}

std::optional<Element> NaturalNumbers::parse_literal(std::string_view text) const {
  auto coords = parse_integer_tuple(text, rank_);
  if (!coords) return std::nullopt;
  for (const auto& c : *coords) {
    if (c < 0) throw Error(ErrorCode::semantic_error, "negative coordinate in " + describe());
  }
  return from_coordinates(std::move(*coords));
}

// ---------------------------------------------------------------------------
// Handle, words, balls

const Group* Handle::group() const { return dynamic_cast<const Group*>(structure.get()); }

const Group& Handle::require_group() const {
  const Group* g = group();
  if (!g) throw Error(ErrorCode::kind_mismatch, structure->describe() + " is not a group");
  return *g;
}

Handle make_handle(std::shared_ptr<const Semigroup> structure, std::vector<Element> generators) {
  if (!structure) throw Error(ErrorCode::semantic_error, "missing structure");
  if (generators.empty()) throw Error(ErrorCode::semantic_error, "generators must be nonempty");
  for (const auto& g : generators) structure->validate(g);
  return Handle{std::move(structure), std::move(generators)};
}

void RepresentativePair::validate() const {
  if (indices.size() != signs.size()) {
    throw Error(ErrorCode::shape_mismatch, "J and sigma must have the same length");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw Error(ErrorCode::semantic_error, "sigma entries must be +1 or -1");
  }
  if (reduced) {
    for (std::size_t i = 0; i + 1 < indices.size(); ++i) {
      if (indices[i] == indices[i + 1] && signs[i] != signs[i + 1]) {
        throw Error(ErrorCode::semantic_error, "representative pair is not reduced");
      }
    }
  }
}

Element word_evaluate(const RepresentativePair& pair, const Handle& handle) {
  pair.validate();
  const Semigroup& s = *handle.structure;
  std::optional<Element> result = s.identity_element();
  for (std::size_t i = 0; i < pair.indices.size(); ++i) {
    std::size_t j = pair.indices[i];
    if (j < 1 || j > handle.generators.size()) {
      throw Error(ErrorCode::index_out_of_range, "generator index " + std::to_string(j) + " out of range");
    }
    Element factor = handle.generators[j - 1];
    if (pair.signs[i] < 0) factor = handle.require_group().inverse(factor);
    result = result ? s.multiply(*result, factor) : factor;
  }
  if (!result) throw Error(ErrorCode::precondition_failed, "empty product in a semigroup without identity");
  return *result;
}

std::span<const Element> Ball::within(std::size_t r) const {
  std::size_t layer = std::min(r, radius);
  return {elements.data(), layer_starts[layer + 1]};
}

std::optional<std::size_t> Ball::distance(const Element& element) const {
  auto it = distances_.find(element);
  if (it == distances_.end()) return std::nullopt;
  return it->second;
}

Ball ball(const Handle& handle, std::size_t radius, std::size_t cap) {
  const Semigroup& s = *handle.structure;
  std::vector<Element> steps = handle.generators;
  if (const Group* g = handle.group()) {
    for (const auto& x : handle.generators) steps.push_back(g->inverse(x));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

  Ball out;
  out.radius = radius;
  out.layer_starts.push_back(0);
  std::vector<Element> current;
  if (auto id = s.identity_element()) current.push_back(*id);
  auto append_layer = [&](std::vector<Element> layer, std::size_t r) {
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    std::vector<Element> fresh;
    for (auto& x : layer) {
      if (out.distances_.count(x)) continue;
      out.distances_.emplace(x, r);
      fresh.push_back(std::move(x));
    }
    if (out.elements.size() + fresh.size() > cap) {
      throw Error(ErrorCode::resource_limit, "ball of radius " + std::to_string(radius) + " exceeds cap " +
                                                 std::to_string(cap));
    }
    out.elements.insert(out.elements.end(), fresh.begin(), fresh.end());
    out.layer_starts.push_back(out.elements.size());
    return fresh;
  };
  current = append_layer(std::move(current), 0);
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<Element> next;
    if (r == 1 && !s.identity_element()) {
      next = handle.generators;
    } else {
      for (const auto& x : current)
        for (const auto& step : steps) next.push_back(s.multiply(step, x));
    }
    current = append_layer(std::move(next), r);
  }
  return out;
}

}  // namespace configset
