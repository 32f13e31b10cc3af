#include "configset/spec.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "configset/error.hpp"

namespace configset {

const char* analysis_name(Analysis analysis) {
  switch (analysis) {
    case Analysis::enumerate: return "enumerate";
    case Analysis::equations: return "equations";
    case Analysis::solve: return "solve";
    case Analysis::paradox: return "paradox";
    case Analysis::tarski: return "tarski";
    case Analysis::normal: return "normal";
    case Analysis::compare: return "compare";
  }
  return "unknown";
}

std::optional<Analysis> parse_analysis(const std::string& text) {
  for (auto a : {Analysis::enumerate, Analysis::equations, Analysis::solve, Analysis::paradox, Analysis::tarski,
                 Analysis::normal, Analysis::compare}) {
    if (text == analysis_name(a)) return a;
  }
  if (text == "con") return Analysis::enumerate;
  if (text == "eqs") return Analysis::equations;
  return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& parts, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t k = from; k < to; ++k) out += (k > from ? " " : "") + parts[k];
  return out;
}

// Commas outside parentheses separate items.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!trim(current).empty() || !out.empty()) out.push_back(trim(current));
  return out;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw Error(ErrorCode::syntax_error, what + " must be a nonnegative integer, got '" + text + "'");
  }
  if (text.size() > 9) throw Error(ErrorCode::resource_limit, what + " is too large");
  return static_cast<std::size_t>(std::stoul(text));
}

Integer parse_big(const std::string& text, const std::string& what) {
  try {
    auto r = parse_rational(text);
    if (denominator(r) != 1) throw Error(ErrorCode::syntax_error, "");
    return numerator(r);
  } catch (const Error&) {
    throw Error(ErrorCode::syntax_error, what + " must be an integer, got '" + text + "'");
  }
}

std::vector<std::vector<std::size_t>> parse_table(const std::vector<std::string>& w, std::size_t from) {
  std::vector<std::vector<std::size_t>> rows(1);
  for (std::size_t k = from; k < w.size(); ++k) {
    if (w[k] == "/") {
      rows.emplace_back();
      continue;
    }
    rows.back().push_back(parse_count(w[k], "table entry"));
  }
  if (rows.back().empty()) throw Error(ErrorCode::syntax_error, "empty table row");
  return rows;
}

std::shared_ptr<const Group> parse_group_atom(const std::vector<std::string>& w) {
  if (w.empty()) throw Error(ErrorCode::syntax_error, "missing group");
  const std::string& head = w[0];
  auto arg = [&](const std::string& what) {
    if (w.size() != 2) throw Error(ErrorCode::syntax_error, "'" + head + "' takes one " + what);
    return parse_count(w[1], what);
  };
  if (head == "z" && w.size() == 1) return std::make_shared<FgAbelianGroup>(1, std::vector<Integer>{});
  if (head.rfind("z^", 0) == 0 && w.size() == 1) {
    return std::make_shared<FgAbelianGroup>(parse_count(head.substr(2), "rank"), std::vector<Integer>{});
  }
  if (head == "abelian") {
    if (w.size() < 2) throw Error(ErrorCode::syntax_error, "'abelian' needs a free rank");
    std::vector<Integer> torsion;
    for (std::size_t k = 2; k < w.size(); ++k) torsion.push_back(parse_big(w[k], "torsion coefficient"));
    return std::make_shared<FgAbelianGroup>(parse_count(w[1], "free rank"), std::move(torsion));
  }
  if (head == "cyclic") return FiniteGroup::cyclic(arg("order"));
  if (head == "dihedral") return FiniteGroup::dihedral(arg("degree"));
  if (head == "symmetric") return FiniteGroup::symmetric(arg("degree"));
  if (head == "free") return std::make_shared<FreeGroup>(arg("rank"));
  if (head == "table") return FiniteGroup::from_table(parse_table(w, 1));
  throw Error(ErrorCode::syntax_error, "unknown group '" + join(w, 0, w.size()) + "'");
}

std::shared_ptr<const Group> parse_group_words(const std::vector<std::string>& w) {
  const bool times = std::find(w.begin(), w.end(), "x") != w.end();
  const bool star = std::find(w.begin(), w.end(), "*") != w.end();
  if (times && star) throw Error(ErrorCode::syntax_error, "mixing 'x' and '*' needs separate statements");
  std::size_t first = 0;
  if (!w.empty() && (w[0] == "product" || w[0] == "freeproduct")) {
    first = 1;
    if (!times && !star) throw Error(ErrorCode::syntax_error, "'" + w[0] + "' needs factors separated by 'x' or '*'");
  }
  if (!times && !star) return parse_group_atom(w);
  const std::string sep = times ? "x" : "*";
  std::vector<std::shared_ptr<const Group>> factors;
  std::vector<std::string> current;
  for (std::size_t k = first; k <= w.size(); ++k) {
    if (k == w.size() || w[k] == sep) {
      factors.push_back(parse_group_atom(current));
      current.clear();
    } else {
      current.push_back(w[k]);
    }
  }
  if (times) return std::make_shared<DirectProductGroup>(std::move(factors));
  return std::make_shared<FreeProductGroup>(std::move(factors));
}

std::shared_ptr<const Semigroup> parse_semigroup_words(const std::vector<std::string>& w) {
  if (w.empty()) throw Error(ErrorCode::syntax_error, "missing semigroup");
  if (w[0] == "free" && w.size() == 2) return std::make_shared<FreeSemigroup>(parse_count(w[1], "rank"), false);
  if (w[0] == "freemonoid" && w.size() == 2) return std::make_shared<FreeSemigroup>(parse_count(w[1], "rank"), true);
  if (w[0] == "nat") {
    return std::make_shared<NaturalNumbers>(w.size() == 1 ? 1 : parse_count(w[1], "rank"));
  }
  if (w[0] == "table") return std::make_shared<FiniteSemigroup>(parse_table(w, 1));
  throw Error(ErrorCode::syntax_error, "unknown semigroup '" + join(w, 0, w.size()) + "'");
}

std::vector<Element> parse_elements(const Semigroup& s, const std::string& text) {
  std::vector<Element> out;
  for (const auto& item : split_top_level(text)) {
    if (item.empty()) throw Error(ErrorCode::syntax_error, "empty item in element list");
    out.push_back(s.parse_element(item));
  }
  return out;
}

std::optional<std::vector<std::size_t>> parse_block_list(const std::vector<std::string>& w, std::size_t from) {
  if (from >= w.size()) return std::nullopt;
  std::vector<std::size_t> out;
  for (std::size_t k = from; k < w.size(); ++k) {
    for (const auto& piece : split_top_level(w[k])) {
      if (!piece.empty()) out.push_back(parse_count(piece, "block"));
    }
  }
  return out;
}

Partition parse_partition(const std::shared_ptr<const Semigroup>& structure, const std::string& text) {
  const auto w = words(text);
  if (w.empty()) throw Error(ErrorCode::syntax_error, "missing partition kind");
  const std::string& kind = w[0];
  if (kind == "trivial") {
    if (w.size() != 1) throw Error(ErrorCode::syntax_error, "'trivial' takes no arguments");
    return Partition::trivial(structure);
  }
  if (kind == "mod") {
    auto blocks_at = std::find(w.begin(), w.end(), "blocks");
    std::vector<Integer> moduli;
    for (auto it = w.begin() + 1; it != blocks_at; ++it) {
      for (const auto& piece : split_top_level(*it))
        if (!piece.empty()) moduli.push_back(parse_big(piece, "modulus"));
    }
    if (moduli.empty()) throw Error(ErrorCode::syntax_error, "'mod' needs at least one modulus");
    std::optional<std::vector<std::size_t>> blocks;
    if (blocks_at != w.end()) {
      blocks = parse_block_list(w, static_cast<std::size_t>(blocks_at - w.begin()) + 1);
      if (!blocks) throw Error(ErrorCode::syntax_error, "'blocks' needs a list");
    }
    const auto k = structure->kind();
    if (k != StructureKind::fg_abelian && k != StructureKind::natural_numbers) {
      throw Error(ErrorCode::semantic_error, "congruence partitions need a finitely generated abelian group or N^k, not " +
                                                 structure->describe());
    }
    return Partition::congruence(structure, std::move(moduli), std::move(blocks));
  }
  if (kind == "prefix") {
    std::size_t depth = 1;
    std::optional<int> identity;
    for (std::size_t k = 1; k < w.size(); k += 2) {
      if (k + 1 >= w.size()) throw Error(ErrorCode::syntax_error, "'" + w[k] + "' needs a value");
      if (w[k] == "depth") {
        depth = parse_count(w[k + 1], "depth");
      } else if (w[k] == "identity") {
        const std::string& letter = w[k + 1];
        if (letter.size() != 1 || !std::isalpha(static_cast<unsigned char>(letter[0]))) {
          throw Error(ErrorCode::syntax_error, "identity block needs a single letter");
        }
        const int code = std::tolower(static_cast<unsigned char>(letter[0])) - 'a' + 1;
        identity = std::isupper(static_cast<unsigned char>(letter[0])) ? -code : code;
      } else {
        throw Error(ErrorCode::syntax_error, "unknown prefix option '" + w[k] + "'");
      }
    }
    return Partition::prefix(structure, depth, identity);
  }
  if (kind == "explicit") {
    auto colors = parse_block_list(w, 1);
    if (!colors) throw Error(ErrorCode::syntax_error, "'explicit' needs one block per element");
    std::size_t m = 0;
    for (auto c : *colors) m = std::max(m, c);
    return Partition::explicit_blocks(structure, m, *colors);
  }
  if (kind == "quotient") {
    auto images_at = std::find(w.begin(), w.end(), "images");
    auto blocks_at = std::find(w.begin(), w.end(), "blocks");
    if (images_at == w.end() || blocks_at == w.end() || blocks_at < images_at) {
      throw Error(ErrorCode::syntax_error, "quotient syntax: quotient <finite group> images <e1, ...> blocks <b1 ...>");
    }
    auto domain = std::dynamic_pointer_cast<const Group>(structure);
    if (!domain) throw Error(ErrorCode::semantic_error, "quotient partitions need a group");
    auto target = parse_group_words({w.begin() + 1, images_at});
    if (!target->order()) throw Error(ErrorCode::semantic_error, "quotient target must be finite");
    const std::string image_text = join(w, static_cast<std::size_t>(images_at - w.begin()) + 1,
                                        static_cast<std::size_t>(blocks_at - w.begin()));
    auto images = parse_elements(*target, image_text);
    auto blocks = parse_block_list(w, static_cast<std::size_t>(blocks_at - w.begin()) + 1);
    const auto elements = target->elements();
    if (!blocks || blocks->size() != elements.size()) {
      throw Error(ErrorCode::semantic_error, "quotient needs one block per target element (" +
                                                 std::to_string(elements.size()) + ")");
    }
    std::map<Element, std::size_t> target_blocks;
    std::size_t m = 0;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      target_blocks.emplace(elements[k], (*blocks)[k]);
      m = std::max(m, (*blocks)[k]);
    }
    auto hom = std::make_shared<Homomorphism>(domain, target, std::move(images));
    return Partition::quotient(hom, m, std::move(target_blocks));
  }
  throw Error(ErrorCode::syntax_error, "unknown partition kind '" + kind + "'");
}

struct Statement {
  std::size_t line = 0;
  std::string keyword;
  std::string rest;
};

class ErrorList {
 public:
  void add(std::size_t line, const Error& e) {
    if (e.code() == ErrorCode::syntax_error) syntax_ = true;
    messages_.push_back("line " + std::to_string(line) + ": " + e.what());
  }
  void add(std::size_t line, ErrorCode code, const std::string& message) { add(line, Error(code, message)); }
  bool empty() const { return messages_.empty(); }
  [[noreturn]] void raise() const {
    std::string text;
    for (const auto& m : messages_) text += (text.empty() ? "" : "\n") + m;
    throw Error(syntax_ ? ErrorCode::syntax_error : ErrorCode::semantic_error, text);
  }

 private:
  bool syntax_ = false;
  std::vector<std::string> messages_;
};

}  // namespace

std::shared_ptr<const Semigroup> parse_structure(const std::string& text) {
  auto w = words(text);
  if (!w.empty() && w[0] == "semigroup") return parse_semigroup_words({w.begin() + 1, w.end()});
  if (!w.empty() && w[0] == "group") w.erase(w.begin());
  return parse_group_words(w);
}

ExperimentSpec parse_spec(const std::string& text) {
  std::vector<Statement> statements;
  {
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::size_t start = 0;
      while (start <= line.size()) {
        auto end = line.find(';', start);
        if (end == std::string::npos) end = line.size();
        std::string stmt = trim(line.substr(start, end - start));
        if (!stmt.empty()) {
          auto space = stmt.find_first_of(" \t");
          Statement s{number, stmt.substr(0, space), space == std::string::npos ? "" : trim(stmt.substr(space))};
          std::transform(s.keyword.begin(), s.keyword.end(), s.keyword.begin(),
                         [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
          statements.push_back(std::move(s));
        }
        start = end + 1;
      }
    }
  }

  ErrorList errors;
  std::map<std::string, const Statement*> by_keyword;
  static const std::set<std::string> known{"group",   "semigroup", "generators",    "partition",         "translate",
                                           "mode",    "radius",    "verify-radius", "analyze",           "compare-group",
                                           "compare-generators",   "compare-partition", "compare-translate"};
  for (const auto& s : statements) {
    if (!known.count(s.keyword)) {
      errors.add(s.line, ErrorCode::syntax_error, "unknown statement '" + s.keyword + "'");
      continue;
    }
    std::string key = s.keyword == "semigroup" ? "group" : s.keyword;
    if (by_keyword.count(key)) {
      errors.add(s.line, ErrorCode::syntax_error, "duplicate '" + s.keyword + "' statement");
      continue;
    }
    by_keyword[key] = &s;
  }
  auto find = [&](const std::string& key) -> const Statement* {
    auto it = by_keyword.find(key);
    return it == by_keyword.end() ? nullptr : it->second;
  };
  auto guarded = [&](const Statement* s, auto&& body) {
    if (!s) return;
    try {
      body();
    } catch (const Error& e) {
      errors.add(s->line, e);
    }
  };

  ExperimentSpec spec;
  std::shared_ptr<const Semigroup> structure;
  const Statement* group = find("group");
  if (!group) errors.add(statements.empty() ? 1 : statements.back().line, ErrorCode::semantic_error, "missing group statement");
  guarded(group, [&] {
    structure = group->keyword == "semigroup" ? parse_semigroup_words(words(group->rest))
                                               : parse_group_words(words(group->rest));
    spec.pair.group_text = group->keyword + " " + group->rest;
  });

  std::vector<Element> generators;
  const Statement* gens = find("generators");
  if (!gens && structure) errors.add(group->line, ErrorCode::semantic_error, "missing generators statement");
  if (structure) {
    guarded(gens, [&] {
      if (gens->rest.empty()) throw Error(ErrorCode::semantic_error, "generators must be nonempty");
      generators = parse_elements(*structure, gens->rest);
      spec.pair.handle = make_handle(structure, generators);
    });
  }

  const Statement* mode = find("mode");
  spec.mode = structure && !structure->is_group() ? Mode::semigroup_left : Mode::one_sided;
  guarded(mode, [&] {
    auto m = parse_mode(mode->rest);
    if (!m) throw Error(ErrorCode::syntax_error, "unknown mode '" + mode->rest + "'");
    if (structure && !structure->is_group() && *m != Mode::semigroup_left) {
      throw Error(ErrorCode::semantic_error, "semigroups only support semigroup_left mode");
    }
    spec.mode = *m;
  });

  auto build_partition = [&](const Statement* s, const Statement* translate) -> std::optional<Partition> {
    std::optional<Partition> out;
    guarded(s, [&] { out = parse_partition(structure, s->rest); });
    guarded(translate, [&] {
      if (!out) return;
      if (!structure->is_group()) throw Error(ErrorCode::semantic_error, "translation needs a group");
      out = out->translate(structure->parse_element(translate->rest));
    });
    return out;
  };

  const Statement* partition = find("partition");
  if (structure) {
    if (!partition) errors.add(group->line, ErrorCode::semantic_error, "missing partition statement");
    spec.pair.partition = build_partition(partition, find("translate"));
  }

  guarded(find("radius"), [&] { spec.radius = parse_count(find("radius")->rest, "radius"); });
  guarded(find("verify-radius"), [&] { spec.verify_radius = parse_count(find("verify-radius")->rest, "verify radius"); });

  const Statement* analyze = find("analyze");
  guarded(analyze, [&] {
    for (const auto& word : words(analyze->rest)) {
      for (const auto& item : split_top_level(word)) {
        if (item.empty()) continue;
        auto a = parse_analysis(item);
        if (!a) throw Error(ErrorCode::syntax_error, "unknown analysis '" + item + "'");
        spec.analyses.insert(*a);
      }
    }
  });
  if (!analyze) spec.analyses = {Analysis::enumerate, Analysis::equations, Analysis::solve};

  const Statement* cg = find("compare-group");
  const Statement* cgens = find("compare-generators");
  const Statement* cpart = find("compare-partition");
  const Statement* ctrans = find("compare-translate");
  if ((cg || cgens || cpart || ctrans) && structure) {
    ConfigurationPair other;
    std::shared_ptr<const Semigroup> other_structure = structure;
    other.group_text = spec.pair.group_text;
    guarded(cg, [&] {
      auto w = words(cg->rest);
      other_structure = !w.empty() && w[0] == "semigroup" ? parse_semigroup_words({w.begin() + 1, w.end()})
                                                          : parse_group_words(w);
      other.group_text = "group " + cg->rest;
    });
    std::vector<Element> other_generators = generators;
    if (cg && !cgens) errors.add(cg->line, ErrorCode::semantic_error, "compare-group needs compare-generators");
    guarded(cgens, [&] { other_generators = parse_elements(*other_structure, cgens->rest); });
    guarded(cgens ? cgens : (cg ? cg : (cpart ? cpart : ctrans)), [&] {
      other.handle = make_handle(other_structure, other_generators);
    });
    if (cg && !cpart) errors.add(cg->line, ErrorCode::semantic_error, "compare-group needs compare-partition");
    std::swap(structure, other_structure);
    other.partition = cpart ? build_partition(cpart, ctrans) : (ctrans ? build_partition(partition, ctrans) : spec.pair.partition);
    std::swap(structure, other_structure);
    spec.compare_pair = std::move(other);
  }

  if (!errors.empty()) errors.raise();
  return spec;
}

}  // namespace configset
