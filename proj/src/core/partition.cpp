#include "configset/partition.hpp"

#include <algorithm>
#include <functional>

#include "configset/error.hpp"

namespace configset {

namespace {

std::size_t residue_count(const std::vector<Integer>& moduli) {
  Integer total = 1;
  for (const auto& m : moduli) total *= m;
  if (total > Integer(kDefaultBallCap)) throw Error(ErrorCode::resource_limit, "too many residue classes");
  return total.convert_to<std::size_t>();
}

/// Lexicographic index of a residue vector, first coordinate most significant.
std::size_t residue_index(const std::vector<Integer>& residues, const std::vector<Integer>& moduli) {
  Integer index = 0;
  for (std::size_t k = 0; k < moduli.size(); ++k) index = index * moduli[k] + residues[k];
  return index.convert_to<std::size_t>();
}

Integer floor_mod(const Integer& value, const Integer& modulus) {
  Integer r = value % modulus;
  if (r < 0) r += modulus;
  return r;
}

/// Letters in block order: a, A, b, B, ... (groups) or a, b, ... (semigroups).
std::vector<Integer> prefix_alphabet(const Semigroup& s) {
  std::vector<Integer> letters;
  if (auto* f = dynamic_cast<const FreeGroup*>(&s)) {
    for (std::size_t k = 1; k <= f->rank(); ++k) {
      letters.emplace_back(k);
      letters.emplace_back(-Integer(k));
    }
  } else if (auto* fs = dynamic_cast<const FreeSemigroup*>(&s)) {
    for (std::size_t k = 1; k <= fs->rank(); ++k) letters.emplace_back(k);
  }
  return letters;
}

void reduced_words(const std::vector<Integer>& alphabet, bool group, std::size_t length,
                   std::vector<Integer>& current, std::vector<std::vector<Integer>>& out) {
  if (current.size() == length) {
    out.push_back(current);
    return;
  }
  for (const auto& letter : alphabet) {
    if (group && !current.empty() && current.back() == -letter) continue;
    current.push_back(letter);
    reduced_words(alphabet, group, length, current, out);
    current.pop_back();
  }
}

}  // namespace

Homomorphism::Homomorphism(std::shared_ptr<const Group> domain, std::shared_ptr<const Group> target,
                           std::vector<Element> images)
    : domain_(std::move(domain)), target_(std::move(target)), images_(std::move(images)) {
  if (!domain_ || !target_) throw Error(ErrorCode::semantic_error, "homomorphism needs domain and target");
  auto order = target_->order();
  if (!order) throw Error(ErrorCode::semantic_error, "quotient target " + target_->describe() + " must be finite");
  if (*order > kDefaultBallCap) throw Error(ErrorCode::resource_limit, "quotient target too large");
  domain_->check_homomorphism(images_, *target_);

  // Breadth-first closure of the images, tracking one preimage per image element.
  const auto gens = domain_->standard_generators();
  std::vector<std::pair<Element, Element>> steps;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    steps.emplace_back(images_[k], gens[k]);
    steps.emplace_back(target_->inverse(images_[k]), domain_->inverse(gens[k]));
  }
  std::map<Element, Element> seen{{target_->identity(), domain_->identity()}};
  std::vector<Element> frontier{target_->identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& y : frontier) {
      const Element pre = seen.at(y);
      for (const auto& [img, gen] : steps) {
        Element z = target_->multiply(img, y);
        if (seen.count(z)) continue;
        seen.emplace(z, domain_->multiply(gen, pre));
        next.push_back(std::move(z));
      }
    }
    frontier = std::move(next);
  }
  image_.assign(seen.begin(), seen.end());
}

Element Homomorphism::apply(const Element& element) const {
  return apply_homomorphism(*domain_, images_, *target_, element);
}

const char* partition_kind_name(PartitionKind kind) {
  switch (kind) {
    case PartitionKind::trivial: return "trivial";
    case PartitionKind::explicit_blocks: return "explicit";
    case PartitionKind::quotient: return "quotient";
    case PartitionKind::congruence: return "congruence";
    case PartitionKind::prefix: return "prefix";
  }
  return "unknown";
}

Partition::Partition(PartitionKind kind, std::shared_ptr<const Semigroup> structure, std::size_t block_count)
    : kind_(kind), structure_(std::move(structure)), block_count_(block_count) {
  if (!structure_) throw Error(ErrorCode::semantic_error, "partition without structure");
  if (block_count_ == 0) throw Error(ErrorCode::semantic_error, "partition needs at least one block");
}

Partition Partition::trivial(std::shared_ptr<const Semigroup> structure) {
  return Partition(PartitionKind::trivial, std::move(structure), 1);
}

Partition Partition::explicit_blocks(std::shared_ptr<const Semigroup> structure, std::size_t block_count,
                                     const std::vector<std::size_t>& colors) {
  if (!structure || !structure->order()) {
    throw Error(ErrorCode::semantic_error, "explicit partitions need a finite structure");
  }
  Partition p(PartitionKind::explicit_blocks, structure, block_count);
  const auto elements = structure->elements();
  if (colors.size() != elements.size()) {
    throw Error(ErrorCode::semantic_error, "explicit partition must color all " + std::to_string(elements.size()) +
                                               " elements");
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (colors[k] < 1 || colors[k] > block_count) {
      throw Error(ErrorCode::semantic_error, "explicit partition color out of range");
    }
    p.explicit_colors_.emplace(elements[k], colors[k]);
  }
  std::vector<bool> used(block_count, false);
  for (std::size_t c : colors) used[c - 1] = true;
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw Error(ErrorCode::semantic_error, "explicit partition has an empty block");
  }
  return p;
}

Partition Partition::quotient(std::shared_ptr<const Homomorphism> hom, std::size_t block_count,
                              std::map<Element, std::size_t> target_blocks) {
  if (!hom) throw Error(ErrorCode::semantic_error, "quotient partition without homomorphism");
  std::shared_ptr<const Semigroup> domain(hom, &hom->domain());
  Partition p(PartitionKind::quotient, domain, block_count);
  for (const auto& [y, c] : target_blocks) {
    hom->target().validate(y);
    if (c < 1 || c > block_count) throw Error(ErrorCode::semantic_error, "quotient block out of range");
  }
  for (const auto& [y, pre] : hom->image_with_preimages()) {
    if (!target_blocks.count(y)) {
      throw Error(ErrorCode::semantic_error,
                  "quotient partition leaves image element " + hom->target().format(y) + " unassigned");
    }
  }
  p.hom_ = std::move(hom);
  p.target_blocks_ = std::move(target_blocks);
  return p;
}

Partition Partition::congruence(std::shared_ptr<const Semigroup> structure, std::vector<Integer> moduli,
                                std::optional<std::vector<std::size_t>> residue_blocks) {
  if (!structure) throw Error(ErrorCode::semantic_error, "partition without structure");
  for (const auto& m : moduli) {
    if (m < 1) throw Error(ErrorCode::semantic_error, "moduli must be positive");
  }
  const std::size_t count = residue_count(moduli);
  std::size_t blocks = count;
  if (residue_blocks) {
    if (residue_blocks->size() != count) {
      throw Error(ErrorCode::semantic_error, "residue block map must list " + std::to_string(count) + " entries");
    }
    blocks = 0;
    for (auto b : *residue_blocks) {
      if (b < 1) throw Error(ErrorCode::semantic_error, "residue blocks are 1-based");
      blocks = std::max(blocks, b);
    }
  }

  if (auto* nat = dynamic_cast<const NaturalNumbers*>(structure.get())) {
    if (moduli.size() != nat->rank()) {
      throw Error(ErrorCode::semantic_error, "congruence on " + nat->describe() + " needs " +
                                                 std::to_string(nat->rank()) + " moduli");
    }
    Partition p(PartitionKind::congruence, structure, blocks);
    p.moduli_ = std::move(moduli);
    p.residue_blocks_ = std::move(residue_blocks);
    return p;
  }

  auto abelian = std::dynamic_pointer_cast<const FgAbelianGroup>(structure);
  if (!abelian) {
    throw Error(ErrorCode::semantic_error,
                "congruence partitions need a finitely generated abelian group or N^k, not " + structure->describe());
  }
  if (moduli.size() != abelian->rank()) {
    throw Error(ErrorCode::semantic_error, "congruence on " + abelian->describe() + " needs " +
                                               std::to_string(abelian->rank()) + " moduli");
  }
  // Reduction modulo the moduli, realized as a homomorphism onto a finite abelian group.
  std::vector<Integer> target_torsion;
  std::vector<std::size_t> slot(moduli.size(), 0);
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    if (moduli[k] >= 2) {
      slot[k] = target_torsion.size();
      target_torsion.push_back(moduli[k]);
    }
  }
  std::shared_ptr<const Group> target;
  if (target_torsion.empty()) {
    target = FiniteGroup::cyclic(1);
  } else {
    target = std::make_shared<FgAbelianGroup>(0, target_torsion);
  }
  std::vector<Element> images;
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    if (moduli[k] >= 2) {
      std::vector<Integer> coords(target_torsion.size(), 0);
      coords[slot[k]] = 1;
      images.push_back(Element{StructureKind::fg_abelian, coords});
    } else {
      images.push_back(target->identity());
    }
  }
  std::shared_ptr<const Homomorphism> hom;
  try {
    hom = std::make_shared<Homomorphism>(abelian, target, images);
  } catch (const Error&) {
    throw Error(ErrorCode::semantic_error,
                "moduli are incompatible with " + abelian->describe() + " (each modulus must divide the torsion order)");
  }
  std::map<Element, std::size_t> target_blocks;
  for (const auto& y : target->elements()) {
    std::vector<Integer> residues(moduli.size(), 0);
    if (!target_torsion.empty()) {
      for (std::size_t k = 0; k < moduli.size(); ++k)
        if (moduli[k] >= 2) residues[k] = y.normal_form[slot[k]];
    }
    std::size_t index = residue_index(residues, moduli);
    target_blocks.emplace(y, residue_blocks ? (*residue_blocks)[index] : index + 1);
  }
  Partition p(PartitionKind::congruence, structure, blocks);
  p.hom_ = std::move(hom);
  p.target_blocks_ = std::move(target_blocks);
  p.moduli_ = std::move(moduli);
  p.residue_blocks_ = std::move(residue_blocks);
  return p;
}

Partition Partition::prefix(std::shared_ptr<const Semigroup> structure, std::size_t depth,
                            std::optional<int> identity_letter) {
  if (!structure) throw Error(ErrorCode::semantic_error, "partition without structure");
  const bool group = dynamic_cast<const FreeGroup*>(structure.get()) != nullptr;
  const auto alphabet = prefix_alphabet(*structure);
  if (alphabet.empty()) {
    throw Error(ErrorCode::semantic_error,
                "prefix partitions need a free group, free semigroup or free monoid, not " + structure->describe());
  }
  if (depth == 0) throw Error(ErrorCode::semantic_error, "prefix depth must be at least 1");
  const bool has_empty = structure->identity_element().has_value();
  if (identity_letter) {
    if (depth != 1) throw Error(ErrorCode::semantic_error, "identity-block option needs prefix depth 1");
    if (!has_empty) throw Error(ErrorCode::semantic_error, structure->describe() + " has no identity");
    if (std::find(alphabet.begin(), alphabet.end(), Integer(*identity_letter)) == alphabet.end()) {
      throw Error(ErrorCode::semantic_error, "identity-block letter is not a generator letter");
    }
  }

  std::map<std::vector<Integer>, std::size_t> blocks;
  std::size_t next = 1;
  for (std::size_t len = 0; len <= depth; ++len) {
    if (len == 0 && (!has_empty || identity_letter)) continue;
    std::vector<std::vector<Integer>> words;
    std::vector<Integer> current;
    reduced_words(alphabet, group, len, current, words);
    for (auto& w : words) blocks.emplace(std::move(w), next++);
  }
  if (next - 1 > kDefaultBallCap) throw Error(ErrorCode::resource_limit, "too many prefix blocks");
  if (identity_letter) blocks.emplace(std::vector<Integer>{}, blocks.at({Integer(*identity_letter)}));

  Partition p(PartitionKind::prefix, structure, next - 1);
  p.depth_ = depth;
  p.identity_letter_ = identity_letter;
  p.prefix_blocks_ = std::move(blocks);
  return p;
}

std::size_t Partition::base_color(const Element& element) const {
  switch (kind_) {
    case PartitionKind::trivial:
      return 1;
    case PartitionKind::explicit_blocks:
      return explicit_colors_.at(element);
    case PartitionKind::quotient:
      return target_blocks_.at(hom_->apply(element));
    case PartitionKind::congruence: {
      if (hom_) return target_blocks_.at(hom_->apply(element));
      std::vector<Integer> residues;
      for (std::size_t k = 0; k < moduli_.size(); ++k) residues.push_back(floor_mod(element.normal_form[k], moduli_[k]));
      std::size_t index = residue_index(residues, moduli_);
      return residue_blocks_ ? (*residue_blocks_)[index] : index + 1;
    }
    case PartitionKind::prefix: {
      const auto& nf = element.normal_form;
      std::vector<Integer> head(nf.begin(), nf.begin() + static_cast<std::ptrdiff_t>(std::min(depth_, nf.size())));
      return prefix_blocks_.at(head);
    }
  }
  throw Error(ErrorCode::semantic_error, "unknown partition kind");
}

std::size_t Partition::color(const Element& element) const {
  structure_->validate(element);
  if (translator_) {
    const Group& g = dynamic_cast<const Group&>(*structure_);
    return base_color(g.multiply(element, g.inverse(*translator_)));
  }
  return base_color(element);
}

Partition Partition::translate(const Element& x) const {
  const Group* g = dynamic_cast<const Group*>(structure_.get());
  if (!g) throw Error(ErrorCode::kind_mismatch, "partitions can only be translated on groups");
  g->validate(x);
  Partition out = *this;
  out.translator_ = translator_ ? g->multiply(*translator_, x) : x;
  return out;
}

std::optional<std::vector<Element>> Partition::witness_representatives(std::size_t cap) const {
  if (kind_ == PartitionKind::trivial) {
    if (auto id = structure_->identity_element()) return std::vector<Element>{*id};
    return std::vector<Element>{structure_->standard_generators().front()};
  }
  if (auto order = structure_->order()) {
    if (*order > cap) throw Error(ErrorCode::resource_limit, "structure exceeds witness cap");
    return structure_->elements();
  }
  if (hom_) {
    const auto& image = hom_->image_with_preimages();
    if (image.size() > cap) throw Error(ErrorCode::resource_limit, "quotient image exceeds witness cap");
    std::vector<Element> reps;
    for (const auto& [y, pre] : image) reps.push_back(pre);
    return reps;
  }
  if (kind_ == PartitionKind::congruence) {
    // N^k: colors of x and g x depend only on the residues of x.
    const auto& nat = dynamic_cast<const NaturalNumbers&>(*structure_);
    const std::size_t count = residue_count(moduli_);
    if (count > cap) throw Error(ErrorCode::resource_limit, "residue box exceeds witness cap");
    std::vector<Element> reps;
    std::vector<Integer> coords(moduli_.size(), 0);
    for (std::size_t n = 0; n < count; ++n) {
      reps.push_back(nat.from_coordinates(coords));
      for (std::size_t k = moduli_.size(); k-- > 0;) {
        if (++coords[k] < moduli_[k]) break;
        coords[k] = 0;
      }
    }
    return reps;
  }
  return std::nullopt;
}

std::string Partition::describe() const {
  std::string out;
  auto moduli_text = [&] {
    std::string s = "(";
    for (std::size_t k = 0; k < moduli_.size(); ++k) s += (k ? "," : "") + moduli_[k].str();
    return s + ")";
  };
  switch (kind_) {
    case PartitionKind::trivial:
      out = "trivial";
      break;
    case PartitionKind::explicit_blocks:
      out = "explicit";
      break;
    case PartitionKind::quotient:
      out = "quotient onto " + hom_->target().describe();
      break;
    case PartitionKind::congruence:
      out = "congruence mod " + moduli_text();
      if (residue_blocks_) out += " merged";
      break;
    case PartitionKind::prefix:
      out = "prefix depth " + std::to_string(depth_);
      if (identity_letter_) {
        Integer letter(*identity_letter_);
        out += " identity with " + structure_->format(Element{structure_->kind(), {letter}});
      }
      break;
  }
  out += ", " + std::to_string(block_count_) + (block_count_ == 1 ? " block" : " blocks");
  if (translator_) out += ", translated by " + structure_->format(*translator_);
  return out;
}

RefinementResult is_refinement(const Partition& fine, const Partition& coarse, const Ball& sample) {
  if (fine.structure().describe() != coarse.structure().describe() ||
      fine.structure().kind() != coarse.structure().kind()) {
    throw Error(ErrorCode::kind_mismatch, "refinement check needs partitions of the same structure");
  }
  RefinementResult result;
  result.radius = sample.radius;
  result.collapse.assign(fine.block_count(), 0);
  for (const auto& x : sample.elements) {
    std::size_t f = fine.color(x);
    std::size_t e = coarse.color(x);
    auto& slot = result.collapse[f - 1];
    if (slot == 0) {
      slot = e;
    } else if (slot != e) {
      result.counterexample = x;
      result.collapse.clear();
      return result;
    }
  }
  result.refines = true;
  return result;
}

}  // namespace configset
