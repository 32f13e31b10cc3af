#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "configset/group.hpp"

namespace configset {

/// A homomorphism from a group onto a subgroup of a finite group, fixed by
/// the images of the domain's standard generators.
class Homomorphism {
 public:
  Homomorphism(std::shared_ptr<const Group> domain, std::shared_ptr<const Group> target,
               std::vector<Element> images);

  Element apply(const Element& element) const;
  const Group& domain() const { return *domain_; }
  const Group& target() const { return *target_; }
  const std::shared_ptr<const Group>& target_ptr() const { return target_; }
  const std::vector<Element>& images() const { return images_; }

  /// The image subgroup, sorted, with one domain preimage per image element.
  const std::vector<std::pair<Element, Element>>& image_with_preimages() const { return image_; }

 private:
  std::shared_ptr<const Group> domain_;
  std::shared_ptr<const Group> target_;
  std::vector<Element> images_;
  std::vector<std::pair<Element, Element>> image_;
};

enum class PartitionKind { trivial, explicit_blocks, quotient, congruence, prefix };

const char* partition_kind_name(PartitionKind kind);

/// A finite partition E = {E_1, ..., E_m}; colors are 1-based.
class Partition {
 public:
  static Partition trivial(std::shared_ptr<const Semigroup> structure);

  /// Finite structures only. colors[k] is the block of elements()[k].
  static Partition explicit_blocks(std::shared_ptr<const Semigroup> structure, std::size_t block_count,
                                   const std::vector<std::size_t>& colors);

  /// Pullback of a partition of the finite target; every image element needs a block.
  static Partition quotient(std::shared_ptr<const Homomorphism> hom, std::size_t block_count,
                            std::map<Element, std::size_t> target_blocks);

  /// Reduction modulo a moduli vector on fg-abelian groups or N^k. Without a
  /// residue map the color is 1 + the lexicographic index of the residue vector
  /// (first coordinate most significant); with one, residue_blocks[index].
  static Partition congruence(std::shared_ptr<const Semigroup> structure, std::vector<Integer> moduli,
                              std::optional<std::vector<std::size_t>> residue_blocks = std::nullopt);

  /// First-letter classes (or length-depth prefix classes) of reduced words on
  /// free groups, free semigroups and free monoids. Shorter words form singleton
  /// blocks, listed first; the empty word is block 1 when present. With
  /// identity_letter set (depth 1, groups and monoids) the empty word joins the
  /// block of words starting with that letter instead.
  static Partition prefix(std::shared_ptr<const Semigroup> structure, std::size_t depth = 1,
                          std::optional<int> identity_letter = std::nullopt);

  PartitionKind kind() const { return kind_; }
  std::size_t block_count() const { return block_count_; }
  const Semigroup& structure() const { return *structure_; }
  const std::shared_ptr<const Semigroup>& structure_ptr() const { return structure_; }
  const std::optional<Element>& translator() const { return translator_; }
  std::string describe() const;

  std::size_t color(const Element& element) const;

  /// Blocks E_i x. Groups only.
  Partition translate(const Element& x) const;

  /// A finite set of elements realizing every configuration of every generator
  /// tuple, when the partition admits an exact witness search (finite
  /// structures, trivial, quotient and congruence kinds). nullopt otherwise.
  std::optional<std::vector<Element>> witness_representatives(std::size_t cap) const;

 private:
  Partition(PartitionKind kind, std::shared_ptr<const Semigroup> structure, std::size_t block_count);

  std::size_t base_color(const Element& element) const;

  PartitionKind kind_;
  std::shared_ptr<const Semigroup> structure_;
  std::size_t block_count_ = 1;
  std::optional<Element> translator_;

  std::map<Element, std::size_t> explicit_colors_;

  std::shared_ptr<const Homomorphism> hom_;
  std::map<Element, std::size_t> target_blocks_;

  std::vector<Integer> moduli_;
  std::optional<std::vector<std::size_t>> residue_blocks_;

  std::size_t depth_ = 1;
  std::optional<int> identity_letter_;
  std::map<std::vector<Integer>, std::size_t> prefix_blocks_;
};

struct RefinementResult {
  bool refines = false;
  /// collapse[f-1] = E-color of F-block f (0 if the block was not met).
  std::vector<std::size_t> collapse;
  std::size_t radius = 0;
  std::optional<Element> counterexample;
};

/// Whether every F-block met by the ball lies inside one E-block.
RefinementResult is_refinement(const Partition& fine, const Partition& coarse, const Ball& sample);

}  // namespace configset
