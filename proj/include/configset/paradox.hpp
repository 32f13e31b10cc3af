#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "configset/configuration.hpp"
#include "configset/equations.hpp"
#include "configset/feasibility.hpp"

namespace configset {

/// A^j_i = {C : C_j = i} and the unions U^j_i of the base-point sets x_0(C).
class AtomFamily {
 public:
  AtomFamily(Handle handle, Partition partition, ConfigurationSet set);

  const ConfigurationSet& set() const { return set_; }
  const Handle& handle() const { return handle_; }
  const Partition& partition() const { return partition_; }

  /// Indices into set().configurations with C_j = i; j = 0 is C_0.
  std::vector<std::size_t> atoms(std::size_t color, std::size_t position) const;

  /// Index of the atom containing x, nullopt when cfg(x) is not listed.
  std::optional<std::size_t> atom_of(const Element& x) const;

  bool in_union(const Element& x, std::size_t color, std::size_t position) const;

  /// For each fixed j, whether {A^j_1, ..., A^j_m} partitions the set.
  bool partitions_configurations() const;

 private:
  Handle handle_;
  Partition partition_;
  ConfigurationSet set_;
};

struct TranslationLemmaReport {
  std::size_t radius = 0;
  std::size_t checked_radius = 0;
  std::size_t checks = 0;
  /// (i, j, j', element) for every disagreement.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Element>> counterexamples;
};

/// g_{j'}^{-1} g_j (U^j_i ∩ ball(R)) against U^{j'}_i on ball(R - 2 maxlen).
TranslationLemmaReport check_translation_lemma(const AtomFamily& family, std::size_t radius,
                                               std::size_t cap = kDefaultBallCap);

/// One row written as sum_i (L^{j_i}_i - L^{k_i}_i).
struct StructuredRow {
  std::vector<Integer> row;
  /// (j_i, k_i) per color i = 1..m.
  std::vector<std::pair<std::size_t, std::size_t>> indices;
};

enum class ConditionStatus { certificate, not_found };

struct ParadoxicalCondition {
  ConditionStatus status = ConditionStatus::not_found;
  /// True when the rows are the caller's B; false when found by the structured search.
  bool from_given_rows = false;
  std::vector<StructuredRow> rows;
};

inline constexpr std::size_t kDefaultConditionCap = 20'000'000;

/// Expresses one row exactly, searching the (n+1)^{2m} index choices in
/// lexicographic order. Throws search_cap_exceeded past cap nodes.
std::optional<StructuredRow> express_row(const EquationSystem& system, const std::vector<Integer>& row,
                                         std::size_t cap = kDefaultConditionCap);

/// Tries the given B row by row; when a row has no such form, searches for
/// structured rows that by themselves forbid nonzero nonnegative solutions (a
/// strictly positive row, else a cover by nonnegative rows).
ParadoxicalCondition check_paradoxical_condition(const EquationSystem& system,
                                                 const std::vector<std::vector<Integer>>& b,
                                                 std::size_t cap = kDefaultConditionCap);

enum class Side { a, b };

struct DecompositionPiece {
  Side side = Side::a;
  Element translator;
  /// Indices into the configuration set; the piece is the union of their x_0(C).
  std::vector<std::size_t> atoms;
};

struct ParadoxicalDecomposition {
  Handle handle;
  Partition partition;
  ConfigurationSet set;
  std::vector<DecompositionPiece> pieces;

  std::size_t piece_count() const { return pieces.size(); }
  bool contains(std::size_t piece, const Element& x) const;
};

struct DecompositionViolation {
  enum class Kind { overlap, uncovered_a, uncovered_b };
  Kind kind = Kind::overlap;
  Element element;
  /// Pieces containing the element (overlap only).
  std::vector<std::size_t> pieces;
};

const char* violation_kind_name(DecompositionViolation::Kind kind);

struct VerificationReport {
  std::size_t radius = 0;
  std::size_t max_translator_length = 0;
  std::size_t ball_size = 0;
  std::size_t interior_size = 0;
  std::vector<DecompositionViolation> violations;

  bool valid() const { return violations.empty(); }
};

/// Pairwise disjointness on ball(radius), both covers on ball(radius - maxlen),
/// with maxlen the longest translator in generator-word length.
VerificationReport verify_decomposition(const ParadoxicalDecomposition& decomposition, std::size_t radius,
                                        std::size_t cap = kDefaultBallCap);

struct SynthesisOptions {
  std::size_t radius = 6;
  std::size_t max_pieces = 6;
  /// Translator multisets tried before giving up.
  std::size_t max_attempts = 200'000;
  /// Backtracking nodes per attempt.
  std::size_t node_cap = 100'000;
  std::size_t ball_cap = kDefaultBallCap;
};

struct SynthesisResult {
  ParadoxicalDecomposition decomposition;
  VerificationReport verification;
  std::size_t attempts = 0;
};

/// Candidate translators g_{j'}^{-1} g_j, ordered by generator-word length with
/// the ones named by the condition first.
std::vector<Element> candidate_translators(const Handle& handle, const ParadoxicalCondition* condition = nullptr);

/// Precondition: a group set whose equations have no nonzero nonnegative
/// solution. Only verified decompositions are returned; synthesis_failed when
/// the bounded search runs out.
SynthesisResult synthesize_decomposition(const Handle& handle, const Partition& partition,
                                         const ConfigurationSet& set, const ParadoxicalCondition* condition = nullptr,
                                         const SynthesisOptions& options = {});

/// l + l^{2l}. Throws for l = 0.
Integer tarski_upper_bound(std::size_t l);

enum class PiConvention { compose, one_line };

const char* pi_convention_name(PiConvention convention);

using IntMatrix = std::vector<std::vector<int>>;

struct NormalConditionResult {
  bool normal = false;
  /// One-line notation, 1-based; set when normal.
  std::vector<std::size_t> permutation;
  IntMatrix witness;
  std::size_t permutations_checked = 0;
};

inline constexpr std::size_t kMaxNormalRows = 8;

/// Searches permutations pi in lexicographic order for
/// T P_pi (B - A) - P_{pi.sigma} A >= -1 entrywise, sigma = (1 2 ... n).
/// compose takes pi∘sigma, one_line takes sigma∘pi.
NormalConditionResult check_normal_condition(const IntMatrix& a, const IntMatrix& b,
                                             PiConvention convention = PiConvention::compose);

struct NormalSubsystem {
  std::size_t first_row = 0;
  std::size_t row_count = 0;
  /// false: B rows are L^0_i and A rows L^j_i; true: swapped.
  bool swapped = false;
  NormalConditionResult result;
};

/// Contiguous row blocks of the system (length <= max_rows), both orientations.
std::optional<NormalSubsystem> search_normal_subsystems(const EquationSystem& system,
                                                        PiConvention convention = PiConvention::compose,
                                                        std::size_t max_rows = kMaxNormalRows);

/// A union of ideals sS, explicit elements and partition blocks.
struct SemigroupPieceSet {
  std::vector<Element> ideals;
  std::vector<Element> elements;
  std::vector<std::size_t> blocks;
};

struct SemigroupPiece {
  Side side = Side::a;
  Element translator;
  SemigroupPieceSet set;
};

struct SemigroupParadoxReport {
  std::size_t radius = 0;
  std::size_t ball_size = 0;
  std::vector<DecompositionViolation> violations;
  /// Ball elements in no piece; allowed, reported for information.
  std::vector<Element> unassigned;

  bool valid() const { return violations.empty(); }
};

/// S = ∪ g_i^{-1} A_i = ∪ h_j^{-1} B_j with s^{-1}A = {t : st ∈ A}, pieces
/// pairwise disjoint, all on words up to length radius.
SemigroupParadoxReport left_paradox_semigroup(const Handle& handle, const std::vector<SemigroupPiece>& pieces,
                                              std::size_t radius, const Partition* partition = nullptr,
                                              std::size_t cap = kDefaultBallCap);

struct SemigroupSearchResult {
  std::optional<std::vector<SemigroupPiece>> pieces;
  std::size_t systems_checked = 0;
};

/// Exhaustive search over small piece systems: pieces are unions of partition
/// blocks, translators come from ball(1), at most max_pieces pieces in all.
SemigroupSearchResult search_semigroup_paradox(const Handle& handle, const Partition& partition, std::size_t radius,
                                               std::size_t max_pieces = 4);

}  // namespace configset
