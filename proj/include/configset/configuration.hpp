#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "configset/group.hpp"
#include "configset/partition.hpp"

namespace configset {

enum class Mode { one_sided, two_sided, semigroup_left };

const char* mode_name(Mode mode);
std::optional<Mode> parse_mode(const std::string& text);

/// Color tuple (C_0, C_1, ..., C_n), or (C_0, ..., C_2n) for two-sided mode.
using Configuration = std::vector<std::size_t>;

std::string format_configuration(const Configuration& c);

struct Exactness {
  enum class Status { exact, stable_at, lower_bound };
  Status status = Status::exact;
  std::size_t radius = 0;

  /// exact or stable_at: the listed set is claimed complete.
  bool complete() const { return status != Status::lower_bound; }
};

const char* exactness_name(Exactness::Status status);

struct ConfigurationSet {
  Mode mode = Mode::one_sided;
  std::size_t generator_count = 0;
  std::size_t block_count = 0;
  /// Sorted lexicographically, no duplicates.
  std::vector<Configuration> configurations;
  Exactness exactness;
  /// Color of the identity element, 0 when the structure has none.
  std::size_t identity_color = 0;

  std::size_t size() const { return configurations.size(); }
  std::size_t tuple_length() const;
  std::optional<std::size_t> index_of(const Configuration& c) const;
};

struct EnumerationOptions {
  /// Witness radius for ball searches; default 2 * (max generator length) + 2.
  std::optional<std::size_t> radius;
  std::size_t cap = kDefaultBallCap;
};

std::size_t default_witness_radius(const Handle& handle);

/// The configuration witnessed by x.
Configuration configuration_of(const Handle& handle, const Partition& partition, Mode mode, const Element& x);

ConfigurationSet enumerate(const Handle& handle, const Partition& partition, Mode mode,
                           const EnumerationOptions& options = {});

/// Left configurations of a semigroup (g_i x in E_{C_i}).
ConfigurationSet enumerate_semigroup(const Handle& handle, const Partition& partition,
                                     const EnumerationOptions& options = {});

/// x_0(C) = E_{C_0} ∩ g_1^{-1}E_{C_1} ∩ ... ∩ g_n^{-1}E_{C_n} (plus the right-hand
/// conditions in two-sided mode), with s^{-1}A = {t : st ∈ A}.
class BasePointSet {
 public:
  BasePointSet(Configuration owner, Handle handle, Partition partition, Mode mode);

  const Configuration& owner() const { return owner_; }
  bool contains(const Element& x) const;
  std::string describe() const;

 private:
  Configuration owner_;
  Handle handle_;
  Partition partition_;
  Mode mode_;
};

/// Precondition: c belongs to set.
BasePointSet base_point_set(const Configuration& c, const ConfigurationSet& set, const Handle& handle,
                            const Partition& partition);

enum class ComparisonVerdict { equal, different, inconclusive };

const char* comparison_verdict_name(ComparisonVerdict verdict);

struct ComparisonReport {
  ComparisonVerdict verdict = ComparisonVerdict::inconclusive;
  std::vector<Configuration> a_minus_b;
  std::vector<Configuration> b_minus_a;
};

/// Set difference of two configuration sets of the same shape. Equality is
/// only claimed when both sides are complete; a difference is only definite
/// when the side missing the tuple is complete.
ComparisonReport compare(const ConfigurationSet& a, const ConfigurationSet& b);

}  // namespace configset
