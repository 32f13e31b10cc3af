#include "configset/configuration.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "configset/error.hpp"

namespace configset {

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::one_sided: return "one_sided";
    case Mode::two_sided: return "two_sided";
    case Mode::semigroup_left: return "semigroup_left";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(const std::string& text) {
  if (text == "one_sided" || text == "one-sided") return Mode::one_sided;
  if (text == "two_sided" || text == "two-sided") return Mode::two_sided;
  if (text == "semigroup_left" || text == "semigroup-left" || text == "left") return Mode::semigroup_left;
  return std::nullopt;
}

const char* exactness_name(Exactness::Status status) {
  switch (status) {
    case Exactness::Status::exact: return "exact";
    case Exactness::Status::stable_at: return "stable_at";
    case Exactness::Status::lower_bound: return "lower_bound";
  }
  return "unknown";
}

const char* comparison_verdict_name(ComparisonVerdict verdict) {
  switch (verdict) {
    case ComparisonVerdict::equal: return "equal";
    case ComparisonVerdict::different: return "different";
    case ComparisonVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string format_configuration(const Configuration& c) {
  std::string out = "(";
  for (std::size_t k = 0; k < c.size(); ++k) out += (k ? "," : "") + std::to_string(c[k]);
  return out + ")";
}

std::size_t ConfigurationSet::tuple_length() const {
  return mode == Mode::two_sided ? 2 * generator_count + 1 : generator_count + 1;
}

std::optional<std::size_t> ConfigurationSet::index_of(const Configuration& c) const {
  auto it = std::lower_bound(configurations.begin(), configurations.end(), c);
  if (it == configurations.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - configurations.begin());
}

namespace {

void check_compatible(const Handle& handle, const Partition& partition, Mode mode) {
  if (handle.structure->describe() != partition.structure().describe() ||
      handle.structure->kind() != partition.structure().kind()) {
    throw Error(ErrorCode::kind_mismatch, "partition belongs to " + partition.structure().describe() +
                                              ", generators to " + handle.structure->describe());
  }
  if (handle.generators.empty()) throw Error(ErrorCode::semantic_error, "generators must be nonempty");
  if (mode != Mode::semigroup_left && !handle.structure->is_group()) {
    throw Error(ErrorCode::kind_mismatch, std::string(mode_name(mode)) + " configurations need a group; use semigroup_left");
  }
}

}  // namespace

std::size_t default_witness_radius(const Handle& handle) {
  std::size_t longest = 0;
  for (const auto& g : handle.generators) longest = std::max(longest, handle.structure->word_length(g));
  return 2 * longest + 2;
}

Configuration configuration_of(const Handle& handle, const Partition& partition, Mode mode, const Element& x) {
  const Semigroup& s = *handle.structure;
  Configuration c;
  c.reserve(mode == Mode::two_sided ? 2 * handle.generators.size() + 1 : handle.generators.size() + 1);
  c.push_back(partition.color(x));
  for (const auto& g : handle.generators) c.push_back(partition.color(s.multiply(g, x)));
  if (mode == Mode::two_sided) {
    for (const auto& g : handle.generators) c.push_back(partition.color(s.multiply(x, g)));
  }
  return c;
}

ConfigurationSet enumerate(const Handle& handle, const Partition& partition, Mode mode,
                           const EnumerationOptions& options) {
  check_compatible(handle, partition, mode);
  ConfigurationSet out;
  out.mode = mode;
  out.generator_count = handle.generators.size();
  out.block_count = partition.block_count();
  if (auto id = handle.structure->identity_element()) out.identity_color = partition.color(*id);

  if (auto reps = partition.witness_representatives(options.cap)) {
    std::set<Configuration> found;
    for (const auto& x : *reps) found.insert(configuration_of(handle, partition, mode, x));
    out.configurations.assign(found.begin(), found.end());
    out.exactness = {Exactness::Status::exact, 0};
    return out;
  }

  const std::size_t radius = options.radius.value_or(default_witness_radius(handle));
  const Ball witnesses = ball(handle, radius + 1, options.cap);
  std::map<Configuration, std::size_t> first_seen;
  for (std::size_t r = 0; r <= radius + 1; ++r) {
    for (std::size_t k = witnesses.layer_starts[r]; k < witnesses.layer_starts[r + 1]; ++k) {
      first_seen.emplace(configuration_of(handle, partition, mode, witnesses.elements[k]), r);
    }
  }
  bool grew = false;
  for (const auto& [c, r] : first_seen) {
    if (r <= radius) {
      out.configurations.push_back(c);
    } else {
      grew = true;
    }
  }
  out.exactness = {grew ? Exactness::Status::lower_bound : Exactness::Status::stable_at, radius};
  return out;
}

ConfigurationSet enumerate_semigroup(const Handle& handle, const Partition& partition,
                                     const EnumerationOptions& options) {
  return enumerate(handle, partition, Mode::semigroup_left, options);
}

BasePointSet::BasePointSet(Configuration owner, Handle handle, Partition partition, Mode mode)
    : owner_(std::move(owner)), handle_(std::move(handle)), partition_(std::move(partition)), mode_(mode) {
  std::size_t expected = mode_ == Mode::two_sided ? 2 * handle_.generators.size() + 1 : handle_.generators.size() + 1;
  if (owner_.size() != expected) throw Error(ErrorCode::shape_mismatch, "configuration has the wrong length");
  for (auto c : owner_) {
    if (c < 1 || c > partition_.block_count()) throw Error(ErrorCode::shape_mismatch, "color out of range");
  }
}

bool BasePointSet::contains(const Element& x) const {
  const Semigroup& s = *handle_.structure;
  if (partition_.color(x) != owner_[0]) return false;
  const std::size_t n = handle_.generators.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (partition_.color(s.multiply(handle_.generators[j], x)) != owner_[j + 1]) return false;
  }
  if (mode_ == Mode::two_sided) {
    for (std::size_t j = 0; j < n; ++j) {
      if (partition_.color(s.multiply(x, handle_.generators[j])) != owner_[n + j + 1]) return false;
    }
  }
  return true;
}

std::string BasePointSet::describe() const {
  std::string out = "E" + std::to_string(owner_[0]);
  const std::size_t n = handle_.generators.size();
  for (std::size_t j = 0; j < n; ++j) {
    out += " & g" + std::to_string(j + 1) + "^-1 E" + std::to_string(owner_[j + 1]);
  }
  if (mode_ == Mode::two_sided) {
    for (std::size_t j = 0; j < n; ++j) {
      out += " & E" + std::to_string(owner_[n + j + 1]) + " g" + std::to_string(j + 1) + "^-1";
    }
  }
  return out;
}

BasePointSet base_point_set(const Configuration& c, const ConfigurationSet& set, const Handle& handle,
                            const Partition& partition) {
  if (!set.index_of(c)) {
    throw Error(ErrorCode::precondition_failed, format_configuration(c) + " is not in the configuration set");
  }
  return BasePointSet(c, handle, partition, set.mode);
}

ComparisonReport compare(const ConfigurationSet& a, const ConfigurationSet& b) {
  if (a.generator_count != b.generator_count || a.block_count != b.block_count || a.mode != b.mode) {
    throw Error(ErrorCode::shape_mismatch,
                "configuration sets differ in shape (n=" + std::to_string(a.generator_count) + ", m=" +
                    std::to_string(a.block_count) + " vs n=" + std::to_string(b.generator_count) +
                    ", m=" + std::to_string(b.block_count) + ")");
  }
  ComparisonReport out;
  std::set_difference(a.configurations.begin(), a.configurations.end(), b.configurations.begin(),
                      b.configurations.end(), std::back_inserter(out.a_minus_b));
  std::set_difference(b.configurations.begin(), b.configurations.end(), a.configurations.begin(),
                      a.configurations.end(), std::back_inserter(out.b_minus_a));
  if (out.a_minus_b.empty() && out.b_minus_a.empty()) {
    out.verdict = a.exactness.complete() && b.exactness.complete() ? ComparisonVerdict::equal
                                                                    : ComparisonVerdict::inconclusive;
  } else {
    bool definite = (!out.a_minus_b.empty() && b.exactness.complete()) ||
                    (!out.b_minus_a.empty() && a.exactness.complete());
    out.verdict = definite ? ComparisonVerdict::different : ComparisonVerdict::inconclusive;
  }
  return out;
}

}  // namespace configset
