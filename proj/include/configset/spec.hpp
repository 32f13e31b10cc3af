#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "configset/configuration.hpp"

namespace configset {

enum class Analysis { enumerate, equations, solve, paradox, tarski, normal, compare };

const char* analysis_name(Analysis analysis);
std::optional<Analysis> parse_analysis(const std::string& text);

/// A structure, a generator tuple and a partition of that structure.
struct ConfigurationPair {
  std::string group_text;
  Handle handle;
  std::optional<Partition> partition;
};

/// A validated experiment: one configuration pair plus options, an optional
/// second pair for comparison, and the requested analyses.
struct ExperimentSpec {
  ConfigurationPair pair;
  std::optional<ConfigurationPair> compare_pair;
  Mode mode = Mode::one_sided;
  std::optional<std::size_t> radius;
  std::size_t verify_radius = 6;
  std::set<Analysis> analyses;
};

/// Parses the line-oriented spec grammar (';' also separates statements).
/// Errors carry line numbers; all statement errors are collected into one
/// Error, coded syntax_error when any of them is syntactic.
ExperimentSpec parse_spec(const std::string& text);

/// Parses a structure clause such as "z^2", "cyclic 6" or "semigroup free 2".
std::shared_ptr<const Semigroup> parse_structure(const std::string& text);

}  // namespace configset
