#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "configset/paradox.hpp"
#include "configset/spec.hpp"

namespace configset {

struct RunOptions {
  std::optional<std::size_t> radius;
  std::optional<Mode> mode;
  std::optional<std::size_t> verify_radius;
  /// Replaces the spec's analyses when set.
  std::optional<std::set<Analysis>> analyses;
  std::size_t cap = kDefaultBallCap;
  std::size_t condition_cap = kDefaultConditionCap;
  PiConvention pi_convention = PiConvention::compose;
  SynthesisOptions synthesis;
};

/// `body` is canonical: fixed key order, no clocks. Wall times live in `timing`.
struct Report {
  nlohmann::ordered_json body;
  nlohmann::ordered_json timing;
};

/// Runs the requested analyses in dependency order. Paradox analyses are
/// skipped (and say so) when the equations have a normalized solution.
Report run(const ExperimentSpec& spec, const RunOptions& options = {});

/// Set-difference report between the configuration sets of two specs.
Report compare_command(const ExperimentSpec& a, const ExperimentSpec& b, const RunOptions& options = {});

std::string canonical_json(const Report& report, int indent = 2);
std::string full_json(const Report& report, int indent = 2);
std::string render_text(const Report& report);

}  // namespace configset
