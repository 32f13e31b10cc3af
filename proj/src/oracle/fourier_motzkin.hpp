#pragma once

#include <cstddef>

#include "configset/simplex.hpp"

namespace configset::oracle {

inline constexpr std::size_t kOracleMaxVariables = 12;

/// Whether A f = 0 has a solution with f >= 0, f != 0, decided by substituting
/// the equalities and then eliminating variables one at a time. Throws
/// resource_limit past max_variables columns or when the inequality list blows up.
bool oracle_feasibility(const RationalMatrix& a, std::size_t columns,
                        std::size_t max_variables = kOracleMaxVariables);

}  // namespace configset::oracle
