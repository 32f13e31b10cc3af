#pragma once

#include <vector>

#include "configset/arith.hpp"

namespace configset {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// minimize objective . x  subject to  constraints x = rhs,  x >= 0.
struct LinearProgram {
  RationalMatrix constraints;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational value;
  /// Set when infeasible: y with y^T A <= 0 componentwise and y^T b > 0.
  std::vector<Rational> farkas;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule.
LpSolution solve_lp(const LinearProgram& program);

}  // namespace configset
