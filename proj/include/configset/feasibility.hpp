#pragma once

#include <optional>
#include <vector>

#include "configset/equations.hpp"
#include "configset/simplex.hpp"

namespace configset {

/// y with y^T A >= 1 in every column: no nonzero nonnegative f solves A f = 0.
struct InfeasibilityCertificate {
  std::vector<Rational> multipliers;
  std::vector<Rational> combination;
};

struct FeasibilityOutcome {
  bool feasible = false;
  /// Normalized solution (f >= 0, sum f = 1, A f = 0) when feasible.
  std::vector<Rational> solution;
  std::optional<InfeasibilityCertificate> certificate;
};

RationalMatrix to_matrix(const EquationSystem& system);

/// Solves [A; 1^T] f = [0; 1], f >= 0; on infeasibility the phase-1 duals
/// give the certificate.
FeasibilityOutcome solve_normalized(const RationalMatrix& a, std::size_t columns);
FeasibilityOutcome solve_normalized(const EquationSystem& system);

/// Maximizes sum f over A f = 0, 0 <= f <= 1. Zero optimum means infeasible;
/// the certificate then comes from a separate LP.
FeasibilityOutcome solve_nonzero_nonnegative(const RationalMatrix& a, std::size_t columns);
FeasibilityOutcome solve_nonzero_nonnegative(const EquationSystem& system);

/// A y with y^T A >= 1 minimizing sum |y_r|, or nullopt if none exists.
std::optional<InfeasibilityCertificate> farkas_certificate(const RationalMatrix& a, std::size_t columns);
std::optional<InfeasibilityCertificate> farkas_certificate(const EquationSystem& system);

bool verify_solution(const RationalMatrix& a, const std::vector<Rational>& f);
bool verify_certificate(const RationalMatrix& a, std::size_t columns, const InfeasibilityCertificate& certificate);

/// A row B = y^T A scaled to a primitive integer vector, strictly positive in
/// every column, with the matching multipliers.
struct RowReduction {
  std::vector<Integer> row;
  std::vector<Rational> multipliers;
};

/// Precondition: the system has no nonzero nonnegative solution.
RowReduction nonnegative_row_reduction(const RationalMatrix& a, std::size_t columns);
RowReduction nonnegative_row_reduction(const EquationSystem& system);

/// Push a solution forward along a refinement: g(C) sums f(F) over the
/// F-configurations that collapse onto C.
std::vector<Rational> push_forward(const std::vector<Configuration>& fine_variables,
                                   const std::vector<Rational>& fine_solution,
                                   const std::vector<std::size_t>& collapse,
                                   const std::vector<Configuration>& coarse_variables);

}  // namespace configset
