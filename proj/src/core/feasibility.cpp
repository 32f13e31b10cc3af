#include "configset/feasibility.hpp"

#include <algorithm>
#include <map>

#include <boost/integer/common_factor.hpp>

#include "configset/error.hpp"

namespace configset {

namespace {

void check_shape(const RationalMatrix& a, std::size_t columns) {
  if (columns == 0) throw Error(ErrorCode::precondition_failed, "system has no variables");
  for (const auto& row : a) {
    if (row.size() != columns) throw Error(ErrorCode::shape_mismatch, "ragged coefficient matrix");
  }
}

bool all_zero(const RationalMatrix& a) {
  return std::all_of(a.begin(), a.end(),
                     [](const auto& row) { return std::all_of(row.begin(), row.end(), [](const Rational& v) { return v == 0; }); });
}

std::vector<Rational> uniform(std::size_t columns) {
  return std::vector<Rational>(columns, Rational(1, static_cast<long>(columns)));
}

std::vector<Rational> combine(const RationalMatrix& a, std::size_t columns, const std::vector<Rational>& y) {
  std::vector<Rational> out(columns);
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (y[r] == 0) continue;
    for (std::size_t k = 0; k < columns; ++k) out[k] += y[r] * a[r][k];
  }
  return out;
}

}  // namespace

RationalMatrix to_matrix(const EquationSystem& system) {
  RationalMatrix out;
  out.reserve(system.row_count());
  for (const auto& row : system.rows()) out.emplace_back(row.begin(), row.end());
  return out;
}

FeasibilityOutcome solve_normalized(const RationalMatrix& a, std::size_t columns) {
  check_shape(a, columns);
  FeasibilityOutcome out;
  if (all_zero(a)) {
    out.feasible = true;
    out.solution = uniform(columns);
    return out;
  }
  LinearProgram lp;
  lp.constraints = a;
  lp.constraints.emplace_back(columns, Rational(1));
  lp.rhs.assign(a.size(), Rational(0));
  lp.rhs.push_back(1);
  lp.objective.assign(columns, Rational(0));
  const LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::optimal) {
    out.feasible = true;
    out.solution = sol.x;
    return out;
  }
  // w^T [A; 1] <= 0 and w_last > 0, so y = -w_A / w_last has y^T A >= 1.
  const Rational last = sol.farkas.back();
  InfeasibilityCertificate cert;
  cert.multipliers.resize(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) cert.multipliers[r] = -sol.farkas[r] / last;
  cert.combination = combine(a, columns, cert.multipliers);
  out.certificate = std::move(cert);
  return out;
}

FeasibilityOutcome solve_normalized(const EquationSystem& system) {
  return solve_normalized(to_matrix(system), system.variable_count());
}

FeasibilityOutcome solve_nonzero_nonnegative(const RationalMatrix& a, std::size_t columns) {
  check_shape(a, columns);
  FeasibilityOutcome out;
  if (all_zero(a)) {
    out.feasible = true;
    out.solution = uniform(columns);
    return out;
  }
  // Variables (f, s): A f = 0, f + s = 1, minimize -sum f.
  LinearProgram lp;
  for (const auto& row : a) {
    std::vector<Rational> r(row);
    r.resize(2 * columns);
    lp.constraints.push_back(std::move(r));
    lp.rhs.push_back(0);
  }
  for (std::size_t k = 0; k < columns; ++k) {
    std::vector<Rational> r(2 * columns);
    r[k] = 1;
    r[columns + k] = 1;
    lp.constraints.push_back(std::move(r));
    lp.rhs.push_back(1);
  }
  lp.objective.assign(2 * columns, Rational(0));
  for (std::size_t k = 0; k < columns; ++k) lp.objective[k] = -1;
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) throw Error(ErrorCode::precondition_failed, "bounded LP reported no optimum");
  if (sol.value == 0) {
    out.certificate = farkas_certificate(a, columns);
    if (!out.certificate) throw Error(ErrorCode::precondition_failed, "no certificate for an infeasible system");
    return out;
  }
  const Rational total = -sol.value;
  out.feasible = true;
  out.solution.resize(columns);
  for (std::size_t k = 0; k < columns; ++k) out.solution[k] = sol.x[k] / total;
  return out;
}

FeasibilityOutcome solve_nonzero_nonnegative(const EquationSystem& system) {
  return solve_nonzero_nonnegative(to_matrix(system), system.variable_count());
}

std::optional<InfeasibilityCertificate> farkas_certificate(const RationalMatrix& a, std::size_t columns) {
  check_shape(a, columns);
  const std::size_t rows = a.size();
  // Column k: sum_r A[r][k] (y+_r - y-_r) - t_k = 1.
  LinearProgram lp;
  for (std::size_t k = 0; k < columns; ++k) {
    std::vector<Rational> r(2 * rows + columns);
    for (std::size_t i = 0; i < rows; ++i) {
      r[i] = a[i][k];
      r[rows + i] = -a[i][k];
    }
    r[2 * rows + k] = -1;
    lp.constraints.push_back(std::move(r));
    lp.rhs.push_back(1);
  }
  lp.objective.assign(2 * rows + columns, Rational(0));
  for (std::size_t i = 0; i < 2 * rows; ++i) lp.objective[i] = 1;
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  InfeasibilityCertificate cert;
  cert.multipliers.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) cert.multipliers[i] = sol.x[i] - sol.x[rows + i];
  cert.combination = combine(a, columns, cert.multipliers);
  return cert;
}

std::optional<InfeasibilityCertificate> farkas_certificate(const EquationSystem& system) {
  return farkas_certificate(to_matrix(system), system.variable_count());
}

bool verify_solution(const RationalMatrix& a, const std::vector<Rational>& f) {
  Rational total = 0;
  for (const auto& v : f) {
    if (v < 0) return false;
    total += v;
  }
  if (total != 1) return false;
  for (const auto& row : a) {
    if (row.size() != f.size()) return false;
    Rational s = 0;
    for (std::size_t k = 0; k < f.size(); ++k) s += row[k] * f[k];
    if (s != 0) return false;
  }
  return true;
}

bool verify_certificate(const RationalMatrix& a, std::size_t columns, const InfeasibilityCertificate& certificate) {
  if (certificate.multipliers.size() != a.size()) return false;
  const auto combo = combine(a, columns, certificate.multipliers);
  if (combo != certificate.combination) return false;
  return std::all_of(combo.begin(), combo.end(), [](const Rational& v) { return v >= 1; });
}

RowReduction nonnegative_row_reduction(const RationalMatrix& a, std::size_t columns) {
  const auto outcome = solve_nonzero_nonnegative(a, columns);
  if (outcome.feasible) {
    throw Error(ErrorCode::precondition_failed, "system has a nonzero nonnegative solution; no positive row exists");
  }
  const auto& cert = *outcome.certificate;
  Integer lcm = 1;
  for (const auto& v : cert.combination) lcm = boost::integer::lcm(lcm, Integer(denominator(v)));
  Integer gcd = 0;
  for (const auto& v : cert.combination) gcd = boost::integer::gcd(gcd, Integer(numerator(v) * (lcm / denominator(v))));
  const Rational scale = Rational(lcm) / Rational(gcd);
  RowReduction out;
  for (const auto& v : cert.combination) out.row.push_back(numerator(Rational(v * scale)));
  for (const auto& v : cert.multipliers) out.multipliers.push_back(v * scale);
  return out;
}

RowReduction nonnegative_row_reduction(const EquationSystem& system) {
  return nonnegative_row_reduction(to_matrix(system), system.variable_count());
}

std::vector<Rational> push_forward(const std::vector<Configuration>& fine_variables,
                                   const std::vector<Rational>& fine_solution,
                                   const std::vector<std::size_t>& collapse,
                                   const std::vector<Configuration>& coarse_variables) {
  if (fine_variables.size() != fine_solution.size()) {
    throw Error(ErrorCode::shape_mismatch, "solution length differs from variable count");
  }
  std::map<Configuration, std::size_t> index;
  for (std::size_t k = 0; k < coarse_variables.size(); ++k) index.emplace(coarse_variables[k], k);
  std::vector<Rational> out(coarse_variables.size());
  for (std::size_t k = 0; k < fine_variables.size(); ++k) {
    Configuration image;
    for (auto f : fine_variables[k]) {
      if (f < 1 || f > collapse.size() || collapse[f - 1] == 0) {
        throw Error(ErrorCode::precondition_failed, "fine block " + std::to_string(f) + " has no coarse image");
      }
      image.push_back(collapse[f - 1]);
    }
    auto it = index.find(image);
    if (it == index.end()) {
      throw Error(ErrorCode::precondition_failed, format_configuration(image) + " missing from the coarse set");
    }
    out[it->second] += fine_solution[k];
  }
  return out;
}

}  // namespace configset
