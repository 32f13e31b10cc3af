#include "configset/simplex.hpp"

#include <optional>

#include "configset/error.hpp"

namespace configset {

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp) : rows_(lp.constraints.size()), vars_(lp.objective.size()) {
    if (lp.rhs.size() != rows_) throw Error(ErrorCode::shape_mismatch, "rhs length differs from row count");
    width_ = vars_ + rows_ + 1;
    cells_.assign(rows_, std::vector<Rational>(width_));
    signs_.assign(rows_, 1);
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (lp.constraints[r].size() != vars_) throw Error(ErrorCode::shape_mismatch, "ragged constraint matrix");
      signs_[r] = lp.rhs[r] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < vars_; ++j) cells_[r][j] = lp.constraints[r][j] * signs_[r];
      cells_[r][vars_ + r] = 1;
      cells_[r][rhs_col()] = lp.rhs[r] * signs_[r];
      basis_[r] = vars_ + r;
    }
  }

  /// Phase 1: minimize the sum of artificials. Returns the Farkas vector when infeasible.
  std::optional<std::vector<Rational>> phase_one() {
    objective_.assign(width_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) objective_[vars_ + r] = 1;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < width_; ++j) objective_[j] -= cells_[r][j];
    run(vars_ + rows_);
    if (-objective_[rhs_col()] > 0) {
      std::vector<Rational> y(rows_);
      for (std::size_t r = 0; r < rows_; ++r) y[r] = (Rational(1) - objective_[vars_ + r]) * signs_[r];
      return y;
    }
    drive_out_artificials();
    return std::nullopt;
  }

  /// Phase 2 on the original objective; false when unbounded.
  bool phase_two(const std::vector<Rational>& cost) {
    objective_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < vars_; ++j) objective_[j] = cost[j];
    for (std::size_t r = 0; r < cells_.size(); ++r) {
      const Rational cb = basis_[r] < vars_ ? cost[basis_[r]] : Rational(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) objective_[j] -= cb * cells_[r][j];
    }
    return run(vars_);
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(vars_);
    for (std::size_t r = 0; r < cells_.size(); ++r)
      if (basis_[r] < vars_) x[basis_[r]] = cells_[r][rhs_col()];
    return x;
  }

 private:
  std::size_t rhs_col() const { return width_ - 1; }

  /// Bland's rule over columns [0, allowed). Returns false on unboundedness.
  bool run(std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (objective_[j] < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t r = 0; r < cells_.size(); ++r) {
        const Rational& a = cells_[r][*entering];
        if (a <= 0) continue;
        Rational ratio = cells_[r][rhs_col()] / a;
        if (!leaving || ratio < best || (ratio == best && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = cells_[row][col];
    for (auto& v : cells_[row]) v /= p;
    for (std::size_t r = 0; r < cells_.size(); ++r) {
      if (r == row || cells_[r][col] == 0) continue;
      const Rational f = cells_[r][col];
      for (std::size_t j = 0; j < width_; ++j) cells_[r][j] -= f * cells_[row][j];
    }
    if (objective_[col] != 0) {
      const Rational f = objective_[col];
      for (std::size_t j = 0; j < width_; ++j) objective_[j] -= f * cells_[row][j];
    }
    basis_[row] = col;
  }

  /// Artificials still basic sit at level zero; pivot them out or drop redundant rows.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < cells_.size();) {
      if (basis_[r] < vars_) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < vars_; ++j) {
        if (cells_[r][j] != 0) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(r, *col);
        ++r;
      } else {
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  std::size_t rows_;
  std::size_t vars_;
  std::size_t width_ = 0;
  std::vector<std::vector<Rational>> cells_;
  std::vector<int> signs_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> objective_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& program) {
  Tableau tableau(program);
  LpSolution out;
  if (auto farkas = tableau.phase_one()) {
    out.status = LpStatus::infeasible;
    out.farkas = std::move(*farkas);
    return out;
  }
  if (!tableau.phase_two(program.objective)) {
    out.status = LpStatus::unbounded;
    return out;
  }
  out.status = LpStatus::optimal;
  out.x = tableau.primal();
  out.value = 0;
  for (std::size_t j = 0; j < out.x.size(); ++j) out.value += program.objective[j] * out.x[j];
  return out;
}

}  // namespace configset
