#pragma once

#include <cstddef>
#include <vector>

#include "configset/configuration.hpp"

namespace configset {

/// Row (i, j) states  sum{f_C : C_0 = i} = sum{f_C : C_j = i},  stored as the
/// difference row with entries [C_0 = i] - [C_j = i].
struct RowLabel {
  std::size_t color = 0;     // i in 1..m
  std::size_t position = 0;  // j in 1..n
};

class EquationSystem {
 public:
  EquationSystem(std::vector<Configuration> variables, std::size_t block_count, std::size_t generator_count,
                 Mode mode);

  const std::vector<Configuration>& variables() const { return variables_; }
  std::size_t variable_count() const { return variables_.size(); }
  std::size_t block_count() const { return block_count_; }
  std::size_t generator_count() const { return generator_count_; }
  Mode mode() const { return mode_; }

  /// Rows ordered color-major: (1,1), (1,2), ..., (1,n), (2,1), ...
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  const std::vector<RowLabel>& labels() const { return labels_; }
  std::size_t row_count() const { return rows_.size(); }

  /// The stored difference row for (i, j); 1 <= i <= m, 1 <= j <= n.
  const std::vector<int>& coefficient_row(std::size_t color, std::size_t position) const;

  /// Indicator row L^j_i: entry 1 iff C_j = i; j = 0 refers to C_0.
  std::vector<int> indicator(std::size_t color, std::size_t position) const;

  bool all_zero() const;

 private:
  std::vector<Configuration> variables_;
  std::size_t block_count_;
  std::size_t generator_count_;
  Mode mode_;
  std::vector<std::vector<int>> rows_;
  std::vector<RowLabel> labels_;
};

/// Eq(g, E) for one-sided and two-sided sets, Eq_l(g, E) for semigroup sets.
/// Two-sided sets use the left positions 1..n only.
EquationSystem build_equations(const ConfigurationSet& set);

}  // namespace configset
