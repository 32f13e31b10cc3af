#include "configset/equations.hpp"

#include <algorithm>

#include "configset/error.hpp"

namespace configset {

EquationSystem::EquationSystem(std::vector<Configuration> variables, std::size_t block_count,
                               std::size_t generator_count, Mode mode)
    : variables_(std::move(variables)),
      block_count_(block_count),
      generator_count_(generator_count),
      mode_(mode) {
  if (variables_.empty()) throw Error(ErrorCode::precondition_failed, "configuration set is empty");
  if (!std::is_sorted(variables_.begin(), variables_.end())) {
    std::sort(variables_.begin(), variables_.end());
  }
  const std::size_t width = mode_ == Mode::two_sided ? 2 * generator_count_ + 1 : generator_count_ + 1;
  for (const auto& c : variables_) {
    if (c.size() != width) throw Error(ErrorCode::shape_mismatch, "configuration has the wrong length");
  }
  for (std::size_t i = 1; i <= block_count_; ++i) {
    for (std::size_t j = 1; j <= generator_count_; ++j) {
      std::vector<int> row(variables_.size(), 0);
      for (std::size_t v = 0; v < variables_.size(); ++v) {
        row[v] = (variables_[v][0] == i ? 1 : 0) - (variables_[v][j] == i ? 1 : 0);
      }
      rows_.push_back(std::move(row));
      labels_.push_back({i, j});
    }
  }
}

const std::vector<int>& EquationSystem::coefficient_row(std::size_t color, std::size_t position) const {
  if (color < 1 || color > block_count_ || position < 1 || position > generator_count_) {
    throw Error(ErrorCode::index_out_of_range, "row (" + std::to_string(color) + "," + std::to_string(position) +
                                                   ") out of range");
  }
  return rows_[(color - 1) * generator_count_ + (position - 1)];
}

std::vector<int> EquationSystem::indicator(std::size_t color, std::size_t position) const {
  if (color < 1 || color > block_count_ || position > generator_count_) {
    throw Error(ErrorCode::index_out_of_range, "indicator (" + std::to_string(color) + "," +
                                                   std::to_string(position) + ") out of range");
  }
  std::vector<int> out(variables_.size(), 0);
  for (std::size_t v = 0; v < variables_.size(); ++v) out[v] = variables_[v][position] == color ? 1 : 0;
  return out;
}

bool EquationSystem::all_zero() const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](const auto& row) { return std::all_of(row.begin(), row.end(), [](int v) { return v == 0; }); });
}

EquationSystem build_equations(const ConfigurationSet& set) {
  return EquationSystem(set.configurations, set.block_count, set.generator_count, set.mode);
}

}  // namespace configset
