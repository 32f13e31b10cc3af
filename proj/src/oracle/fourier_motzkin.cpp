#include "fourier_motzkin.hpp"

#include <set>
#include <vector>

#include "configset/error.hpp"

namespace configset::oracle {

namespace {

// coeffs . z + constant >= 0
struct Inequality {
  std::vector<Rational> coeffs;
  Rational constant;

  bool operator<(const Inequality& other) const {
    if (coeffs != other.coeffs) return coeffs < other.coeffs;
    return constant < other.constant;
  }
};

constexpr std::size_t kMaxInequalities = 200'000;

// Scale so the largest absolute entry is 1; keeps the dedup set small.
Inequality normalized(Inequality in) {
  Rational scale = abs(in.constant);
  for (const auto& c : in.coeffs) scale = std::max(scale, Rational(abs(c)));
  if (scale == 0) return in;
  for (auto& c : in.coeffs) c /= scale;
  in.constant /= scale;
  return in;
}

}  // namespace

bool oracle_feasibility(const RationalMatrix& a, std::size_t columns, std::size_t max_variables) {
  if (columns > max_variables) {
    throw Error(ErrorCode::resource_limit, "oracle limited to " + std::to_string(max_variables) + " variables");
  }
  // Equalities A f = 0 and sum f = 1, as augmented rows [coeffs | rhs].
  std::vector<std::vector<Rational>> eq;
  for (const auto& row : a) {
    std::vector<Rational> r(row.begin(), row.end());
    r.push_back(0);
    eq.push_back(std::move(r));
  }
  eq.emplace_back(columns + 1, Rational(1));

  std::vector<int> pivot_of_column(columns, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < columns && rank < eq.size(); ++col) {
    std::size_t r = rank;
    while (r < eq.size() && eq[r][col] == 0) ++r;
    if (r == eq.size()) continue;
    std::swap(eq[r], eq[rank]);
    const Rational p = eq[rank][col];
    for (auto& v : eq[rank]) v /= p;
    for (std::size_t o = 0; o < eq.size(); ++o) {
      if (o == rank || eq[o][col] == 0) continue;
      const Rational f = eq[o][col];
      for (std::size_t k = 0; k <= columns; ++k) eq[o][k] -= f * eq[rank][k];
    }
    pivot_of_column[col] = static_cast<int>(rank);
    ++rank;
  }
  for (std::size_t r = rank; r < eq.size(); ++r) {
    if (eq[r][columns] != 0) return false;
  }

  std::vector<std::size_t> free_columns;
  for (std::size_t col = 0; col < columns; ++col)
    if (pivot_of_column[col] < 0) free_columns.push_back(col);
  const std::size_t z = free_columns.size();

  std::set<Inequality> system;
  for (std::size_t col = 0; col < columns; ++col) {
    Inequality in{std::vector<Rational>(z), 0};
    if (pivot_of_column[col] < 0) {
      for (std::size_t k = 0; k < z; ++k)
        if (free_columns[k] == col) in.coeffs[k] = 1;
    } else {
      const auto& row = eq[pivot_of_column[col]];
      in.constant = row[columns];
      for (std::size_t k = 0; k < z; ++k) in.coeffs[k] = -row[free_columns[k]];
    }
    system.insert(normalized(std::move(in)));
  }

  for (std::size_t k = 0; k < z; ++k) {
    std::vector<Inequality> pos, neg;
    std::set<Inequality> next;
    for (const auto& in : system) {
      if (in.coeffs[k] > 0) {
        pos.push_back(in);
      } else if (in.coeffs[k] < 0) {
        neg.push_back(in);
      } else {
        next.insert(in);
      }
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        const Rational wp = -n.coeffs[k];
        const Rational wn = p.coeffs[k];
        Inequality c{std::vector<Rational>(z), wp * p.constant + wn * n.constant};
        for (std::size_t v = 0; v < z; ++v) c.coeffs[v] = wp * p.coeffs[v] + wn * n.coeffs[v];
        c.coeffs[k] = 0;
        next.insert(normalized(std::move(c)));
        if (next.size() > kMaxInequalities) {
          throw Error(ErrorCode::resource_limit, "elimination produced too many inequalities");
        }
      }
    }
    system = std::move(next);
  }
  for (const auto& in : system) {
    if (in.constant < 0) return false;
  }
  return true;
}

}  // namespace configset::oracle
