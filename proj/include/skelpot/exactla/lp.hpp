#pragma once

#include "skelpot/exactla/rational.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace skelpot {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
  RatVec coeffs;
  Relation rel;
  Rat rhs;
};

/// maximize objective . x subject to the constraints. Variables are free
/// unless flagged in `nonneg` (an empty vector means all free).
struct LinearProgram {
  std::size_t num_vars = 0;
  RatVec objective;
  std::vector<Constraint> constraints;
  std::vector<bool> nonneg;

  void add(RatVec coeffs, Relation rel, Rat rhs) {
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }

  bool is_nonneg(std::size_t j) const { return !nonneg.empty() && nonneg[j]; }

  void validate() const {
    if (objective.size() != num_vars)
      throw DimensionMismatch("objective has " + std::to_string(objective.size()) +
                              " entries for " + std::to_string(num_vars) + " variables");
    if (!nonneg.empty() && nonneg.size() != num_vars)
      throw DimensionMismatch("nonneg flags do not match variable count");
    for (std::size_t i = 0; i < constraints.size(); ++i)
      if (constraints[i].coeffs.size() != num_vars)
        throw DimensionMismatch("constraint " + std::to_string(i) +
                                " has wrong dimension");
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char *to_string(LpStatus s) {
  switch (s) {
  case LpStatus::Optimal:
    return "optimal";
  case LpStatus::Infeasible:
    return "infeasible";
  case LpStatus::Unbounded:
    return "unbounded";
  }
  return "?";
}

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::optional<RatVec> point;
  std::optional<Rat> value;
  /// Dual multipliers, one per constraint (only when optimal).
  RatVec duals;
  std::size_t pivots = 0;
};

namespace detail {

/// Dense tableau simplex over Q with Bland's rule. Rows are stored with the
/// right hand side in the last column.
class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(rows, RatVec(cols + 1)), basis_(rows), cols_(cols) {}

  Rat &at(std::size_t r, std::size_t c) { return t_[r][c]; }
  const Rat &at(std::size_t r, std::size_t c) const { return t_[r][c]; }
  Rat &rhs(std::size_t r) { return t_[r][cols_]; }
  const Rat &rhs(std::size_t r) const { return t_[r][cols_]; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t> &basis() { return basis_; }
  const std::vector<std::size_t> &basis() const { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / t_[r][c];
    for (auto &x : t_[r])
      x *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0)
        continue;
      Rat f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0)
          t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
    ++pivots;
  }

  void erase_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  Rat reduced_cost(const RatVec &cost, std::size_t j) const {
    Rat d = cost[j];
    for (std::size_t r = 0; r < t_.size(); ++r)
      if (cost[basis_[r]] != 0 && t_[r][j] != 0)
        d -= cost[basis_[r]] * t_[r][j];
    return d;
  }

  enum class Outcome { Optimal, Unbounded };

  /// Maximizes cost over the current basic feasible solution; columns with
  /// allowed[j] == false never enter.
  Outcome maximize(const RatVec &cost, const std::vector<bool> &allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allowed[j] || is_basic(j))
          continue;
        if (reduced_cost(cost, j) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_)
        return Outcome::Optimal;
      std::size_t leave = t_.size();
      Rat best;
      for (std::size_t r = 0; r < t_.size(); ++r) {
        if (t_[r][enter] <= 0)
          continue;
        Rat ratio = t_[r][cols_] / t_[r][enter];
        if (leave == t_.size() || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == t_.size())
        return Outcome::Unbounded;
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j)
        return true;
    return false;
  }

  std::size_t pivots = 0;

private:
  std::vector<RatVec> t_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

} // namespace detail

/// Exact two-phase primal simplex with Bland's anti-cycling rule.
inline LpResult lp_solve(const LinearProgram &lp) {
  lp.validate();
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.constraints.size();

  // Structural columns: one per nonneg variable, two (x+, x-) per free one.
  std::vector<std::size_t> pos_col(n), neg_col(n, std::numeric_limits<std::size_t>::max());
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = ncols++;
    if (!lp.is_nonneg(j))
      neg_col[j] = ncols++;
  }

  std::vector<int> row_sign(m, 1);
  std::vector<Relation> rel(m);
  for (std::size_t i = 0; i < m; ++i) {
    rel[i] = lp.constraints[i].rel;
    if (lp.constraints[i].rhs < 0) {
      row_sign[i] = -1;
      if (rel[i] == Relation::LessEq)
        rel[i] = Relation::GreaterEq;
      else if (rel[i] == Relation::GreaterEq)
        rel[i] = Relation::LessEq;
    }
  }
  // Slack / surplus columns, then artificial columns.
  std::vector<std::size_t> slack_col(m, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != Relation::Equal)
      slack_col[i] = ncols++;
  const std::size_t first_artificial = ncols;
  std::vector<std::size_t> unit_col(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rel[i] == Relation::LessEq)
      unit_col[i] = slack_col[i];
    else
      unit_col[i] = ncols++;
  }

  detail::Tableau tab(m, ncols);
  for (std::size_t i = 0; i < m; ++i) {
    const auto &c = lp.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (c.coeffs[j] == 0)
        continue;
      Rat a = row_sign[i] * c.coeffs[j];
      tab.at(i, pos_col[j]) = a;
      if (neg_col[j] != std::numeric_limits<std::size_t>::max())
        tab.at(i, neg_col[j]) = -a;
    }
    if (rel[i] == Relation::LessEq)
      tab.at(i, slack_col[i]) = 1;
    else if (rel[i] == Relation::GreaterEq)
      tab.at(i, slack_col[i]) = -1;
    if (rel[i] != Relation::LessEq)
      tab.at(i, unit_col[i]) = 1;
    tab.rhs(i) = row_sign[i] * c.rhs;
    tab.basis()[i] = unit_col[i];
  }

  LpResult result;
  std::vector<bool> allowed(ncols, true);

  // Phase 1: maximize -sum(artificials).
  if (first_artificial < ncols) {
    RatVec cost1(ncols);
    for (std::size_t j = first_artificial; j < ncols; ++j)
      cost1[j] = -1;
    tab.maximize(cost1, allowed);
    Rat infeas = 0;
    for (std::size_t r = 0; r < tab.rows(); ++r)
      if (tab.basis()[r] >= first_artificial)
        infeas += tab.rhs(r);
    if (infeas != 0) {
      result.status = LpStatus::Infeasible;
      result.pivots = tab.pivots;
      return result;
    }
  }
  // Drive remaining artificial basics (at level zero) out of the basis.
  std::vector<std::size_t> row_of_constraint(m);
  for (std::size_t i = 0; i < m; ++i)
    row_of_constraint[i] = i;
  std::vector<bool> dropped(m, false);
  for (std::size_t r = 0; r < tab.rows();) {
    if (tab.basis()[r] < first_artificial) {
      ++r;
      continue;
    }
    std::size_t enter = first_artificial;
    for (std::size_t j = 0; j < first_artificial; ++j)
      if (tab.at(r, j) != 0 && !tab.is_basic(j)) {
        enter = j;
        break;
      }
    if (enter < first_artificial) {
      tab.pivot(r, enter);
      ++r;
    } else {
      // Redundant equality: remove the row; its multiplier is zero.
      for (std::size_t i = 0; i < m; ++i) {
        if (dropped[i])
          continue;
        if (row_of_constraint[i] == r)
          dropped[i] = true;
        else if (row_of_constraint[i] > r)
          --row_of_constraint[i];
      }
      tab.erase_row(r);
    }
  }
  for (std::size_t j = first_artificial; j < ncols; ++j)
    allowed[j] = false;

  // Phase 2.
  RatVec cost(ncols);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] != std::numeric_limits<std::size_t>::max())
      cost[neg_col[j]] = -lp.objective[j];
  }
  auto outcome = tab.maximize(cost, allowed);
  result.pivots = tab.pivots;
  if (outcome == detail::Tableau::Outcome::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  RatVec xs(ncols);
  for (std::size_t r = 0; r < tab.rows(); ++r)
    xs[tab.basis()[r]] = tab.rhs(r);
  RatVec x(n);
  Rat value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = xs[pos_col[j]];
    if (neg_col[j] != std::numeric_limits<std::size_t>::max())
      x[j] -= xs[neg_col[j]];
    value += lp.objective[j] * x[j];
  }
  // Simplex multipliers c_B B^-1, read off the columns that started as e_i.
  result.duals.assign(m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (dropped[i])
      continue;
    Rat pi = 0;
    for (std::size_t r = 0; r < tab.rows(); ++r)
      pi += cost[tab.basis()[r]] * tab.at(r, unit_col[i]);
    result.duals[i] = row_sign[i] * pi;
  }
  result.status = LpStatus::Optimal;
  result.point = std::move(x);
  result.value = std::move(value);
  return result;
}

/// Checks primal feasibility, dual feasibility and equal objective values
/// for an optimal result, all in exact arithmetic.
inline bool verify_optimality_certificate(const LinearProgram &lp, const LpResult &res) {
  if (res.status != LpStatus::Optimal || !res.point || !res.value)
    return false;
  const RatVec &x = *res.point;
  const RatVec &y = res.duals;
  if (x.size() != lp.num_vars || y.size() != lp.constraints.size())
    return false;
  Rat primal = 0;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.is_nonneg(j) && x[j] < 0)
      return false;
    primal += lp.objective[j] * x[j];
  }
  if (primal != *res.value)
    return false;
  Rat dual = 0;
  RatVec aty(lp.num_vars);
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto &c = lp.constraints[i];
    Rat lhs = 0;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      lhs += c.coeffs[j] * x[j];
      aty[j] += c.coeffs[j] * y[i];
    }
    switch (c.rel) {
    case Relation::LessEq:
      if (lhs > c.rhs || y[i] < 0)
        return false;
      break;
    case Relation::GreaterEq:
      if (lhs < c.rhs || y[i] > 0)
        return false;
      break;
    case Relation::Equal:
      if (lhs != c.rhs)
        return false;
      break;
    }
    dual += c.rhs * y[i];
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.is_nonneg(j) ? aty[j] < lp.objective[j] : aty[j] != lp.objective[j])
      return false;
  }
  return dual == primal;
}

} // namespace skelpot
