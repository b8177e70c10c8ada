#pragma once

#include "skelpot/exactla/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace skelpot {

/// Row-major dense matrix over Q.
using RatMatrix = std::vector<RatVec>;

struct RowEchelon {
  RatMatrix rows;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
inline RowEchelon reduce(RatMatrix m, std::size_t cols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0)
      ++piv;
    if (piv == m.size())
      continue;
    std::swap(m[piv], m[r]);
    Rat inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j)
      m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0)
        continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const RatMatrix &m) {
  if (m.empty())
    return 0;
  return reduce(m, m.front().size()).rank();
}

/// Rank of a family of vectors (rows).
inline std::size_t rank_of(const std::vector<RatVec> &vs) { return rank(vs); }

struct LinearSolution {
  RatVec x;        // one solution (free variables set to zero)
  bool unique;     // true iff the solution set is a single point
};

/// Solves A x = b exactly. Returns nullopt when inconsistent.
inline std::optional<LinearSolution> solve(const RatMatrix &a, const RatVec &b) {
  if (a.size() != b.size())
    throw DimensionMismatch("solve: row count and rhs length differ");
  std::size_t n = a.empty() ? 0 : a.front().size();
  RatMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != n)
      throw DimensionMismatch("solve: ragged matrix");
    aug[i].push_back(b[i]);
  }
  RowEchelon e = reduce(std::move(aug), n + 1);
  for (std::size_t i = 0; i < e.rank(); ++i)
    if (e.pivots[i] == n)
      return std::nullopt;
  LinearSolution s{RatVec(n), e.rank() == n};
  for (std::size_t i = 0; i < e.rank(); ++i)
    s.x[e.pivots[i]] = e.rows[i][n];
  return s;
}

inline Rat determinant(RatMatrix m) {
  std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0)
      ++piv;
    if (piv == n)
      return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0)
        continue;
      Rat f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j)
        m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

inline RatMatrix transpose(const RatMatrix &m) {
  if (m.empty())
    return {};
  RatMatrix t(m.front().size(), RatVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      t[j][i] = m[i][j];
  return t;
}

/// Greatest common divisor of all maximal minors of an integer k x n matrix
/// (k <= n). Equals 1 iff the rows extend to a basis of Z^n.
inline Int gcd_of_maximal_minors(const RatMatrix &rows) {
  std::size_t k = rows.size();
  if (k == 0)
    return 1;
  std::size_t n = rows.front().size();
  Int g = 0;
  std::vector<std::size_t> pick(k);
  // enumerate k-subsets of columns
  auto rec = [&](auto &&self, std::size_t start, std::size_t depth) -> void {
    if (depth == k) {
      RatMatrix sq(k, RatVec(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          sq[i][j] = rows[i][pick[j]];
      Rat d = determinant(std::move(sq));
      Int di = d.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), di.get_mpz_t());
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      pick[depth] = c;
      self(self, c + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return g;
}

} // namespace skelpot
