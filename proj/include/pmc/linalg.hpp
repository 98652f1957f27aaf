#ifndef PMC_LINALG_HPP
#define PMC_LINALG_HPP

#include <optional>
#include <vector>

#include "pmc/error.hpp"
#include "pmc/rational.hpp"

namespace pmc {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline Rational det_rational(RationalMatrix m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw Error("determinant of non-square matrix");
  Rational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = Rational(1) / m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] * inv;
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

// Solves the (possibly overdetermined) system a x = b exactly. Requires full
// column rank; returns nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve_exact(RationalMatrix a,
                                                        std::vector<Rational> b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  if (b.size() != rows) throw Error("solve dimension mismatch");

  size_t rank = 0;
  std::vector<size_t> pivot_row(cols);
  for (size_t col = 0; col < cols; ++col) {
    size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) throw Error("solve: columns are dependent");
    std::swap(a[pivot], a[rank]);
    std::swap(b[pivot], b[rank]);
    Rational inv = Rational(1) / a[rank][col];
    for (size_t c = col; c < cols; ++c) a[rank][c] *= inv;
    b[rank] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
      b[r] -= f * b[rank];
    }
    pivot_row[col] = rank;
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (b[r] != 0) return std::nullopt;

  std::vector<Rational> x(cols);
  for (size_t col = 0; col < cols; ++col) x[col] = b[pivot_row[col]];
  return x;
}

inline RationalMatrix invert_matrix(RationalMatrix m) {
  const size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error("matrix not invertible");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational d = Rational(1) / m[col][col];
    for (size_t c = 0; c < n; ++c) {
      m[col][c] *= d;
      inv[col][c] *= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (size_t c = 0; c < n; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace pmc

#endif
