#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms, lattice
// membership with explicit coefficients, and canonical coset representatives.

#include "nilpal/integer.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nilpal::lattice {

/// Row-style Hermite normal form: transform * input == form, transform unimodular.
/// Nonzero rows of `form` come first; pivots are positive and strictly
/// increasing in column, entries above a pivot are reduced into [0, pivot).
struct Hermite {
  IntMatrix form;
  IntMatrix transform;
  std::vector<int> pivot_columns;  // one per nonzero row

  int rank() const { return static_cast<int>(pivot_columns.size()); }
};

inline Hermite hermite(const IntMatrix& rows, std::size_t columns) {
  Hermite h;
  h.form = rows;
  std::size_t r = rows.size();
  for (const auto& row : rows)
    if (row.size() != columns) throw std::invalid_argument("ragged generator matrix");
  h.transform = identity_matrix(r);
  auto& H = h.form;
  auto& U = h.transform;
  auto axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < columns; ++j) H[dst][j] -= q * H[src][j];
    for (std::size_t j = 0; j < r; ++j) U[dst][j] -= q * U[src][j];
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < r; ++col) {
    for (;;) {
      std::size_t best = r;
      for (std::size_t i = row; i < r; ++i)
        if (H[i][col] != 0 && (best == r || abs(H[i][col]) < abs(H[best][col]))) best = i;
      if (best == r) break;
      std::swap(H[row], H[best]);
      std::swap(U[row], U[best]);
      bool clean = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (H[i][col] == 0) continue;
        axpy(i, row, floor_div(H[i][col], H[row][col]));
        if (H[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (H[row][col] == 0) continue;
    if (H[row][col] < 0) {
      for (auto& x : H[row]) x = -x;
      for (auto& x : U[row]) x = -x;
    }
    for (std::size_t i = 0; i < row; ++i) axpy(i, row, floor_div(H[i][col], H[row][col]));
    h.pivot_columns.push_back(static_cast<int>(col));
    ++row;
  }
  return h;
}

/// Integer coefficients x with sum_j x_j * generators[j] == target, if any.
inline std::optional<IntVector> solve(const IntMatrix& generators, const IntVector& target) {
  std::size_t c = target.size();
  if (generators.empty()) {
    if (is_zero(target)) return IntVector{};
    return std::nullopt;
  }
  Hermite h = hermite(generators, c);
  IntVector rest = target;
  IntVector y(generators.size(), 0);
  for (int l = 0; l < h.rank(); ++l) {
    int p = h.pivot_columns[l];
    const Integer& piv = h.form[l][p];
    if (rest[p] % piv != 0) return std::nullopt;
    y[l] = rest[p] / piv;
    for (std::size_t j = 0; j < c; ++j) rest[j] -= y[l] * h.form[l][j];
  }
  if (!is_zero(rest)) return std::nullopt;
  IntVector x(generators.size(), 0);
  for (int l = 0; l < h.rank(); ++l)
    if (y[l] != 0)
      for (std::size_t j = 0; j < generators.size(); ++j) x[j] += y[l] * h.transform[l][j];
  return x;
}

/// Canonical representative of target modulo the lattice spanned by the
/// rows of a Hermite form (pivot coordinates reduced into [0, pivot)).
inline IntVector reduce(const Hermite& h, IntVector target) {
  for (int l = 0; l < h.rank(); ++l) {
    int p = h.pivot_columns[l];
    Integer q = floor_div(target[p], h.form[l][p]);
    if (q != 0)
      for (std::size_t j = 0; j < target.size(); ++j) target[j] -= q * h.form[l][j];
  }
  return target;
}

/// Nonzero Smith invariants d_1 | d_2 | ... of a matrix.
inline IntVector smith_invariants(IntMatrix A) {
  std::size_t r = A.size(), c = r ? A[0].size() : 0;
  IntVector d;
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    // move the smallest nonzero entry of the trailing block to (t, t)
    auto place_min = [&]() {
      std::size_t bi = r, bj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (A[i][j] != 0 && (bi == r || abs(A[i][j]) < abs(A[bi][bj]))) bi = i, bj = j;
      if (bi == r) return false;
      std::swap(A[t], A[bi]);
      for (auto& row : A) std::swap(row[t], row[bj]);
      return true;
    };
    if (!place_min()) break;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (A[i][t] == 0) continue;
        Integer q = A[i][t] / A[t][t];
        for (std::size_t j = t; j < c; ++j) A[i][j] -= q * A[t][j];
        if (A[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (A[t][j] == 0) continue;
        Integer q = A[t][j] / A[t][t];
        for (std::size_t i = t; i < r; ++i) A[i][j] -= q * A[i][t];
        if (A[t][j] != 0) dirty = true;
      }
      if (dirty) {
        // a smaller remainder sits in row or column t; restart with it as pivot
        place_min();
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (A[i][j] % A[t][t] != 0) {
            for (std::size_t jj = t; jj < c; ++jj) A[t][jj] += A[i][jj];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    d.push_back(abs(A[t][t]));
  }
  return d;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix A) {
  std::size_t n = A.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sgn = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && A[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(A[k], A[p]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sgn * A[n - 1][n - 1];
}

/// Inverse of a matrix in GL(n, Z); nullopt when the determinant is not +-1.
inline std::optional<IntMatrix> inverse(const IntMatrix& A) {
  std::size_t n = A.size();
  Hermite h = hermite(A, n);
  if (h.rank() != static_cast<int>(n)) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (h.form[i][j] != (i == j ? 1 : 0)) return std::nullopt;
  return h.transform;
}

}  // namespace nilpal::lattice
