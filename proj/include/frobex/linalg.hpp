#pragma once

#include <vector>

#include "frobex/cyclo.hpp"
#include "frobex/errors.hpp"

namespace frobex {

struct LinearSystemInfo {
  int rank = 0;
  int nullity = 0;
  bool consistent = true;
  std::vector<Cyclo> particular;  // one solution (free variables 0) when consistent
};

/// Gauss-Jordan elimination of M x = rhs over the cyclotomic field closure.
inline LinearSystemInfo solve_exact(std::vector<std::vector<Cyclo>> M, std::vector<Cyclo> rhs) {
  const size_t rows = M.size();
  if (rhs.size() != rows) throw InputError("solve_exact: shape mismatch");
  const size_t cols = rows == 0 ? 0 : M[0].size();
  for (const auto& row : M) {
    if (row.size() != cols) throw InputError("solve_exact: ragged matrix");
  }
  LinearSystemInfo info;
  std::vector<int> pivot_row_of_col(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && M[p][c] == Cyclo(0)) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    std::swap(rhs[p], rhs[r]);
    const Cyclo inv = M[r][c].inv();
    for (size_t j = c; j < cols; ++j) M[r][j] = inv * M[r][j];
    rhs[r] = inv * rhs[r];
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == Cyclo(0)) continue;
      const Cyclo f = M[i][c];
      for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_row_of_col[c] = static_cast<int>(r);
    ++r;
  }
  info.rank = static_cast<int>(r);
  info.nullity = static_cast<int>(cols) - info.rank;
  for (size_t i = r; i < rows; ++i) {
    if (rhs[i] != Cyclo(0)) {
      info.consistent = false;
      break;
    }
  }
  if (info.consistent) {
    info.particular.assign(cols, Cyclo(0));
    for (size_t c = 0; c < cols; ++c) {
      if (pivot_row_of_col[c] >= 0) info.particular[c] = rhs[pivot_row_of_col[c]];
    }
  }
  return info;
}

}  // namespace frobex
