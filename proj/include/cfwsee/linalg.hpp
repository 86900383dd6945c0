//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cfwsee {

// In-place Cholesky factorization of a symmetric positive-definite matrix
// (row-major, n x n). Returns false when a pivot is not strictly positive.
inline bool cholesky_factor(std::span<double> a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = a[static_cast<std::size_t>(j) * n + k];
      d -= l * l;
    }
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    a[static_cast<std::size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k) {
        s -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
      }
      a[static_cast<std::size_t>(i) * n + j] = s / ljj;
    }
  }
  return true;
}

// Solves L L^T x = b in place given the factor from cholesky_factor.
inline void cholesky_solve(std::span<const double> l, std::span<double> b, int n) {
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[static_cast<std::size_t>(i) * n + k] * b[k];
    b[i] = s / l[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= l[static_cast<std::size_t>(k) * n + i] * b[k];
    b[i] = s / l[static_cast<std::size_t>(i) * n + i];
  }
}

// Factor + solve convenience; clobbers both arguments. Returns false when the
// matrix is not positive definite.
inline bool solve_spd(std::vector<double>& a, std::span<double> b, int n) {
  if (!cholesky_factor(a, n)) return false;
  cholesky_solve(a, b, n);
  return true;
}

}  // namespace cfwsee
