#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "egelab/clinalg.hpp"

namespace oracle {

using egelab::CMatrix;
using egelab::cplx;

inline CMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {u(gen), u(gen)};
  return m;
}

inline CMatrix random_real_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {u(gen), 0.0};
  return m;
}

inline CMatrix naive_mul(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.order();
  CMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Laplace expansion along the first row.
inline cplx cofactor_det(const CMatrix& a) {
  const std::size_t n = a.order();
  if (n == 1) return a(0, 0);
  cplx det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    CMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t c2 = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, c2++) = a(i, j);
      }
    }
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    det += sign * a(0, col) * cofactor_det(minor);
  }
  return det;
}

// Random unitary from Gram-Schmidt on a random complex matrix.
inline CMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  CMatrix q = random_matrix(n, seed);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, p)) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, p);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

inline double rel_err(cplx got, cplx want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

// Greedy nearest pairing; returns the largest matched distance.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0.0;
  for (const cplx& x : a) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < b.size(); ++j)
      if (std::abs(b[j] - x) < std::abs(b[best] - x)) best = j;
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

// Polynomial in z with complex coefficients, index = degree.
using CPoly = std::vector<cplx>;

inline CPoly poly_mul(const CPoly& a, const CPoly& b) {
  CPoly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline CPoly poly_add(const CPoly& a, const CPoly& b) {
  CPoly c(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

// Determinant of a matrix with polynomial entries, Laplace expansion.
inline CPoly poly_det(const std::vector<std::vector<CPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  CPoly det{0.0};
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<CPoly>> minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) minor[i - 1].push_back(m[i][j]);
    CPoly term = poly_mul(m[0][col], poly_det(minor));
    if (col % 2 == 1)
      for (cplx& c : term) c = -c;
    det = poly_add(det, term);
  }
  return det;
}

}  // namespace oracle
