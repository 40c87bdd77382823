#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "egelab/scaled_complex.hpp"

namespace egelab {

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), data_(n * n) {}
  CMatrix(std::size_t n, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> diag);

  [[nodiscard]] std::size_t order() const { return n_; }
  [[nodiscard]] bool empty() const { return n_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  [[nodiscard]] cplx* row(std::size_t i) { return data_.data() + i * n_; }
  [[nodiscard]] const cplx* row(std::size_t i) const { return data_.data() + i * n_; }
  [[nodiscard]] std::span<const cplx> entries() const { return data_; }
  [[nodiscard]] std::span<cplx> entries() { return data_; }

  [[nodiscard]] cplx trace() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] CMatrix adjoint() const;
  [[nodiscard]] bool all_finite() const;

  CMatrix& operator*=(cplx s);
  CMatrix& operator+=(const CMatrix& other);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

/// Partial-pivoted factorization P*A = L*U with L unit lower, packed into `combined`.
/// Row i of P*A is row pivots[i] of A.
struct LUFactors {
  CMatrix combined;
  std::vector<std::size_t> pivots;
  std::size_t swaps = 0;
  bool singular = false;
};

/// Eigenvalues as an unordered multiset.
struct Spectrum {
  std::vector<cplx> eigenvalues;
  bool converged = false;
};

/// Pivot modulus below which the determinant is reported as exactly 0.
inline constexpr double kSingularPivot = 1e-300;
inline constexpr double kDefaultEigenTol = 1e-12;

[[nodiscard]] CMatrix mat_mul(const CMatrix& a, const CMatrix& b);

[[nodiscard]] LUFactors lu_factor(const CMatrix& a);

/// Determinant from a factorization, exact 0 when singular.
[[nodiscard]] ScaledComplex log_det(const LUFactors& lu);

/// (Tr A^1, ..., Tr A^kmax). Only powers up to ceil(kmax/2) are formed explicitly; higher traces
/// come from Tr(A^p A^q) as an O(n^2) contraction.
[[nodiscard]] std::vector<cplx> trace_powers(const CMatrix& a, int kmax);

/// Unitary (Householder) reduction to upper Hessenberg form; same spectrum as `a`.
[[nodiscard]] CMatrix hessenberg(const CMatrix& a);

/// Hessenberg reduction followed by single-shift complex QR with Wilkinson shifts and deflation.
/// max_sweeps counts QR steps over the whole run; a negative value selects 60*n.
[[nodiscard]] Spectrum eigenvalues(const CMatrix& a, double tol = kDefaultEigenTol, long max_sweeps = -1);

}  // namespace egelab
