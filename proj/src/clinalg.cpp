#include "egelab/clinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "egelab/errors.hpp"

namespace egelab {

namespace {

double abs1(cplx z) { return std::fabs(z.real()) + std::fabs(z.imag()); }

// y[0..len) += s * x[0..len), complex vectors viewed as interleaved doubles.
inline void axpy(std::size_t len, cplx s, const cplx* x, cplx* y) {
  const double sr = s.real();
  const double si = s.imag();
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t j = 0; j < len; ++j) {
    const double xr = xd[2 * j];
    const double xi = xd[2 * j + 1];
    yd[2 * j] += sr * xr - si * xi;
    yd[2 * j + 1] += sr * xi + si * xr;
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t n, std::vector<cplx> entries) : n_(n), data_(std::move(entries)) {
  if (data_.size() != n * n) {
    throw DimensionError("CMatrix: expected " + std::to_string(n * n) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw DimensionError("CMatrix: rows must form a square matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
  CMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

cplx CMatrix::trace() const {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (other.n_ != n_) throw DimensionError("CMatrix +=: order mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  if (a.order() != b.order()) {
    throw DimensionError("mat_mul: order mismatch " + std::to_string(a.order()) + " vs " +
                         std::to_string(b.order()));
  }
  const std::size_t n = a.order();
  // Planar (split real/imaginary) copies of B and of the C panel so the kernel is plain FMAs.
  std::vector<double> br(n * n), bi(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    br[k] = b.entries()[k].real();
    bi[k] = b.entries()[k].imag();
  }
  CMatrix c(n);
  constexpr std::size_t kRows = 4;
  std::vector<double> cr(kRows * n), ci(kRows * n);
  for (std::size_t i0 = 0; i0 < n; i0 += kRows) {
    const std::size_t rows = std::min(n, i0 + kRows) - i0;
    std::fill(cr.begin(), cr.end(), 0.0);
    std::fill(ci.begin(), ci.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double* brk = br.data() + k * n;
      const double* bik = bi.data() + k * n;
      for (std::size_t r = 0; r < rows; ++r) {
        const cplx aik = a(i0 + r, k);
        const double xr = aik.real();
        const double xi = aik.imag();
        double* __restrict crr = cr.data() + r * n;
        double* __restrict cir = ci.data() + r * n;
        for (std::size_t j = 0; j < n; ++j) {
          crr[j] += xr * brk[j] - xi * bik[j];
          cir[j] += xr * bik[j] + xi * brk[j];
        }
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      cplx* out = c.row(i0 + r);
      for (std::size_t j = 0; j < n; ++j) out[j] = {cr[r * n + j], ci[r * n + j]};
    }
  }
  return c;
}

LUFactors lu_factor(const CMatrix& a) {
  const std::size_t n = a.order();
  LUFactors lu{a, std::vector<std::size_t>(n), 0, false};
  CMatrix& m = lu.combined;
  for (std::size_t i = 0; i < n; ++i) lu.pivots[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(m(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best >= kSingularPivot)) {
      lu.singular = true;
      continue;
    }
    if (p != k) {
      std::swap_ranges(m.row(k), m.row(k) + n, m.row(p));
      std::swap(lu.pivots[k], lu.pivots[p]);
      ++lu.swaps;
    }
    const cplx inv_pivot = 1.0 / m(k, k);
    const cplx* rk = m.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx* ri = m.row(i);
      const cplx l = ri[k] * inv_pivot;
      ri[k] = l;
      if (l != cplx{0.0, 0.0}) axpy(n - k - 1, -l, rk + k + 1, ri + k + 1);
    }
  }
  return lu;
}

ScaledComplex log_det(const LUFactors& lu) {
  if (lu.singular) return {};
  ScaledComplex det(cplx{1.0, 0.0});
  const std::size_t n = lu.combined.order();
  for (std::size_t k = 0; k < n; ++k) det *= lu.combined(k, k);
  if (lu.swaps % 2 == 1) det *= cplx{-1.0, 0.0};
  return det;
}

std::vector<cplx> trace_powers(const CMatrix& a, int kmax) {
  if (kmax < 1) throw DomainError("trace_powers: kmax must be >= 1");
  const std::size_t n = a.order();
  const int half = (kmax + 1) / 2;
  std::vector<CMatrix> powers;
  powers.reserve(static_cast<std::size_t>(half));
  powers.push_back(a);
  for (int p = 2; p <= half; ++p) powers.push_back(mat_mul(powers.back(), a));

  std::vector<cplx> traces(static_cast<std::size_t>(kmax));
  for (int k = 1; k <= kmax; ++k) {
    if (k <= half) {
      traces[k - 1] = powers[k - 1].trace();
      continue;
    }
    const CMatrix& p = powers[half - 1];
    const CMatrix& q = powers[k - half - 1];
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += p(i, j) * q(j, i);
    traces[k - 1] = s;
  }
  return traces;
}

CMatrix hessenberg(const CMatrix& a) {
  const std::size_t n = a.order();
  CMatrix h = a;
  if (n < 3) return h;
  std::vector<cplx> v(n);
  std::vector<cplx> s(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(h(i, k));
    const double tail = norm2 - std::norm(h(k + 1, k));
    if (tail == 0.0) continue;
    const double norm = std::sqrt(norm2);
    const cplx x0 = h(k + 1, k);
    const cplx phase = x0 == cplx{0.0, 0.0} ? cplx{1.0, 0.0} : x0 / std::abs(x0);
    const cplx alpha = -phase * norm;

    // v = x - alpha*e1, normalized; reflector I - 2 v v*.
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    double vn = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vn;

    // Left: rows k+1.., columns k..
    std::fill(s.begin() + static_cast<long>(k), s.end(), cplx{0.0, 0.0});
    for (std::size_t i = k + 1; i < n; ++i) axpy(n - k, std::conj(v[i]), h.row(i) + k, s.data() + k);
    for (std::size_t i = k + 1; i < n; ++i) axpy(n - k, -2.0 * v[i], s.data() + k, h.row(i) + k);

    // Right: all rows, columns k+1..
    for (std::size_t i = 0; i < n; ++i) {
      cplx* hi = h.row(i);
      cplx dot{0.0, 0.0};
      for (std::size_t j = k + 1; j < n; ++j) dot += hi[j] * v[j];
      dot *= -2.0;
      for (std::size_t j = k + 1; j < n; ++j) hi[j] += dot * std::conj(v[j]);
    }

    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

namespace {

// Eigenvalue of [[a, b], [c, d]] closest to d.
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  const cplx p = 0.5 * (a - d);
  const cplx bc = b * c;
  if (bc == cplx{0.0, 0.0}) return d;
  const cplx disc = std::sqrt(p * p + bc);
  const cplx den = std::abs(p + disc) >= std::abs(p - disc) ? p + disc : p - disc;
  if (den == cplx{0.0, 0.0}) return d;
  return d - bc / den;
}

struct Rotation {
  double c;
  cplx s;
};

// G = [[c, s], [-conj(s), c]] with G * [x; y] = [r; 0].
Rotation make_rotation(cplx x, cplx y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) return {1.0, {0.0, 0.0}};
  if (ax == 0.0) return {0.0, {1.0, 0.0}};
  const double r = std::hypot(ax, ay);
  return {ax / r, (x / ax) * std::conj(y) / r};
}

}  // namespace

Spectrum eigenvalues(const CMatrix& a, double tol, long max_sweeps) {
  if (!(tol > 0.0)) throw DomainError("eigenvalues: tol must be positive");
  const std::size_t n = a.order();
  Spectrum out;
  out.eigenvalues.assign(n, cplx{0.0, 0.0});
  if (n == 0) {
    out.converged = true;
    return out;
  }
  if (max_sweeps < 0) max_sweeps = 60 * static_cast<long>(n);

  CMatrix h = hessenberg(a);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j) scale = std::max(scale, abs1(h(i, j)));

  long sweeps = 0;
  int since_deflation = 0;
  std::vector<Rotation> rot(n);
  std::size_t hi = n - 1;
  bool done = false;
  while (!done) {
    if (hi == 0) {
      out.eigenvalues[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      double s = abs1(h(lo - 1, lo - 1)) + abs1(h(lo, lo));
      if (s == 0.0) s = scale;
      if (abs1(h(lo, lo - 1)) <= tol * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out.eigenvalues[hi] = h(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (sweeps >= max_sweeps) {
      // Partial result: the unreduced block keeps its diagonal as a rough estimate.
      for (std::size_t i = 0; i <= hi; ++i) out.eigenvalues[i] = h(i, i);
      return out;
    }
    ++sweeps;
    ++since_deflation;

    cplx mu;
    if (since_deflation % 11 == 10) {
      // Exceptional shift to break cycles.
      mu = h(hi, hi) + 0.75 * abs1(h(hi, hi - 1)) + (hi >= 2 ? abs1(h(hi - 1, hi - 2)) : 0.0);
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    for (std::size_t k = lo; k < hi; ++k) {
      const Rotation g = make_rotation(h(k, k), h(k + 1, k));
      rot[k] = g;
      cplx* rk = h.row(k);
      cplx* rk1 = h.row(k + 1);
      for (std::size_t j = k; j <= hi; ++j) {
        const cplx x = rk[j];
        const cplx y = rk1[j];
        rk[j] = g.c * x + g.s * y;
        rk1[j] = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Rotation g = rot[k];
      const cplx sc = std::conj(g.s);
      const std::size_t last = std::min(k + 1, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const cplx x = h(i, k);
        const cplx y = h(i, k + 1);
        h(i, k) = x * g.c + y * sc;
        h(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  out.converged = true;
  return out;
}

}  // namespace egelab
