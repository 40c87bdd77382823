#include "egelab/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "egelab/charpoly.hpp"
#include "egelab/errors.hpp"

namespace egelab {

HermiteSeq hermite_scaled(int k, cplx w) {
  if (k < 0) throw DomainError("hermite_scaled: k must be >= 0");
  HermiteSeq seq{{}, w};
  seq.values.reserve(static_cast<std::size_t>(k) + 1);
  seq.values.emplace_back(cplx{1.0, 0.0});
  if (k == 0) return seq;
  seq.values.emplace_back(w);
  for (int m = 1; m < k; ++m) {
    ScaledComplex next = seq.values[m] * w;
    next -= seq.values[m - 1] * cplx{static_cast<double>(m), 0.0};
    seq.values.push_back(next);
  }
  return seq;
}

double log_sum_exp(const std::vector<double>& xs) {
  const double ninf = -std::numeric_limits<double>::infinity();
  if (xs.empty()) return ninf;
  const double top = *std::max_element(xs.begin(), xs.end());
  if (top == ninf) return ninf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - top);
  return top + std::log(s);
}

namespace {

void check_disk_point(const char* who, double t, cplx z) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError(std::string(who) + ": t must lie in [0, 1]");
  const double r = std::abs(z);
  if (r == 0.0) throw DomainError(std::string(who) + ": z = 0 is excluded (E|f(0)|^2 = 1)");
  if (!(r < 1.0)) throw DomainError(std::string(who) + ": need |z| < 1");
}

}  // namespace

double exact_second_moment(int n, double t, cplx z) {
  if (n < 1) throw DomainError("exact_second_moment: n must be >= 1");
  check_disk_point("exact_second_moment", t, z);
  const double nd = n;
  const double log_r2 = std::log(std::norm(z));

  double log_fact_n = 0.0;
  for (int m = 2; m <= n; ++m) log_fact_n += std::log(static_cast<double>(m));
  const double prefix = log_fact_n + nd * log_r2 - nd * std::log(nd) - nd * t * (z * z).real();

  std::vector<double> terms(static_cast<std::size_t>(n) + 1);
  double log_fact_k = 0.0;
  if (t == 0.0) {
    // t^k |He_k(sqrt(n/t) u)|^2 -> n^k |u|^{2k} with u = 1/z; the |z|^{2n} prefix absorbs |u|^{2k}.
    for (int k = 0; k <= n; ++k) {
      if (k > 0) log_fact_k += std::log(static_cast<double>(k));
      terms[k] = k * std::log(nd) + (nd - k) * log_r2 - log_fact_k;
    }
    return log_fact_n - nd * std::log(nd) + log_sum_exp(terms);
  }

  const cplx w = std::sqrt(nd / t) * g_map(t, z);
  const HermiteSeq he = hermite_scaled(n, w);
  const double log_t = std::log(t);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) log_fact_k += std::log(static_cast<double>(k));
    terms[k] = 2.0 * he.values[k].log_abs() + k * log_t - log_fact_k;
  }
  return prefix + log_sum_exp(terms);
}

namespace {

double saddle_exponent(double t, cplx u) {
  const cplx z = g_inverse(t, u);
  return 1.0 + t * (z * z).real() - std::log(std::norm(z));
}

}  // namespace

double asymptotic_second_moment(double t, cplx z) {
  if (t == 0.0) {
    throw UnsupportedError("asymptotic_second_moment: t = 0 is not covered; use exact_second_moment at large n");
  }
  check_disk_point("asymptotic_second_moment", t, z);
  const double r2 = std::norm(z);
  const cplx u = g_map(t, z);
  const double a = u.real();
  const double b = u.imag();
  const double s = t * r2;
  const double f2 = (-2.0 * a * a / std::pow(1.0 + s, 3) + 2.0 * b * b / std::pow(1.0 - s, 3)) / t + 1.0 / (s * s);
  if (!(f2 > 0.0)) throw DomainError("asymptotic_second_moment: saddle curvature is not positive");
  const double log_base =
      -0.5 * std::log(f2) - 0.5 * std::log(1.0 - s * s) - std::log(t) - std::log(1.0 - r2);

  constexpr double h = 1e-5;
  const double gx = (saddle_exponent(t, u + cplx{h, 0.0}) - saddle_exponent(t, u - cplx{h, 0.0})) / (2.0 * h);
  const double gy = (saddle_exponent(t, u + cplx{0.0, h}) - saddle_exponent(t, u - cplx{0.0, h})) / (2.0 * h);
  const double shift = saddle_exponent(t, u) - 0.5 * (gx * a + gy * b);
  return log_base + shift;
}

}  // namespace egelab
