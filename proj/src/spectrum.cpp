#include "egelab/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "egelab/errors.hpp"
#include "egelab/io_util.hpp"

namespace egelab {

bool ellipse_contains(const EllipseSpec& e, cplx u) {
  const double c = e.inflation;
  const double x = u.real();
  const double y = u.imag();
  if (e.t >= 1.0) {
    const double band = 2.0 * (c - 1.0) + 1e-9;
    return std::fabs(y) <= band && std::fabs(x) <= 2.0 * c;
  }
  const double a = x / ((1.0 + e.t) * c);
  const double b = y / ((1.0 - e.t) * c);
  return a * a + b * b <= 1.0;
}

int outlier_count(const Spectrum& s, std::size_t n, const EllipseSpec& e) {
  if (!s.converged) throw DomainError("outlier_count: spectrum did not converge");
  const double root_n = std::sqrt(static_cast<double>(n));
  int count = 0;
  for (cplx lambda : s.eigenvalues)
    if (!ellipse_contains(e, lambda / root_n)) ++count;
  return count;
}

std::string export_scatter(const Spectrum& s, std::size_t n) {
  std::ostringstream out;
  out << "re,im\n";
  const double root_n = std::sqrt(static_cast<double>(n));
  for (cplx lambda : s.eigenvalues) {
    const cplx u = lambda / root_n;
    out << fmt_double(u.real()) << ',' << fmt_double(u.imag()) << '\n';
  }
  return out.str();
}

cplx ellipse_boundary(const EllipseSpec& e, double theta) {
  return {e.inflation * (1.0 + e.t) * std::cos(theta), e.inflation * (1.0 - e.t) * std::sin(theta)};
}

namespace {

void check_contour(const EllipseSpec& e) {
  if (!(e.t >= 0.0 && e.t < 1.0)) throw UnsupportedError("preimage contour: needs 0 <= t < 1");
  if (!(e.inflation >= 1.0)) throw DomainError("preimage contour: inflation must be >= 1");
}

cplx contour_point(const EllipseSpec& e, double theta) { return g_inverse(e.t, ellipse_boundary(e, theta)); }

}  // namespace

RadiusRange preimage_radius_range(const EllipseSpec& e, int samples) {
  check_contour(e);
  RadiusRange r{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < samples; ++i) {
    const double m = std::abs(contour_point(e, 2.0 * std::numbers::pi * i / samples));
    r.min = std::min(r.min, m);
    r.max = std::max(r.max, m);
  }
  return r;
}

ZeroCount count_zeros_in_preimage(const HessenbergCharpoly& f, const EllipseSpec& e) {
  check_contour(e);
  constexpr int kInitial = 1024;
  constexpr double kMaxJump = std::numbers::pi / 3.0;
  constexpr double kMinStep = 1e-10;
  ZeroCount out;

  auto phase_at = [&](double theta, bool& ok) {
    const ScaledComplex v = f(contour_point(e, theta));
    ++out.evaluations;
    if (v.is_zero()) ok = false;
    return v.arg();
  };
  auto wrap = [](double d) { return std::remainder(d, 2.0 * std::numbers::pi); };

  // Refines [a, b] until every phase step is below kMaxJump; returns the accumulated change.
  auto refine = [&](auto&& self, double a, double b, double pa, double pb) -> double {
    const double d = wrap(pb - pa);
    if (std::fabs(d) <= kMaxJump) return d;
    if (b - a < kMinStep) {
      out.reliable = false;
      return d;
    }
    const double mid = 0.5 * (a + b);
    const double pm = phase_at(mid, out.reliable);
    return self(self, a, mid, pa, pm) + self(self, mid, b, pm, pb);
  };

  const double step = 2.0 * std::numbers::pi / kInitial;
  std::vector<double> phase(kInitial + 1);
  for (int i = 0; i < kInitial; ++i) phase[i] = phase_at(step * i, out.reliable);
  phase[kInitial] = phase[0];
  double total = 0.0;
  for (int i = 0; i < kInitial; ++i) total += refine(refine, step * i, step * (i + 1), phase[i], phase[i + 1]);

  // The preimage contour runs clockwise as theta increases.
  const double winding = total / (2.0 * std::numbers::pi);
  out.zeros = static_cast<int>(std::lround(-winding));
  if (std::fabs(-winding - out.zeros) > 1e-6) out.reliable = false;
  return out;
}

double min_modulus_on_preimage(const HessenbergCharpoly& f, const EllipseSpec& e, int resolution) {
  check_contour(e);
  if (resolution < 2) throw DomainError("min_modulus_on_preimage: resolution must be >= 2");
  const double r = preimage_radius_range(e).max;
  const double step = 2.0 * r / (resolution - 1);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const cplx z{-r + step * j, -r + step * i};
      if (std::abs(z) >= 1.0) continue;
      if (z != cplx{0.0, 0.0} && ellipse_contains(e, g_map(e.t, z))) continue;
      best = std::min(best, f(z).log_abs());
    }
  }
  return best;
}

OutlierReport analyze_outliers(const CMatrix& a, const EllipseSpec& e, int grid_resolution) {
  OutlierReport rep;
  const Spectrum s = eigenvalues(a);
  rep.converged = s.converged;
  if (s.converged) rep.eigen_outliers = outlier_count(s, a.order(), e);
  const HessenbergCharpoly f(a, e.t);
  rep.zero_count = count_zeros_in_preimage(f, e);
  rep.min_log_modulus = min_modulus_on_preimage(f, e, grid_resolution);
  return rep;
}

}  // namespace egelab
