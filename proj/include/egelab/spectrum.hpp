#pragma once

#include <string>

#include "egelab/charpoly.hpp"
#include "egelab/clinalg.hpp"

namespace egelab {

struct EllipseSpec {
  double t = 0.0;
  double inflation = 1.0;
};

/// Membership in the inflated ellipse; at t = 1 a thin band of half-height 2(c-1) + 1e-9 around
/// [-2c, 2c].
[[nodiscard]] bool ellipse_contains(const EllipseSpec& e, cplx u);

/// Number of eigenvalues with lambda / sqrt(n) outside the inflated ellipse. Throws DomainError
/// for a non-converged spectrum.
[[nodiscard]] int outlier_count(const Spectrum& s, std::size_t n, const EllipseSpec& e);

/// "re,im" header, then lambda / sqrt(n) per row.
[[nodiscard]] std::string export_scatter(const Spectrum& s, std::size_t n);

/// Point on the inflated ellipse boundary at parameter theta.
[[nodiscard]] cplx ellipse_boundary(const EllipseSpec& e, double theta);

/// Smallest and largest modulus of the g_t-preimage of the inflated boundary (t < 1).
struct RadiusRange {
  double min = 0.0;
  double max = 0.0;
};
[[nodiscard]] RadiusRange preimage_radius_range(const EllipseSpec& e, int samples = 4096);

/// Zeros of f_{n,t} inside the preimage K of the inflated ellipse's exterior, by the argument
/// principle along its boundary. Each zero is an eigenvalue outside the ellipse.
struct ZeroCount {
  int zeros = 0;
  bool reliable = true;  // false if a zero sits on (numerically at) the contour
  int evaluations = 0;
};
[[nodiscard]] ZeroCount count_zeros_in_preimage(const HessenbergCharpoly& f, const EllipseSpec& e);

/// min log|f_{n,t}| over a lattice of K (resolution^2 candidates on the bounding square).
[[nodiscard]] double min_modulus_on_preimage(const HessenbergCharpoly& f, const EllipseSpec& e, int resolution);

struct OutlierReport {
  int eigen_outliers = 0;
  bool converged = false;
  ZeroCount zero_count;
  double min_log_modulus = 0.0;

  /// Eigenvalue detector and the charpoly detector reach the same verdict (no outliers vs some).
  [[nodiscard]] bool agree() const { return (eigen_outliers == 0) == (zero_count.zeros == 0); }
};

/// Both detectors on one matrix; t must be < 1 for the charpoly detector.
[[nodiscard]] OutlierReport analyze_outliers(const CMatrix& a, const EllipseSpec& e, int grid_resolution = 64);

}  // namespace egelab
