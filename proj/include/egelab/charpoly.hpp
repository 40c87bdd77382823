#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "egelab/clinalg.hpp"

namespace egelab {

/// g_t(z) = 1/z + t z.
[[nodiscard]] cplx g_map(double t, cplx z);

/// Inverse of g_t on the unit disk: the smaller-modulus root of t z^2 - u z + 1 = 0 (1/u at t = 0).
[[nodiscard]] cplx g_inverse(double t, cplx u);

/// f_{n,t}(z) = det((1 + t z^2) I - z A / sqrt(n)) exp(-n t z^2 / 2), one LU per call.
[[nodiscard]] ScaledComplex eval_f(const CMatrix& a, double t, cplx z);

/// Square pixel grid over [center +- half_width]^2; row 0 is the top row (largest imaginary part).
struct Grid {
  cplx center{0.0, 0.0};
  double half_width = 1.0;
  int resolution = 2;

  [[nodiscard]] cplx pixel_center(int row, int col) const;
};

struct ValueGrid {
  int width = 0;
  int height = 0;
  std::vector<ScaledComplex> values;  // row-major

  [[nodiscard]] const ScaledComplex& at(int row, int col) const { return values[row * width + col]; }
};

[[nodiscard]] ValueGrid eval_grid(const CMatrix& a, double t, const Grid& grid);

struct PortraitRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // RGB triples, row-major, top row first

  friend bool operator==(const PortraitRaster&, const PortraitRaster&) = default;
};

/// Domain coloring: hue from the phase, brightness cycling with log2 of the modulus; zeros black.
[[nodiscard]] PortraitRaster render_portrait(const ValueGrid& values);

/// Binary P6 encoding.
[[nodiscard]] std::string ppm_bytes(const PortraitRaster& raster);
void write_ppm(const PortraitRaster& raster, const std::string& path);

/// Minimum of log|f_{n,t}| over the points of a resolution x resolution lattice on [-r, r]^2
/// (edges included) that fall in the closed disk |z| <= r.
[[nodiscard]] double min_modulus_on_disk(const CMatrix& a, double t, double r, int resolution);

/// Reduces A once to Hessenberg form, then evaluates f_{n,t} at any z in O(n^2).
class HessenbergCharpoly {
 public:
  HessenbergCharpoly(const CMatrix& a, double t);

  [[nodiscard]] ScaledComplex operator()(cplx z) const;
  [[nodiscard]] std::size_t order() const { return h_.order(); }
  [[nodiscard]] double t() const { return t_; }

 private:
  CMatrix h_;
  double t_;
};

}  // namespace egelab
