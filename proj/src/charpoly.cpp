#include "egelab/charpoly.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "egelab/errors.hpp"
#include "egelab/parallel.hpp"

namespace egelab {

cplx g_map(double t, cplx z) {
  if (z == cplx{0.0, 0.0}) throw DomainError("g_map: z = 0");
  return 1.0 / z + t * z;
}

cplx g_inverse(double t, cplx u) {
  if (u == cplx{0.0, 0.0}) throw DomainError("g_inverse: u = 0");
  if (t == 0.0) return 1.0 / u;
  // z = 2 / (u + sqrt(u^2 - 4t)) with the branch that maximizes the denominator.
  const cplx root = std::sqrt(u * u - 4.0 * t);
  const cplx d1 = u + root;
  const cplx d2 = u - root;
  return 2.0 / (std::abs(d1) >= std::abs(d2) ? d1 : d2);
}

ScaledComplex eval_f(const CMatrix& a, double t, cplx z) {
  const std::size_t n = a.order();
  if (n == 0) throw DimensionError("eval_f: empty matrix");
  const cplx diag = 1.0 + t * z * z;
  const cplx scale = -z / std::sqrt(static_cast<double>(n));
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* ai = a.row(i);
    cplx* mi = m.row(i);
    for (std::size_t j = 0; j < n; ++j) mi[j] = scale * ai[j];
    mi[i] += diag;
  }
  if (z == cplx{0.0, 0.0}) m = CMatrix::identity(n);
  return log_det(lu_factor(m)).times_exp(-0.5 * static_cast<double>(n) * t * z * z);
}

cplx Grid::pixel_center(int row, int col) const {
  const double step = 2.0 * half_width / resolution;
  return {center.real() - half_width + (col + 0.5) * step, center.imag() + half_width - (row + 0.5) * step};
}

ValueGrid eval_grid(const CMatrix& a, double t, const Grid& grid) {
  if (grid.resolution < 2) throw DomainError("eval_grid: resolution must be >= 2");
  if (!(grid.half_width > 0.0)) throw DomainError("eval_grid: half_width must be positive");
  const int res = grid.resolution;
  ValueGrid out{res, res, {}};
  out.values = parallel_map<ScaledComplex>(static_cast<std::size_t>(res) * res, [&](std::size_t idx) {
    const int row = static_cast<int>(idx) / res;
    const int col = static_cast<int>(idx) % res;
    return eval_f(a, t, grid.pixel_center(row, col));
  });
  return out;
}

namespace {

std::uint8_t to_byte(double channel) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(channel, 0.0, 1.0) * 255.0));
}

void hsv_to_rgb(double h, double s, double v, std::uint8_t* rgb) {
  const double c = v * s;
  double hp = h * 6.0;
  if (hp >= 6.0) hp -= 6.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  const double m = v - c;
  double r = 0.0, g = 0.0, b = 0.0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  rgb[0] = to_byte(r + m);
  rgb[1] = to_byte(g + m);
  rgb[2] = to_byte(b + m);
}

}  // namespace

PortraitRaster render_portrait(const ValueGrid& values) {
  PortraitRaster out{values.width, values.height, {}};
  out.pixels.assign(static_cast<std::size_t>(values.width) * values.height * 3, 0);
  for (std::size_t i = 0; i < values.values.size(); ++i) {
    const ScaledComplex& w = values.values[i];
    if (w.is_zero()) continue;
    const double h = (w.arg() + std::numbers::pi) / (2.0 * std::numbers::pi);
    const double l2 = w.log_abs() / std::numbers::ln2;
    const double v = 0.55 + 0.45 * (l2 - std::floor(l2));
    hsv_to_rgb(h, 0.9, v, &out.pixels[3 * i]);
  }
  return out;
}

std::string ppm_bytes(const PortraitRaster& raster) {
  std::string out = "P6\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(raster.pixels.data()), raster.pixels.size());
  return out;
}

void write_ppm(const PortraitRaster& raster, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_ppm: cannot open " + path);
  const std::string bytes = ppm_bytes(raster);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write_ppm: write failed for " + path);
}

double min_modulus_on_disk(const CMatrix& a, double t, double r, int resolution) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("min_modulus_on_disk: need 0 < r < 1");
  if (resolution < 2) throw DomainError("min_modulus_on_disk: resolution must be >= 2");
  const HessenbergCharpoly f(a, t);
  const double step = 2.0 * r / (resolution - 1);
  std::vector<double> row_min = parallel_map<double>(static_cast<std::size_t>(resolution), [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    const double y = -r + step * static_cast<double>(i);
    for (int j = 0; j < resolution; ++j) {
      const cplx z{-r + step * j, y};
      if (std::abs(z) > r) continue;
      best = std::min(best, f(z).log_abs());
    }
    return best;
  });
  return *std::min_element(row_min.begin(), row_min.end());
}

HessenbergCharpoly::HessenbergCharpoly(const CMatrix& a, double t) : h_(hessenberg(a)), t_(t) {
  if (a.empty()) throw DimensionError("HessenbergCharpoly: empty matrix");
}

ScaledComplex HessenbergCharpoly::operator()(cplx z) const {
  const std::size_t n = h_.order();
  const cplx c = 1.0 + t_ * z * z;
  const cplx s = -z / std::sqrt(static_cast<double>(n));
  if (z == cplx{0.0, 0.0}) return ScaledComplex(cplx{1.0, 0.0});

  // Row elimination on the Hessenberg matrix c I + s H, keeping only the active row.
  std::vector<cplx> carry(n);
  std::vector<cplx> next(n);
  for (std::size_t j = 0; j < n; ++j) carry[j] = s * h_(0, j);
  carry[0] += c;
  ScaledComplex det(cplx{1.0, 0.0});
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const cplx* hr = h_.row(k + 1);
    for (std::size_t j = k; j < n; ++j) next[j] = s * hr[j];
    next[k + 1] += c;
    if (std::abs(carry[k]) >= std::abs(next[k])) {
      if (carry[k] == cplx{0.0, 0.0}) return {};
      const cplx l = next[k] / carry[k];
      det *= carry[k];
      for (std::size_t j = k + 1; j < n; ++j) next[j] -= l * carry[j];
      std::swap(carry, next);
    } else {
      const cplx l = carry[k] / next[k];
      det *= -next[k];
      for (std::size_t j = k + 1; j < n; ++j) carry[j] -= l * next[j];
    }
  }
  det *= carry[n - 1];
  return det.times_exp(-0.5 * static_cast<double>(n) * t_ * z * z);
}

}  // namespace egelab
