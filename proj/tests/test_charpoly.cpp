#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "egelab/charpoly.hpp"
#include "egelab/errors.hpp"
#include "egelab/sampling.hpp"
#include "oracles.hpp"

using namespace egelab;

namespace {

cplx expected_f(const CMatrix& a, double t, cplx z) {
  const std::size_t n = a.order();
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 + t * z * z : 0.0) - z * a(i, j) / std::sqrt(double(n));
  return oracle::cofactor_det(m) * std::exp(-0.5 * double(n) * t * z * z);
}

// Reference HSV conversion written from the sector table.
std::array<int, 3> hsv_bytes(double h, double s, double v) {
  const double hh = std::fmod(h, 1.0) * 6.0;
  const int sector = static_cast<int>(std::floor(hh));
  const double f = hh - sector;
  const double p = v * (1 - s), q = v * (1 - s * f), u = v * (1 - s * (1 - f));
  double r, g, b;
  switch (sector) {
    case 0: r = v, g = u, b = p; break;
    case 1: r = q, g = v, b = p; break;
    case 2: r = p, g = v, b = u; break;
    case 3: r = p, g = q, b = v; break;
    case 4: r = u, g = p, b = v; break;
    default: r = v, g = p, b = q; break;
  }
  return {int(std::lround(r * 255)), int(std::lround(g * 255)), int(std::lround(b * 255))};
}

}  // namespace

TEST_CASE("g_map values") {
  CHECK(g_map(0.0, 0.5) == cplx{2.0, 0.0});
  const cplx w = g_map(1.0, cplx{0.0, 0.3});
  CHECK(w.real() == 0.0);
  CHECK(w.imag() == doctest::Approx(0.3 - 1.0 / 0.3));
  CHECK(g_map(0.5, 0.5).real() == doctest::Approx(2.25));
  CHECK_THROWS_AS((void)g_map(0.5, 0.0), DomainError);
}

TEST_CASE("g_inverse inverts g_map on the disk") {
  for (double t : {0.0, 0.3, 0.5, 1.0})
    for (cplx z : {cplx{0.3, 0.1}, cplx{-0.7, 0.2}, cplx{0.0, 0.9}, cplx{0.05, -0.02}}) {
      const cplx back = g_inverse(t, g_map(t, z));
      CHECK(std::abs(back - z) < 1e-12);
    }
}

TEST_CASE("eval_f at the origin is exactly one") {
  SampleStream s = derive_stream(1, 0);
  for (double t : {0.0, 0.5, 1.0}) {
    const CMatrix a = sample_ege(s, {12, t, 1});
    CHECK(eval_f(a, t, 0.0).value() == cplx{1.0, 0.0});
  }
}

TEST_CASE("eval_f scalar case") {
  const cplx a = {0.7, -1.1};
  for (double t : {0.0, 0.4, 1.0})
    for (cplx z : {cplx{0.2, 0.5}, cplx{-0.6, 0.1}}) {
      const cplx want = (1.0 + t * z * z - z * a) * std::exp(-0.5 * t * z * z);
      CHECK(oracle::rel_err(eval_f(CMatrix{{a}}, t, z).value(), want) < 1e-14);
    }
}

TEST_CASE("eval_f matches the cofactor determinant") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const CMatrix a = oracle::random_matrix(n, 40 + n);
    const cplx z{0.3, 0.2};
    CHECK(oracle::rel_err(eval_f(a, 0.5, z).value(), expected_f(a, 0.5, z)) < 1e-11);
  }
}

TEST_CASE("eval_f is exactly zero at a root") {
  CHECK(eval_f(CMatrix{{2.0}}, 0.0, 0.5).is_zero());
}

TEST_CASE("conjugation symmetry for real matrices") {
  const CMatrix a = oracle::random_real_matrix(6, 3);
  for (cplx z : {cplx{0.3, 0.4}, cplx{-0.2, 0.7}, cplx{0.5, -0.1}}) {
    const cplx f1 = eval_f(a, 0.5, std::conj(z)).value();
    const cplx f2 = std::conj(eval_f(a, 0.5, z).value());
    CHECK(std::abs(f1 - f2) < 1e-10 * std::max(1.0, std::abs(f2)));
  }
}

TEST_CASE("scaled path agrees with an unscaled recomputation") {
  // At t = 0, f depends on z A only, so (s A, z / s) gives the same value while driving the
  // matrix entries far outside the plain double range of intermediate products.
  for (std::size_t n = 1; n <= 5; ++n) {
    const CMatrix a = oracle::random_matrix(n, 60 + n);
    CMatrix big = a;
    big *= cplx{1e150, 0.0};
    const cplx z{0.4, -0.3};
    const ScaledComplex scaled = eval_f(big, 0.0, z * 1e-150);
    CHECK(oracle::rel_err(scaled.value(), expected_f(a, 0.0, z)) < 1e-10);
  }
}

TEST_CASE("determinant identity through g_t") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (double t : {0.0, 0.5, 1.0}) {
      const CMatrix a = oracle::random_matrix(n, 80 + n);
      const cplx z{0.35, -0.25};
      const double rn = std::sqrt(double(n));
      CMatrix m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? g_map(t, z) * rn : 0.0) - a(i, j);
      const cplx want = std::pow(z, int(n)) * oracle::cofactor_det(m) / std::pow(double(n), 0.5 * n) *
                        std::exp(-0.5 * double(n) * t * z * z);
      CHECK(oracle::rel_err(eval_f(a, t, z).value(), want) < 1e-9);
    }
}

TEST_CASE("Hessenberg evaluator agrees with eval_f") {
  SampleStream s = derive_stream(2, 0);
  const CMatrix a = sample_ege(s, {40, 0.5, 2});
  const HessenbergCharpoly f(a, 0.5);
  for (cplx z : {cplx{0.1, 0.2}, cplx{-0.5, 0.3}, cplx{0.8, -0.1}, cplx{0.0, 0.0}}) {
    const ScaledComplex x = f(z), y = eval_f(a, 0.5, z);
    CHECK(x.log_abs() == doctest::Approx(y.log_abs()).epsilon(1e-9));
    CHECK(std::abs(std::remainder(x.arg() - y.arg(), 2 * std::numbers::pi)) < 1e-8);
  }
}

TEST_CASE("pixel centers and grid values") {
  const Grid g{{0.0, 0.0}, 1.0, 4};
  CHECK(g.pixel_center(0, 0) == cplx{-0.75, 0.75});
  CHECK(g.pixel_center(3, 3) == cplx{0.75, -0.75});

  const ValueGrid ones = eval_grid(CMatrix(5), 0.0, g);
  for (const auto& v : ones.values) CHECK(v.value() == cplx{1.0, 0.0});

  const CMatrix a = oracle::random_matrix(6, 7);
  const Grid g2{{0.1, -0.2}, 0.6, 5};
  const ValueGrid vals = eval_grid(a, 0.5, g2);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) CHECK(vals.at(r, c) == eval_f(a, 0.5, g2.pixel_center(r, c)));

  const ValueGrid small = eval_grid(a, 0.5, {{0.0, 0.0}, 1e-3, 2});
  for (const auto& v : small.values) CHECK(std::abs(v.value() - 1.0) < 1e-2);

  CHECK_THROWS_AS((void)eval_grid(a, 0.5, {{0.0, 0.0}, 1.0, 1}), DomainError);
}

TEST_CASE("portrait of constant fields") {
  ValueGrid ones{3, 2, std::vector<ScaledComplex>(6, ScaledComplex(cplx{1.0, 0.0}))};
  const PortraitRaster r = render_portrait(ones);
  const auto want = hsv_bytes(0.5, 0.9, 0.55);
  for (int i = 0; i < 6; ++i)
    for (int c = 0; c < 3; ++c) CHECK(int(r.pixels[3 * i + c]) == want[c]);

  ValueGrid zeros{2, 2, std::vector<ScaledComplex>(4)};
  for (auto b : render_portrait(zeros).pixels) CHECK(b == 0);
}

TEST_CASE("portrait color map uses the scaled modulus") {
  // |w| = 2^(1000.25) cannot be stored as a double, yet frac(log2|w|) = 0.25.
  const ScaledComplex w = ScaledComplex::from_log_polar(1000.25 * std::numbers::ln2, 1.0);
  const PortraitRaster r = render_portrait({1, 1, {w}});
  const auto want = hsv_bytes((1.0 + std::numbers::pi) / (2 * std::numbers::pi), 0.9, 0.55 + 0.45 * 0.25);
  for (int c = 0; c < 3; ++c) CHECK(int(r.pixels[c]) == want[c]);
}

TEST_CASE("portrait rendering is deterministic and serializes to P6") {
  SampleStream s = derive_stream(3, 0);
  const CMatrix a = sample_ege(s, {20, 0.5, 3});
  const Grid g{{0.0, 0.0}, 1.2, 16};
  const PortraitRaster r1 = render_portrait(eval_grid(a, 0.5, g));
  const PortraitRaster r2 = render_portrait(eval_grid(a, 0.5, g));
  CHECK(r1 == r2);
  const std::string bytes = ppm_bytes(r1);
  CHECK(bytes.rfind("P6\n16 16\n255\n", 0) == 0);
  CHECK(bytes.size() == 13 + 16 * 16 * 3);

  const auto path = std::filesystem::temp_directory_path() / "egelab_test_portrait.ppm";
  write_ppm(r1, path.string());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == bytes);
  std::filesystem::remove(path);
}

TEST_CASE("min_modulus_on_disk") {
  CHECK(min_modulus_on_disk(CMatrix(4), 0.0, 0.5, 21) == 0.0);
  // 1 - 2z vanishes at z = 0.5, a lattice point for resolution 13 on [-0.6, 0.6].
  CHECK(min_modulus_on_disk(CMatrix{{2.0}}, 0.0, 0.6, 13) < -10.0);
  CHECK_THROWS_AS((void)min_modulus_on_disk(CMatrix(2), 0.0, 1.0, 10), DomainError);

  int positive = 0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    SampleStream s = derive_stream(4, i);
    const CMatrix a = sample_ege(s, {100, 0.5, 4});
    if (min_modulus_on_disk(a, 0.5, 0.5, 32) > -10.0) ++positive;
  }
  CHECK(positive == 10);
}
