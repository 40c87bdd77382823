#include "egelab/sampling.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "egelab/errors.hpp"

namespace egelab {

void EgeParams::validate() const {
  if (n < 1) throw DomainError("EgeParams: n must be >= 1");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("EgeParams: t must lie in [0, 1], got " + std::to_string(t));
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t index) {
  const std::array<std::uint32_t, 4> words{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) : engine_(seeded_engine(seed, index)) {}

SampleStream derive_stream(std::uint64_t seed, std::uint64_t index) { return {seed, index}; }

cplx sample_standard_complex(SampleStream& s) {
  const double re = s.normal();
  const double im = s.normal();
  return cplx{re, im} * (1.0 / std::numbers::sqrt2);
}

CMatrix sample_gue(SampleStream& s, std::size_t n) {
  if (n < 1) throw DomainError("sample_gue: n must be >= 1");
  CMatrix x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, i) = s.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z = sample_standard_complex(s);
      x(i, j) = z;
      x(j, i) = std::conj(z);
    }
  }
  return x;
}

CMatrix sample_ege(SampleStream& s, const EgeParams& p) {
  p.validate();
  const CMatrix x = sample_gue(s, p.n);
  const CMatrix y = sample_gue(s, p.n);
  const double a = std::sqrt((1.0 + p.t) / 2.0);
  const double b = std::sqrt((1.0 - p.t) / 2.0);
  CMatrix out(p.n);
  auto xs = x.entries();
  auto ys = y.entries();
  auto os = out.entries();
  if (b == 0.0) {
    for (std::size_t i = 0; i < os.size(); ++i) os[i] = xs[i];
    return out;
  }
  for (std::size_t i = 0; i < os.size(); ++i) {
    // a*x + i*b*y
    os[i] = cplx{a * xs[i].real() - b * ys[i].imag(), a * xs[i].imag() + b * ys[i].real()};
  }
  return out;
}

cplx sample_gaf_coeff(SampleStream& s, double t, int k) {
  if (k < 1) throw DomainError("sample_gaf_coeff: k must be >= 1");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("sample_gaf_coeff: t must lie in [0, 1]");
  const double tk = std::pow(t, k);
  const double g1 = s.normal();
  const double g2 = s.normal();
  const double im_scale = std::sqrt((1.0 - tk) / 2.0);
  return {std::sqrt((1.0 + tk) / 2.0) * g1, im_scale == 0.0 ? 0.0 : im_scale * g2};
}

}  // namespace egelab
