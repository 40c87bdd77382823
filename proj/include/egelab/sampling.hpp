#pragma once

#include <cstdint>
#include <random>

#include "egelab/clinalg.hpp"

namespace egelab {

struct EgeParams {
  std::size_t n = 1;
  double t = 0.0;
  std::uint64_t seed = 0;

  /// Throws DomainError unless n >= 1 and 0 <= t <= 1.
  void validate() const;
};

/// Single-owner pseudorandom stream. Copying forks the state.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  double normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Stream i of a Monte Carlo run seeded with `seed`.
[[nodiscard]] SampleStream derive_stream(std::uint64_t seed, std::uint64_t index);

/// (g1 + i g2)/sqrt(2).
[[nodiscard]] cplx sample_standard_complex(SampleStream& s);

/// Hermitian, real N(0,1) diagonal, standard complex strict upper triangle mirrored below.
[[nodiscard]] CMatrix sample_gue(SampleStream& s, std::size_t n);

/// sqrt((1+t)/2) X + i sqrt((1-t)/2) Y for independent GUE X, Y.
[[nodiscard]] CMatrix sample_ege(SampleStream& s, const EgeParams& p);

/// sqrt((1+t^k)/2) g1 + i sqrt((1-t^k)/2) g2, so E X^2 = t^k and E|X|^2 = 1.
[[nodiscard]] cplx sample_gaf_coeff(SampleStream& s, double t, int k);

}  // namespace egelab
