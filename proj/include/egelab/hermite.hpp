#pragma once

#include <vector>

#include "egelab/scaled_complex.hpp"

namespace egelab {

struct HermiteSeq {
  std::vector<ScaledComplex> values;  // He_0(w) .. He_k(w)
  cplx argument;
};

/// Monic (probabilists') Hermite polynomials He_0..He_k at w by the three-term recurrence.
[[nodiscard]] HermiteSeq hermite_scaled(int k, cplx w);

/// log E|f_{n,t}(z)|^2 from the finite-n Hermite sum. Requires 0 < |z| < 1, t in [0, 1].
[[nodiscard]] double exact_second_moment(int n, double t, cplx z);

/// log of the n -> infinity limit of E|f_{n,t}(z)|^2 from the saddle-point expansion.
/// t = 0 is rejected with UnsupportedError.
[[nodiscard]] double asymptotic_second_moment(double t, cplx z);

/// log(sum exp(x_i)), stable; -inf for an empty range.
[[nodiscard]] double log_sum_exp(const std::vector<double>& xs);

}  // namespace egelab
