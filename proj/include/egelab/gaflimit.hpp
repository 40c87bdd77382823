#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egelab/sampling.hpp"
#include "egelab/scaled_complex.hpp"

namespace egelab {

inline constexpr int kDefaultGafTruncation = 40;

struct GafParams {
  double t = 0.0;
  int K = kDefaultGafTruncation;
  std::uint64_t seed = 0;
};

/// sum_{k<=K} X_k z^k / sqrt(k) for one coefficient draw from `s`, shared by all zs.
[[nodiscard]] std::vector<cplx> sample_F(SampleStream& s, double t, int K, const std::vector<cplx>& zs);
/// Draw from derive_stream(p.seed, 0).
[[nodiscard]] std::vector<cplx> sample_F(const GafParams& p, const std::vector<cplx>& zs);

/// exp(-1/2 sum_{k<=K} h_k z^{2k} / k) exp(t z^2 / (2 (1 - t z^2))). K is capped by the h budget.
[[nodiscard]] cplx kappa(double t, cplx z, int K);

/// kappa(z) exp(-F(z)) for one coefficient draw; F truncated at K terms, kappa at the h budget.
[[nodiscard]] std::vector<cplx> sample_f_limit(SampleStream& s, double t, int K, const std::vector<cplx>& zs);
[[nodiscard]] std::vector<cplx> sample_f_limit(const GafParams& p, const std::vector<cplx>& zs);

/// |kappa(z)|^2 / (|1 - t z^2| (1 - |z|^2)).
[[nodiscard]] double limit_second_moment(double t, cplx z);

/// `draws` independent draws (stream i = derive_stream(p.seed, i)) as CSV with header
/// draw_index,z_re,z_im,f_re,f_im.
[[nodiscard]] std::string gaf_samples_csv(const GafParams& p, const std::vector<cplx>& zs, int draws);

}  // namespace egelab
