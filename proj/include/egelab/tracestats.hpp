#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egelab/clinalg.hpp"
#include "egelab/sampling.hpp"

namespace egelab {

struct TraceSample {
  std::vector<cplx> u;  // U_1 .. U_kmax
  std::size_t n = 0;
  double t = 0.0;
  std::uint64_t sample_index = 0;
};

/// kmax x kmax complex table, row-major, zero-based (entry (j-1, k-1) for degrees j, k).
struct CTable {
  int size = 0;
  std::vector<cplx> values;
  std::vector<double> stderr_;

  [[nodiscard]] cplx at(int j, int k) const { return values[(j - 1) * size + (k - 1)]; }
  [[nodiscard]] double se(int j, int k) const { return stderr_[(j - 1) * size + (k - 1)]; }
};

struct MomentEstimate {
  int reps = 0;
  int kmax = 0;
  std::vector<cplx> mean;  // index k-1
  std::vector<double> mean_se;
  CTable cov_sq;   // E V_j V_k
  CTable cov_abs;  // E V_j conj(V_k)
  std::vector<double> cum4;  // fourth cumulant of Re V_k
  std::vector<double> cum4_se;
};

inline constexpr int kDefaultKmax = 12;

/// U_k = Tr P_k(A / sqrt(n)) + n t [k = 2] for k = 1..kmax; the degree-0 term counts Tr I = n.
[[nodiscard]] TraceSample compute_U(const CMatrix& a, double t, int kmax);

/// One TraceSample per stream derive_stream(p.seed, i), i < reps.
[[nodiscard]] std::vector<TraceSample> sample_traces(const EgeParams& p, int reps, int kmax);

/// Means, covariances of the centered V = U - mean(U), and fourth cumulants, with jackknife
/// standard errors. Requires at least two samples.
[[nodiscard]] MomentEstimate estimate_moments(const std::vector<TraceSample>& samples);

/// sample_traces followed by estimate_moments; reps >= 100.
[[nodiscard]] MomentEstimate mc_moments(const EgeParams& p, int reps, int kmax);

/// Taylor coefficients xi_0..xi_m of exp(-sum_{k<=m} U_k z^k / k).
[[nodiscard]] std::vector<cplx> coeff_from_traces(const TraceSample& u, int m);

/// Rows j,k,re,im,stderr,kind with kind in {mean, cov_sq, cov_abs, cum4}; mean and cum4 rows use j = k.
[[nodiscard]] std::string moment_estimate_csv(const MomentEstimate& est);
[[nodiscard]] std::string moment_estimate_json(const MomentEstimate& est);

}  // namespace egelab
