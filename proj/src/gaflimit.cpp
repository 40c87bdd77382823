#include "egelab/gaflimit.hpp"

#include <cmath>
#include <sstream>

#include "egelab/errors.hpp"
#include "egelab/io_util.hpp"
#include "egelab/momentcomb.hpp"
#include "egelab/parallel.hpp"

namespace egelab {

namespace {

void check_params(double t, int K) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("gaf: t must lie in [0, 1]");
  if (K < 1) throw DomainError("gaf: truncation K must be >= 1");
}

void check_points(const std::vector<cplx>& zs) {
  for (cplx z : zs)
    if (!(std::abs(z) < 1.0)) throw DomainError("gaf: every |z| must be < 1");
}

}  // namespace

std::vector<cplx> sample_F(SampleStream& s, double t, int K, const std::vector<cplx>& zs) {
  check_params(t, K);
  check_points(zs);
  std::vector<cplx> coeff(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) coeff[k - 1] = sample_gaf_coeff(s, t, k) / std::sqrt(static_cast<double>(k));
  std::vector<cplx> out;
  out.reserve(zs.size());
  for (cplx z : zs) {
    cplx acc{0.0, 0.0};
    for (int k = K; k >= 1; --k) acc = (acc + coeff[k - 1]) * z;
    out.push_back(acc);
  }
  return out;
}

std::vector<cplx> sample_F(const GafParams& p, const std::vector<cplx>& zs) {
  SampleStream s = derive_stream(p.seed, 0);
  return sample_F(s, p.t, p.K, zs);
}

cplx kappa(double t, cplx z, int K) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("kappa: t must lie in [0, 1]");
  if (K < 1) throw DomainError("kappa: K must be >= 1");
  if (!(std::abs(z) < 1.0) || !(t * std::norm(z) < 1.0)) throw DomainError("kappa: need |z| < 1 and t|z|^2 < 1");
  if (K > kMaxHCoeff) {
    throw UnsupportedError("kappa: h_k is only available for k <= " + std::to_string(kMaxHCoeff));
  }
  const cplx z2 = z * z;
  cplx series{0.0, 0.0};
  cplx zp{1.0, 0.0};
  for (int k = 1; k <= K; ++k) {
    zp *= z2;
    series += h_coeff(k, t) * zp / static_cast<double>(k);
  }
  const cplx tz2 = t * z2;
  return std::exp(-0.5 * series + tz2 / (2.0 * (1.0 - tz2)));
}

std::vector<cplx> sample_f_limit(SampleStream& s, double t, int K, const std::vector<cplx>& zs) {
  std::vector<cplx> f = sample_F(s, t, K, zs);
  for (std::size_t i = 0; i < zs.size(); ++i) f[i] = kappa(t, zs[i], kMaxHCoeff) * std::exp(-f[i]);
  return f;
}

std::vector<cplx> sample_f_limit(const GafParams& p, const std::vector<cplx>& zs) {
  SampleStream s = derive_stream(p.seed, 0);
  return sample_f_limit(s, p.t, p.K, zs);
}

double limit_second_moment(double t, cplx z) {
  const cplx k = kappa(t, z, kMaxHCoeff);
  return std::norm(k) / (std::abs(1.0 - t * z * z) * (1.0 - std::norm(z)));
}

std::string gaf_samples_csv(const GafParams& p, const std::vector<cplx>& zs, int draws) {
  if (draws < 1) throw DomainError("gaf_samples_csv: draws must be >= 1");
  const auto values = parallel_map<std::vector<cplx>>(static_cast<std::size_t>(draws), [&](std::size_t i) {
    SampleStream s = derive_stream(p.seed, i);
    return sample_f_limit(s, p.t, p.K, zs);
  });
  std::ostringstream out;
  out << "draw_index,z_re,z_im,f_re,f_im\n";
  for (int d = 0; d < draws; ++d)
    for (std::size_t j = 0; j < zs.size(); ++j)
      out << d << ',' << fmt_double(zs[j].real()) << ',' << fmt_double(zs[j].imag()) << ','
          << fmt_double(values[d][j].real()) << ',' << fmt_double(values[d][j].imag()) << '\n';
  return out.str();
}

}  // namespace egelab
