#include "egelab/tracestats.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "egelab/chebmod.hpp"
#include "egelab/errors.hpp"
#include "egelab/io_util.hpp"
#include "egelab/parallel.hpp"

namespace egelab {

TraceSample compute_U(const CMatrix& a, double t, int kmax) {
  if (kmax < 1) throw DomainError("compute_U: kmax must be >= 1");
  const std::size_t n = a.order();
  const double nd = static_cast<double>(n);
  const std::vector<cplx> tr = trace_powers(a, kmax);
  // Tr B^p with B = A / sqrt(n); index 0 holds Tr I.
  std::vector<cplx> trb(static_cast<std::size_t>(kmax) + 1);
  trb[0] = nd;
  for (int p = 1; p <= kmax; ++p) trb[p] = tr[p - 1] / std::pow(nd, 0.5 * p);

  TraceSample s{std::vector<cplx>(static_cast<std::size_t>(kmax)), n, t, 0};
  for (int k = 1; k <= kmax; ++k) {
    const PolyReal alpha = cheb_coeffs_closed(k, t);
    cplx u{0.0, 0.0};
    for (int d = k; d >= 0; d -= 2) u += alpha.coeffs[d] * trb[d];
    if (k == 2) u += nd * t;
    s.u[k - 1] = u;
  }
  return s;
}

std::vector<TraceSample> sample_traces(const EgeParams& p, int reps, int kmax) {
  p.validate();
  if (reps < 1) throw DomainError("sample_traces: reps must be >= 1");
  return parallel_map<TraceSample>(static_cast<std::size_t>(reps), [&](std::size_t i) {
    SampleStream s = derive_stream(p.seed, i);
    TraceSample ts = compute_U(sample_ege(s, p), p.t, kmax);
    ts.sample_index = i;
    return ts;
  });
}

namespace {

// Jackknife standard error from leave-one-out replicates.
template <class T>
double jackknife_se(const std::vector<T>& loo) {
  const double m = static_cast<double>(loo.size());
  T avg{};
  for (const auto& v : loo) avg += v;
  avg /= m;
  double ss = 0.0;
  for (const auto& v : loo) ss += std::norm(v - avg);
  return std::sqrt((m - 1.0) / m * ss);
}

}  // namespace

MomentEstimate estimate_moments(const std::vector<TraceSample>& samples) {
  const std::size_t reps = samples.size();
  if (reps < 2) throw DomainError("estimate_moments: need at least two samples");
  const int kmax = static_cast<int>(samples.front().u.size());
  const double N = static_cast<double>(reps);
  const double M = N - 1.0;

  MomentEstimate est;
  est.reps = static_cast<int>(reps);
  est.kmax = kmax;
  est.mean.assign(kmax, cplx{});
  est.mean_se.assign(kmax, 0.0);
  for (const auto& s : samples) {
    if (static_cast<int>(s.u.size()) != kmax) throw DimensionError("estimate_moments: ragged samples");
    for (int k = 0; k < kmax; ++k) est.mean[k] += s.u[k];
  }
  for (auto& m : est.mean) m /= N;

  // Centered data.
  std::vector<std::vector<cplx>> v(kmax, std::vector<cplx>(reps));
  for (std::size_t i = 0; i < reps; ++i)
    for (int k = 0; k < kmax; ++k) v[k][i] = samples[i].u[k] - est.mean[k];

  std::vector<cplx> loo(reps);
  for (int k = 0; k < kmax; ++k) {
    for (std::size_t i = 0; i < reps; ++i) loo[i] = -v[k][i] / M;  // shift of the mean, centered frame
    est.mean_se[k] = jackknife_se(loo);
  }

  auto fill = [&](CTable& table, bool conj) {
    table.size = kmax;
    table.values.assign(static_cast<std::size_t>(kmax) * kmax, cplx{});
    table.stderr_.assign(static_cast<std::size_t>(kmax) * kmax, 0.0);
    for (int j = 0; j < kmax; ++j) {
      for (int k = 0; k < kmax; ++k) {
        const auto& x = v[j];
        const auto& y = v[k];
        cplx sxy{};
        for (std::size_t i = 0; i < reps; ++i) sxy += x[i] * (conj ? std::conj(y[i]) : y[i]);
        table.values[j * kmax + k] = sxy / N;
        // Sums of x and y vanish in the centered frame.
        for (std::size_t i = 0; i < reps; ++i) {
          const cplx yi = conj ? std::conj(y[i]) : y[i];
          const cplx mx = -x[i] / M;
          const cplx my = -yi / M;
          loo[i] = (sxy - x[i] * yi) / M - mx * my;
        }
        table.stderr_[j * kmax + k] = jackknife_se(loo);
      }
    }
  };
  fill(est.cov_sq, false);
  fill(est.cov_abs, true);

  est.cum4.assign(kmax, 0.0);
  est.cum4_se.assign(kmax, 0.0);
  std::vector<double> loo_r(reps);
  for (int k = 0; k < kmax; ++k) {
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
      const double x = v[k][i].real();
      s1 += x;
      s2 += x * x;
      s3 += x * x * x;
      s4 += x * x * x * x;
    }
    auto cumulant = [](double n, double r1, double r2, double r3, double r4) {
      const double mu = r1 / n;
      const double m2 = r2 / n - mu * mu;
      const double m4 = r4 / n - 4.0 * mu * r3 / n + 6.0 * mu * mu * r2 / n - 3.0 * mu * mu * mu * mu;
      return m4 - 3.0 * m2 * m2;
    };
    est.cum4[k] = cumulant(N, s1, s2, s3, s4);
    for (std::size_t i = 0; i < reps; ++i) {
      const double x = v[k][i].real();
      loo_r[i] = cumulant(M, s1 - x, s2 - x * x, s3 - x * x * x, s4 - x * x * x * x);
    }
    est.cum4_se[k] = jackknife_se(loo_r);
  }
  return est;
}

MomentEstimate mc_moments(const EgeParams& p, int reps, int kmax) {
  if (reps < 100) throw DomainError("mc_moments: reps must be >= 100");
  return estimate_moments(sample_traces(p, reps, kmax));
}

std::vector<cplx> coeff_from_traces(const TraceSample& u, int m) {
  if (m < 0 || m > static_cast<int>(u.u.size())) throw DomainError("coeff_from_traces: need 0 <= m <= kmax");
  std::vector<cplx> xi(static_cast<std::size_t>(m) + 1, cplx{});
  xi[0] = 1.0;
  for (int j = 1; j <= m; ++j) {
    cplx s{};
    for (int r = 1; r <= j; ++r) s += u.u[r - 1] * xi[j - r];
    xi[j] = -s / static_cast<double>(j);
  }
  return xi;
}

std::string moment_estimate_csv(const MomentEstimate& est) {
  std::ostringstream out;
  out << "j,k,re,im,stderr,kind\n";
  auto row = [&](int j, int k, cplx v, double se, const char* kind) {
    out << j << ',' << k << ',' << fmt_double(v.real()) << ',' << fmt_double(v.imag()) << ',' << fmt_double(se) << ','
        << kind << '\n';
  };
  for (int k = 1; k <= est.kmax; ++k) row(k, k, est.mean[k - 1], est.mean_se[k - 1], "mean");
  for (int j = 1; j <= est.kmax; ++j)
    for (int k = 1; k <= est.kmax; ++k) row(j, k, est.cov_sq.at(j, k), est.cov_sq.se(j, k), "cov_sq");
  for (int j = 1; j <= est.kmax; ++j)
    for (int k = 1; k <= est.kmax; ++k) row(j, k, est.cov_abs.at(j, k), est.cov_abs.se(j, k), "cov_abs");
  for (int k = 1; k <= est.kmax; ++k) row(k, k, est.cum4[k - 1], est.cum4_se[k - 1], "cum4");
  return out.str();
}

std::string moment_estimate_json(const MomentEstimate& est) {
  nlohmann::ordered_json j;
  j["reps"] = est.reps;
  j["kmax"] = est.kmax;
  auto cell = [](cplx v, double se) { return nlohmann::ordered_json{{"re", v.real()}, {"im", v.imag()}, {"stderr", se}}; };
  nlohmann::ordered_json mean = nlohmann::ordered_json::array();
  for (int k = 0; k < est.kmax; ++k) mean.push_back(cell(est.mean[k], est.mean_se[k]));
  j["mean"] = mean;
  auto table = [&](const CTable& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int a = 1; a <= t.size; ++a)
      for (int b = 1; b <= t.size; ++b) {
        auto c = cell(t.at(a, b), t.se(a, b));
        c["j"] = a;
        c["k"] = b;
        arr.push_back(c);
      }
    return arr;
  };
  j["cov_sq"] = table(est.cov_sq);
  j["cov_abs"] = table(est.cov_abs);
  nlohmann::ordered_json cum = nlohmann::ordered_json::array();
  for (int k = 0; k < est.kmax; ++k) cum.push_back(cell(est.cum4[k], est.cum4_se[k]));
  j["cum4"] = cum;
  return j.dump(2);
}

}  // namespace egelab
