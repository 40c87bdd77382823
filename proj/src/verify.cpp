#include "egelab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "egelab/charpoly.hpp"
#include "egelab/chebmod.hpp"
#include "egelab/cli.hpp"
#include "egelab/gaflimit.hpp"
#include "egelab/hermite.hpp"
#include "egelab/momentcomb.hpp"
#include "egelab/parallel.hpp"
#include "egelab/sampling.hpp"
#include "egelab/spectrum.hpp"
#include "egelab/tracestats.hpp"
#include "egelab/wickoracle.hpp"

namespace egelab {

namespace {

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// Collects named sub-checks; the first few failures go into the detail line.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 4) failures_ += (failures_.empty() ? "" : "; ") + what;
  }
  [[nodiscard]] bool ok() const { return failed_ == 0; }
  [[nodiscard]] std::string summary(const std::string& extra = {}) const {
    std::string s = format("%d/%d checks passed", total_ - failed_, total_);
    if (!extra.empty()) s += ", " + extra;
    if (!failures_.empty()) s += "; failed: " + failures_;
    return s;
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::string failures_;
};

std::uint64_t criterion_seed(std::uint64_t seed, int id, std::uint64_t sub = 0) {
  return seed * 1'000'003ULL + static_cast<std::uint64_t>(id) * 10'007ULL + sub;
}

struct MeanSe {
  cplx mean;
  double se;
};

MeanSe mean_se(const std::vector<cplx>& xs) {
  const double n = static_cast<double>(xs.size());
  cplx m{};
  for (cplx x : xs) m += x;
  m /= n;
  double ss = 0.0;
  for (cplx x : xs) ss += std::norm(x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

double rel_gap(double log_a, double log_b) { return std::fabs(std::expm1(log_a - log_b)); }

// ---------------------------------------------------------------------------------------------

CriterionResult criterion_exact_vs_mc(std::uint64_t seed) {
  const EgeParams p{50, 0.5, criterion_seed(seed, 1)};
  const cplx z{0.3, 0.3};
  constexpr int reps = 10000;
  const auto vals = parallel_map<cplx>(reps, [&](std::size_t i) {
    SampleStream s = derive_stream(p.seed, i);
    return cplx{std::exp(2.0 * eval_f(sample_ege(s, p), p.t, z).log_abs()), 0.0};
  });
  const MeanSe m = mean_se(vals);
  const double exact = std::exp(exact_second_moment(50, 0.5, z));
  const double dev = std::fabs(m.mean.real() - exact) / m.se;
  return {1, "second moment: exact Hermite formula vs Monte Carlo", dev <= 3.0,
          format("MC %.6f +- %.6f, exact %.6f, %.2f SE", m.mean.real(), m.se, exact, dev)};
}

CriterionResult criterion_n1_closed_form() {
  Checks c;
  double worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double t = 0.1 * i;
    for (int j = 0; j < 10; ++j) {
      const double r = 0.05 + 0.09 * j;
      const cplx z = std::polar(r, 0.7 * j + 0.3 * i);
      const cplx w = 1.0 + t * z * z;
      const double closed = std::log(std::norm(w) + std::norm(z)) - t * (z * z).real();
      const double err = std::fabs(exact_second_moment(1, t, z) - closed);
      worst = std::max(worst, err);
      c.expect(err <= 1e-12, format("t=%.1f z=%.3f%+.3fi err=%.2e", t, z.real(), z.imag(), err));
    }
  }
  return {2, "second moment: n = 1 closed form", c.ok(), c.summary(format("max error %.2e", worst))};
}

CriterionResult criterion_limit_triangle() {
  Checks c;
  const double t = 0.5;
  double worst = 0.0;
  for (cplx z : {cplx{0.3, 0.0}, cplx{0.4, 0.0}, cplx{0.0, 0.4}, cplx{0.25, 0.25}}) {
    const double exact = exact_second_moment(4000, t, z);
    const double lim = std::log(limit_second_moment(t, z));
    const double asym = asymptotic_second_moment(t, z);
    const double g1 = rel_gap(exact, lim);
    const double g2 = rel_gap(exact, asym);
    worst = std::max({worst, g1, g2});
    c.expect(g1 < 0.01, format("z=%.2f%+.2fi exact vs limit %.3e", z.real(), z.imag(), g1));
    c.expect(g2 < 0.01, format("z=%.2f%+.2fi exact vs asymptotic %.3e", z.real(), z.imag(), g2));
  }
  return {3, "second moment: exact (n = 4000), limit and asymptotic agree", c.ok(),
          c.summary(format("max relative gap %.2e", worst))};
}

CriterionResult criterion_trace_clt(std::uint64_t seed) {
  Checks c;
  constexpr int kmax = 5;
  double worst_diag = 0.0;
  double worst_off = 0.0;
  for (int ti = 0; ti < 3; ++ti) {
    const double t = 0.5 * ti;
    const EgeParams p{300, t, criterion_seed(seed, 4, static_cast<std::uint64_t>(ti))};
    const MomentEstimate est = mc_moments(p, 2000, kmax);
    for (int k = 1; k <= kmax; ++k) {
      const double target_sq = k * std::pow(t, k);
      const double d_sq = std::abs(est.cov_sq.at(k, k) - target_sq) / est.cov_sq.se(k, k);
      const double d_abs = std::abs(est.cov_abs.at(k, k) - static_cast<double>(k)) / est.cov_abs.se(k, k);
      const double d_cum = std::fabs(est.cum4[k - 1]) / est.cum4_se[k - 1];
      worst_diag = std::max({worst_diag, d_sq, d_abs});
      worst_off = std::max(worst_off, d_cum);
      c.expect(d_sq <= 3.0, format("t=%.1f E V%d^2 off by %.2f SE", t, k, d_sq));
      c.expect(d_abs <= 3.0, format("t=%.1f E|V%d|^2 off by %.2f SE", t, k, d_abs));
      c.expect(d_cum <= 4.0, format("t=%.1f cum4(V%d) = %.2f SE", t, k, d_cum));
      for (int j = 1; j <= kmax; ++j) {
        if (j == k) continue;
        const double o_sq = std::abs(est.cov_sq.at(j, k)) / est.cov_sq.se(j, k);
        const double o_abs = std::abs(est.cov_abs.at(j, k)) / est.cov_abs.se(j, k);
        worst_off = std::max({worst_off, o_sq, o_abs});
        c.expect(o_sq <= 4.0, format("t=%.1f E V%dV%d = %.2f SE", t, j, k, o_sq));
        c.expect(o_abs <= 4.0, format("t=%.1f E V%d conj V%d = %.2f SE", t, j, k, o_abs));
      }
    }
  }
  return {4, "trace CLT: diagonal covariance of Chebyshev traces", c.ok(),
          c.summary(format("worst diagonal %.2f SE, worst zero-target %.2f SE", worst_diag, worst_off))};
}

// Integer-coefficient polynomials in (t, X): entry [d][e] multiplies t^d X^e.
using IntPoly2 = std::vector<std::vector<BigInt>>;

IntPoly2 cheb_exact(int k) {
  IntPoly2 prev(1, std::vector<BigInt>(1, 2));  // P_0 = 2
  IntPoly2 cur(1, std::vector<BigInt>{0, 1});   // P_1 = X
  if (k == 0) return prev;
  for (int d = 1; d < k; ++d) {
    IntPoly2 next(static_cast<std::size_t>(d) + 1, std::vector<BigInt>(static_cast<std::size_t>(d) + 2, 0));
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = 0; b < cur[a].size(); ++b) next[a][b + 1] += cur[a][b];
    for (std::size_t a = 0; a < prev.size(); ++a)
      for (std::size_t b = 0; b < prev[a].size(); ++b) next[a + 1][b] -= prev[a][b];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

CriterionResult criterion_exact_identities() {
  Checks c;
  // Recurrence against closed form, exactly in (t, X) and numerically at sample t.
  for (int k = 1; k <= 20; ++k) {
    const IntPoly2 rec = cheb_exact(k);
    bool same = true;
    for (std::size_t d = 0; d < rec.size(); ++d) {
      for (std::size_t e = 0; e < rec[d].size(); ++e) {
        BigInt closed = 0;
        if (static_cast<int>(e) == k - 2 * static_cast<int>(d)) {
          const int j = static_cast<int>(d);
          closed = j == 0 ? BigInt(1) : binomial(k - j, j) + binomial(k - j - 1, j - 1);
          if (j % 2 == 1) closed = -closed;
        }
        if (closed != rec[d][e]) same = false;
      }
    }
    c.expect(same, format("exact Chebyshev coefficients k=%d", k));
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const PolyReal a = cheb_poly(k, t);
      const PolyReal b = cheb_coeffs_closed(k, t);
      bool close = a.coeffs.size() == b.coeffs.size();
      for (std::size_t i = 0; close && i < a.coeffs.size(); ++i)
        close = std::fabs(a.coeffs[i] - b.coeffs[i]) <= 1e-12 * std::max(1.0, std::fabs(b.coeffs[i]));
      c.expect(close, format("Chebyshev recurrence vs closed form k=%d t=%.2f", k, t));
    }
  }
  for (int k = 1; k <= 12; ++k) {
    for (int l = 1; l <= k; ++l) {
      const BigRational v = binomial_sum_even(k, l);
      const BigRational want = l == k ? BigRational(1, 2 * l) : BigRational(0);
      c.expect(v == want, format("even binomial sum k=%d l=%d", k, l));
    }
  }
  for (int k = 0; k <= 11; ++k) {
    for (int l = 1; l <= k + 1; ++l) {
      const BigRational v = binomial_sum_odd(k, l);
      const BigRational want = l == k + 1 ? BigRational(1, 2 * l - 1) : BigRational(0);
      c.expect(v == want, format("odd binomial sum k=%d l=%d", k, l));
    }
  }
  for (int m = 1; m <= 8; ++m) {
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      const double want = -m * std::pow(t, m);
      c.expect(std::fabs(l_tree(m, t) - want) <= 1e-12 * std::max(1.0, std::fabs(want)),
               format("l_tree m=%d t=%.2f", m, t));
    }
  }
  for (int m = 1; m <= 6; ++m) {
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const PolyReal p = cheb_poly(2 * m, t);
      const double root_t = std::sqrt(t);
      auto integrand = [&](double th) {
        const double s = std::sin(th);
        return eval_poly(p, cplx{2.0 * root_t * std::cos(th), 0.0}).real() * s * s;
      };
      const double q = 4.0 / std::numbers::pi *
                       boost::math::quadrature::gauss<double, 30>::integrate(integrand, 0.0, std::numbers::pi / 2);
      const double want = m == 1 ? -t : 0.0;
      c.expect(std::fabs(q - want) <= 1e-8, format("S' quadrature m=%d t=%.2f", m, t));
    }
  }
  for (double t : {0.0, 0.25, 0.5, 1.0}) {
    for (int k = 1; k <= 8; ++k) {
      for (int l = 1; l <= 8; ++l) {
        const PolyReal pk = cheb_poly(k, t);
        const PolyReal pl = cheb_poly(l, t);
        const double want = k == l ? k * std::pow(t, k) : 0.0;
        const double want_c = k == l ? k : 0.0;
        c.expect(std::fabs(phi_poly(t, pk, pl) - want) <= 1e-9, format("phi(P%d,P%d) t=%.2f", k, l, t));
        c.expect(std::fabs(phi_c_poly(t, pk, pl) - want_c) <= 1e-9, format("phi_c(P%d,P%d) t=%.2f", k, l, t));
      }
    }
  }
  return {5, "exact identities: Chebyshev, binomial sums, tree constant, quadrature, diagonalization",
          c.ok(), c.summary()};
}

CriterionResult criterion_graph_laws() {
  Checks c;
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 5; ++n) {
      const BigInt want = falling(n, m + 1) * catalan(m);
      const BigInt got = count_class(n, 2 * m, GraphKind::DoubleTree);
      c.expect(got == want, format("double-tree count n=%d k=%d", n, 2 * m));
    }
  }
  for (int k = 1; k <= 5; ++k) {
    const int n = 5;
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    long total = 1;
    for (int j = 0; j < k; ++j) total *= n;
    bool all_zero = true;
    for (long step = 0; step < total; ++step) {
      if (has_simple_edge(idx)) {
        std::vector<WickEdge> edges;
        for (int j = 0; j < k; ++j) edges.push_back({idx[j], idx[(j + 1) % k], false});
        if (!wick_pair_polynomial(edges).is_zero()) all_zero = false;
      }
      for (int j = k - 1; j >= 0; --j) {
        if (++idx[j] < n) break;
        idx[j] = 0;
      }
    }
    c.expect(all_zero, format("simple-edge tuples have zero weight, k=%d", k));
  }
  for (int n = 1; n <= 8; ++n) {
    const TPoly tr2 = exact_trace_polynomial(n, 2);
    c.expect(tr2 == TPoly{{0, BigInt(n) * n}}, format("E Tr A^2 = n^2 t at n=%d", n));
    // e_2 = E Tr A^2 / n - 2 t n + n t, exactly.
    std::vector<BigRational> e2(2, 0);
    for (std::size_t d = 0; d < tr2.coeffs.size(); ++d) e2[d] += BigRational(tr2.coeffs[d], BigInt(n));
    e2[1] += BigRational(-2 * n + n);
    c.expect(e2[0] == 0 && e2[1] == 0, format("e_2 = 0 at n=%d", n));
  }
  for (double t : {0.0, 0.25, 0.5, 1.0}) c.expect(std::fabs(h_coeff(1, t) - t) <= 1e-15, format("h_1 at t=%.2f", t));
  return {6, "graph oracle laws: tree counts, simple edges, second trace moment, h_1", c.ok(), c.summary()};
}

CriterionResult criterion_scaled_covariance() {
  Checks c;
  const std::vector<std::pair<int, int>> pairs{{1, 1}, {2, 2}, {1, 3}, {2, 4}, {3, 3}};
  const int ns[3] = {4, 6, 8};
  double worst = 0.0;
  for (double t : {0.0, 0.5, 1.0}) {
    for (const auto& [k1, k2] : pairs) {
      for (bool conj2 : {false, true}) {
        double s[3];
        for (int i = 0; i < 3; ++i) {
          const double cov = exact_product_covariance(ns[i], k1, k2, conj2, t).real();
          s[i] = cov / std::pow(static_cast<double>(ns[i]), 0.5 * (k1 + k2));
        }
        // Value at 1/n = 0 of the quadratic through the three points.
        double c0 = 0.0;
        for (int i = 0; i < 3; ++i) {
          double w = 1.0;
          for (int j = 0; j < 3; ++j)
            if (j != i) w *= (0.0 - 1.0 / ns[j]) / (1.0 / ns[i] - 1.0 / ns[j]);
          c0 += w * s[i];
        }
        const double target = conj2 ? phi_c_monomial(t, k1, k2) : phi_monomial(t, k1, k2);
        const double gap = std::fabs(c0 - target);
        if (target != 0.0) worst = std::max(worst, gap / std::fabs(target));
        c.expect(gap <= 0.05 * std::fabs(target) + 1e-9,
                 format("(%d,%d)%s t=%.1f: %.5f vs %.5f", k1, k2, conj2 ? " conj" : "", t, c0, target));
      }
    }
  }
  return {7, "scaled exact covariances extrapolate to the limit table", c.ok(),
          c.summary(format("max relative gap %.2e", worst))};
}

CriterionResult criterion_outliers(std::uint64_t seed) {
  const EgeParams p{256, 0.5, criterion_seed(seed, 8)};
  const EllipseSpec e{0.5, 1.1};
  constexpr int runs = 100;
  const auto reports = parallel_map<OutlierReport>(runs, [&](std::size_t i) {
    SampleStream s = derive_stream(p.seed, i);
    return analyze_outliers(sample_ege(s, p), e);
  });
  int clean = 0, agree = 0, unconverged = 0, unreliable = 0;
  for (const auto& r : reports) {
    if (!r.converged) ++unconverged;
    if (!r.zero_count.reliable) ++unreliable;
    if (r.converged && r.eigen_outliers == 0) ++clean;
    if (r.converged && r.agree()) ++agree;
  }
  const bool ok = clean >= 95 && agree >= 98;
  return {8, "no outliers outside the inflated ellipse (n = 256, t = 0.5, c = 1.1)", ok,
          format("outlier-free runs %d/100 (need 95), detectors agree %d/100 (need 98), "
                 "unconverged %d, contour flagged %d",
                 clean, agree, unconverged, unreliable)};
}

CriterionResult criterion_limit_law(std::uint64_t seed) {
  Checks c;
  const std::vector<cplx> zs{{0.3, 0.0}, {0.0, 0.4}, {0.25, 0.25}};
  constexpr int finite_reps = 200;
  constexpr int limit_draws = 40000;
  double worst = 0.0;
  for (int ti = 0; ti < 3; ++ti) {
    const double t = 0.5 * ti;
    const EgeParams p{800, t, criterion_seed(seed, 9, static_cast<std::uint64_t>(ti))};
    const auto finite = parallel_map<std::vector<cplx>>(finite_reps, [&](std::size_t i) {
      SampleStream s = derive_stream(p.seed, i);
      const CMatrix a = sample_ege(s, p);
      std::vector<cplx> out;
      for (cplx z : zs) out.push_back(eval_f(a, t, z).value());
      return out;
    });
    const std::uint64_t lim_seed = criterion_seed(seed, 9, 100 + static_cast<std::uint64_t>(ti));
    const auto limit = parallel_map<std::vector<cplx>>(limit_draws, [&](std::size_t i) {
      SampleStream s = derive_stream(lim_seed, i);
      return sample_f_limit(s, t, kDefaultGafTruncation, zs);
    });
    for (std::size_t zi = 0; zi < zs.size(); ++zi) {
      std::vector<cplx> fv, fa, lv, la;
      for (const auto& row : finite) {
        fv.push_back(row[zi]);
        fa.push_back(std::norm(row[zi]));
      }
      for (const auto& row : limit) {
        lv.push_back(row[zi]);
        la.push_back(std::norm(row[zi]));
      }
      const MeanSe m1 = mean_se(fv), m2 = mean_se(lv), a1 = mean_se(fa), a2 = mean_se(la);
      const double d_mean = std::abs(m1.mean - m2.mean) / std::hypot(m1.se, m2.se);
      const double d_abs = std::abs(a1.mean - a2.mean) / std::hypot(a1.se, a2.se);
      worst = std::max({worst, d_mean, d_abs});
      const cplx z = zs[zi];
      c.expect(d_mean <= 4.0, format("t=%.1f z=%.2f%+.2fi mean off by %.2f SE", t, z.real(), z.imag(), d_mean));
      c.expect(d_abs <= 4.0, format("t=%.1f z=%.2f%+.2fi E|f|^2 off by %.2f SE", t, z.real(), z.imag(), d_abs));
    }
  }
  return {9, "limit law: finite-n (n = 800) moments match the limiting random function", c.ok(),
          c.summary(format("worst %.2f SE", worst))};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

CriterionResult criterion_determinism(const std::string& scratch_dir) {
  namespace fs = std::filesystem;
  Checks c;
  fs::create_directories(scratch_dir);
  struct Job {
    std::string name;
    std::vector<std::string> args;
  };
  const std::vector<Job> jobs{
      {"portrait.ppm", {"portrait", "--n", "40", "--t", "0.5", "--seed", "11", "--res", "48"}},
      {"traces.csv", {"traces", "--n", "30", "--t", "0.5", "--seed", "11", "--reps", "120", "--kmax", "4", "--format", "csv"}},
      {"gaf.csv", {"gaf", "--t", "0.5", "--seed", "11", "--reps", "50"}},
      {"spectrum.csv", {"spectrum", "--n", "60", "--t", "0.5", "--seed", "11"}},
  };
  for (const auto& job : jobs) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const std::string path = (fs::path(scratch_dir) / (std::to_string(run) + "_" + job.name)).string();
      std::vector<std::string> args = job.args;
      args.insert(args.end(), {"--out", path});
      std::ostringstream out, err;
      const int code = run_cli(args, out, err);
      c.expect(code == kExitOk, job.name + " exit code " + std::to_string(code) + ": " + err.str());
      const std::string bytes = slurp(path);
      c.expect(!bytes.empty(), job.name + " produced no output");
      if (run == 0) {
        first = bytes;
      } else {
        c.expect(bytes == first, job.name + " differs between runs");
      }
    }
  }
  return {10, "determinism: repeated runs give bitwise-identical artifacts", c.ok(), c.summary()};
}

}  // namespace

std::vector<int> tier_criteria(Tier tier) {
  if (tier == Tier::Quick) return {2, 5, 6};
  return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
}

CriterionResult run_criterion(int id, std::uint64_t seed, const std::string& scratch_dir) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = criterion_exact_vs_mc(seed); break;
    case 2: r = criterion_n1_closed_form(); break;
    case 3: r = criterion_limit_triangle(); break;
    case 4: r = criterion_trace_clt(seed); break;
    case 5: r = criterion_exact_identities(); break;
    case 6: r = criterion_graph_laws(); break;
    case 7: r = criterion_scaled_covariance(); break;
    case 8: r = criterion_outliers(seed); break;
    case 9: r = criterion_limit_law(seed); break;
    case 10: r = criterion_determinism(scratch_dir); break;
    default: throw std::out_of_range("run_criterion: unknown criterion " + std::to_string(id));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_suite(Tier tier, std::uint64_t seed, const std::string& scratch_dir,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id : tier_criteria(tier)) {
    results.push_back(run_criterion(id, seed, scratch_dir));
    if (on_result) on_result(results.back());
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  return format("[%s] %d %s (%.1f s): ", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds) + r.detail;
}

}  // namespace egelab
