#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "egelab/chebmod.hpp"
#include "egelab/errors.hpp"

using namespace egelab;
using cplx = std::complex<double>;

namespace {

// coeff[d][j]: coefficient of X^d t^j in P_k, from the recurrence over the integers.
using IntPoly2 = std::vector<std::vector<long long>>;

IntPoly2 exact_cheb(int k) {
  IntPoly2 p0{{2}}, p1{{0}, {1}};
  if (k == 0) return p0;
  for (int m = 1; m < k; ++m) {
    IntPoly2 next(m + 2, std::vector<long long>(m + 2, 0));
    for (std::size_t d = 0; d < p1.size(); ++d)
      for (std::size_t j = 0; j < p1[d].size(); ++j) next[d + 1][j] += p1[d][j];
    for (std::size_t d = 0; d < p0.size(); ++d)
      for (std::size_t j = 0; j < p0[d].size(); ++j) next[d][j + 1] -= p0[d][j];
    p0 = p1;
    p1 = next;
  }
  return p1;
}

double coeff_at(const IntPoly2& p, std::size_t d, double t) {
  if (d >= p.size()) return 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < p[d].size(); ++j) s += double(p[d][j]) * std::pow(t, double(j));
  return s;
}

}  // namespace

TEST_CASE("low-degree polynomials") {
  CHECK(cheb_poly(0, 0.3).coeffs == std::vector<double>{2.0});
  CHECK(cheb_poly(1, 0.3).coeffs == std::vector<double>{0.0, 1.0});
  const double t = 0.3;
  const PolyReal p2 = cheb_poly(2, t);
  CHECK(p2.coeffs == std::vector<double>{-2 * t, 0.0, 1.0});
  const PolyReal p4 = cheb_poly(4, t);
  REQUIRE(p4.degree() == 4);
  CHECK(p4.coeffs[0] == doctest::Approx(2 * t * t));
  CHECK(p4.coeffs[2] == doctest::Approx(-4 * t));
  CHECK(p4.coeffs[4] == 1.0);
  CHECK_THROWS_AS((void)cheb_poly(-1, t), DomainError);
}

TEST_CASE("closed-form coefficients") {
  const double t = 0.7;
  CHECK(cheb_coeffs_closed(1, t).coeffs == std::vector<double>{0.0, 1.0});
  const PolyReal c2 = cheb_coeffs_closed(2, t);
  CHECK(c2.coeffs[2] == 1.0);
  CHECK(c2.coeffs[0] == doctest::Approx(-2 * t));
  const PolyReal c3 = cheb_coeffs_closed(3, t);
  CHECK(c3.coeffs[3] == 1.0);
  CHECK(c3.coeffs[1] == doctest::Approx(-3 * t));
  CHECK(c3.coeffs[0] == 0.0);
  CHECK(c3.coeffs[2] == 0.0);
  CHECK_THROWS_AS((void)cheb_coeffs_closed(0, t), DomainError);
}

TEST_CASE("recurrence, closed form and exact integer oracle agree") {
  for (int k = 1; k <= 20; ++k) {
    const IntPoly2 exact = exact_cheb(k);
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const PolyReal r = cheb_poly(k, t);
      const PolyReal c = cheb_coeffs_closed(k, t);
      REQUIRE(r.degree() == k);
      REQUIRE(c.degree() == k);
      for (int d = 0; d <= k; ++d) {
        const double want = coeff_at(exact, d, t);
        CHECK(std::abs(r.coeffs[d] - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        CHECK(std::abs(c.coeffs[d] - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        if ((k - d) % 2 != 0) {
          CHECK(r.coeffs[d] == 0.0);
          CHECK(c.coeffs[d] == 0.0);
        }
      }
    }
  }
}

TEST_CASE("t = 0 gives monomials") {
  for (int k = 1; k <= 12; ++k) {
    std::vector<double> mono(k + 1, 0.0);
    mono[k] = 1.0;
    CHECK(cheb_poly(k, 0.0).coeffs == mono);
  }
}

TEST_CASE("eval_poly") {
  CHECK(eval_poly({{2.0}}, {3.0, -1.0}) == cplx{2.0, 0.0});
  const double t = 0.25, th = std::numbers::pi / 3;
  CHECK(eval_poly(cheb_poly(2, t), 2 * std::sqrt(t) * std::cos(th)).real() == doctest::Approx(-0.25));
  CHECK(eval_poly(cheb_poly(5, 1.0), 2 * std::cos(0.7)).real() == doctest::Approx(2 * std::cos(3.5)));
}

TEST_CASE("scaling relation") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const cplx w{u(gen), u(gen)};
    for (int k = 0; k <= 12; ++k)
      for (double t : {0.25, 0.5, 1.0}) {
        const cplx lhs = eval_poly(cheb_poly(k, t), w);
        const cplx rhs = std::pow(t, k / 2.0) * eval_poly(cheb_poly(k, 1.0), w / std::sqrt(t));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
      }
  }
}

TEST_CASE("trigonometric identity") {
  for (int k = 0; k <= 12; ++k)
    for (double t : {0.1, 0.5, 1.0})
      for (int i = 0; i <= 24; ++i) {
        const double th = std::numbers::pi * i / 24;
        const double got = eval_poly(cheb_poly(k, t), 2 * std::sqrt(t) * std::cos(th)).real();
        CHECK(std::abs(got - 2 * std::pow(t, k / 2.0) * std::cos(k * th)) < 1e-10);
      }
}

TEST_CASE("generating function") {
  for (double t : {0.0, 0.5, 1.0})
    for (cplx z : {cplx{0.2, 0.0}, cplx{0.1, -0.15}, cplx{0.0, 0.2}})
      for (cplx w : {cplx{1.0, 0.0}, cplx{-0.3, 0.6}, cplx{0.0, -1.0}}) {
        cplx s = 0.0;
        for (int k = 1; k <= 40; ++k) s += eval_poly(cheb_poly(k, t), w) * std::pow(z, k) / double(k);
        CHECK(std::abs(s + std::log(1.0 + t * z * z - z * w)) < 1e-8);
      }
}
