#include "egelab/chebmod.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "egelab/errors.hpp"

namespace egelab {

namespace {

// Binomial coefficient as a double, exact while the value stays below 2^53.
double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

}  // namespace

PolyReal cheb_poly(int k, double t) {
  if (k < 0) throw DomainError("cheb_poly: k must be >= 0");
  if (k == 0) return {{2.0}};
  std::vector<double> prev{2.0};
  std::vector<double> cur{0.0, 1.0};
  for (int d = 1; d < k; ++d) {
    std::vector<double> next(static_cast<std::size_t>(d) + 2, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= t * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {cur};
}

PolyReal cheb_coeffs_closed(int k, double t) {
  if (k < 1) throw DomainError("cheb_coeffs_closed: k must be >= 1");
  PolyReal p{std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0)};
  for (int j = 0; 2 * j <= k; ++j) {
    // k/(k-j) C(k-j, j) = C(k-j, j) + C(k-j-1, j-1), an integer.
    const double count = j == 0 ? 1.0 : binom(k - j, j) + binom(k - j - 1, j - 1);
    p.coeffs[static_cast<std::size_t>(k - 2 * j)] = std::pow(-t, j) * count;
  }
  return p;
}

std::complex<double> eval_poly(const PolyReal& p, std::complex<double> w) {
  std::complex<double> acc{0.0, 0.0};
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * w + *it;
  return acc;
}

}  // namespace egelab
