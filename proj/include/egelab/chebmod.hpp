#pragma once

#include <complex>
#include <vector>

namespace egelab {

/// Real polynomial; coeffs[d] multiplies X^d.
struct PolyReal {
  std::vector<double> coeffs;

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  friend bool operator==(const PolyReal&, const PolyReal&) = default;
};

/// P_k via P_{k+1} = X P_k - t P_{k-1}, P_0 = 2, P_1 = X.
[[nodiscard]] PolyReal cheb_poly(int k, double t);

/// Same polynomial from the closed form (-t)^j k/(k-j) C(k-j, j) for the X^{k-2j} coefficient.
[[nodiscard]] PolyReal cheb_coeffs_closed(int k, double t);

/// Horner evaluation.
[[nodiscard]] std::complex<double> eval_poly(const PolyReal& p, std::complex<double> w);

}  // namespace egelab
