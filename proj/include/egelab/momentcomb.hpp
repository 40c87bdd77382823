#pragma once

#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "egelab/chebmod.hpp"
#include "egelab/wickoracle.hpp"

namespace egelab {

using BigRational = boost::multiprecision::cpp_rational;

[[nodiscard]] BigInt catalan(int m);

/// n (n-1) ... (n-m+1); 0 when m > n.
[[nodiscard]] BigInt falling(long n, int m);

[[nodiscard]] BigInt binomial(int n, int k);

/// l C(p, (p-l)/2) C(q, (q-l)/2) when p-l and q-l are even and nonnegative, else 0.
[[nodiscard]] BigInt nc_pairings(int l, int p, int q);

/// Limiting E[V V'] pairing for monomials X^p, X^q.
[[nodiscard]] double phi_monomial(double t, int p, int q);
/// Limiting E[V conj(V')] pairing for monomials X^p, X^q.
[[nodiscard]] double phi_c_monomial(double t, int p, int q);

/// Bilinear extensions; constant terms contribute nothing.
[[nodiscard]] double phi_poly(double t, const PolyReal& p, const PolyReal& q);
[[nodiscard]] double phi_c_poly(double t, const PolyReal& p, const PolyReal& q);

/// -1/2 sum_q alpha^{(2m)}_{2m-2q} t^{m-q} C_{m-q} (m-q+1)(m-q).
[[nodiscard]] double l_tree(int m, double t);

/// sum_{r=0}^{k-l} (-1)^r / (2k-r) C(2(k-r), k-r-l) C(2k-r, r).
[[nodiscard]] BigRational binomial_sum_even(int k, int l);
/// sum_{r=0}^{k+1-l} (-1)^r / (2k+1-r) C(2(k-r)+1, k+1-r-l) C(2k+1-r, r).
[[nodiscard]] BigRational binomial_sum_odd(int k, int l);

/// Largest k accepted by h_coeff (trace moments of degree 2k are enumerated exactly).
inline constexpr int kMaxHCoeff = 6;

/// Limit constant of E U_{2k} as a polynomial in t with rational coefficients, obtained by exact
/// interpolation of n^{k+1} E U_{2k} over k+3 values of n. Entry d multiplies t^d.
[[nodiscard]] std::vector<BigRational> expectation_limit_polynomial(int k);

/// lim E U_{2k} + k t^k.
[[nodiscard]] double h_coeff(int k, double t);

struct CovTable {
  double t = 0.0;
  int max_degree = 0;
  std::map<std::pair<int, int>, double> phi;
  std::map<std::pair<int, int>, double> phi_c;
};

/// All (p, q) with 1 <= p, q <= max_degree.
[[nodiscard]] CovTable build_cov_table(double t, int max_degree);

[[nodiscard]] std::string cov_table_json(const CovTable& table);
[[nodiscard]] CovTable cov_table_from_json(const std::string& text);

}  // namespace egelab
