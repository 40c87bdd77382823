#include "egelab/momentcomb.hpp"

#include <cmath>
#include <mutex>

#include <json.hpp>

#include "egelab/errors.hpp"

namespace egelab {

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

BigInt catalan(int m) {
  if (m < 0) throw DomainError("catalan: m must be >= 0");
  return binomial(2 * m, m) / (m + 1);
}

BigInt falling(long n, int m) {
  if (m < 0) throw DomainError("falling: m must be >= 0");
  BigInt r = 1;
  for (int i = 0; i < m; ++i) {
    if (n - i <= 0) return 0;
    r *= n - i;
  }
  return r;
}

BigInt nc_pairings(int l, int p, int q) {
  if (l < 1) throw DomainError("nc_pairings: l must be >= 1");
  if (p < l || q < l || (p - l) % 2 != 0 || (q - l) % 2 != 0) return 0;
  return l * binomial(p, (p - l) / 2) * binomial(q, (q - l) / 2);
}

namespace {

void check_degrees(const char* who, int p, int q) {
  if (p < 1 || q < 1) throw DomainError(std::string(who) + ": p and q must be >= 1");
}

}  // namespace

double phi_monomial(double t, int p, int q) {
  check_degrees("phi_monomial", p, q);
  if ((p + q) % 2 != 0) return 0.0;
  BigInt total = 0;
  for (int through = (p % 2 == 0 ? 2 : 1); through <= std::min(p, q); through += 2) {
    total += nc_pairings(through, p, q);
  }
  return total.convert_to<double>() * std::pow(t, (p + q) / 2);
}

double phi_c_monomial(double t, int p, int q) {
  check_degrees("phi_c_monomial", p, q);
  if ((p + q) % 2 != 0) return 0.0;
  const int half = (p + q) / 2;
  double total = 0.0;
  if (p % 2 == 0) {
    for (int l = 1; 2 * l <= std::min(p, q); ++l)
      total += nc_pairings(2 * l, p, q).convert_to<double>() * std::pow(t, half - 2 * l);
  } else {
    for (int l = 1; 2 * l - 1 <= std::min(p, q); ++l)
      total += nc_pairings(2 * l - 1, p, q).convert_to<double>() * std::pow(t, half - 2 * l + 1);
  }
  return total;
}

namespace {

template <class Pairing>
double bilinear(const PolyReal& p, const PolyReal& q, Pairing&& pairing) {
  double s = 0.0;
  for (std::size_t i = 1; i < p.coeffs.size(); ++i) {
    if (p.coeffs[i] == 0.0) continue;
    for (std::size_t j = 1; j < q.coeffs.size(); ++j) {
      if (q.coeffs[j] == 0.0) continue;
      s += p.coeffs[i] * q.coeffs[j] * pairing(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return s;
}

}  // namespace

double phi_poly(double t, const PolyReal& p, const PolyReal& q) {
  return bilinear(p, q, [t](int i, int j) { return phi_monomial(t, i, j); });
}

double phi_c_poly(double t, const PolyReal& p, const PolyReal& q) {
  return bilinear(p, q, [t](int i, int j) { return phi_c_monomial(t, i, j); });
}

double l_tree(int m, double t) {
  if (m < 1) throw DomainError("l_tree: m must be >= 1");
  const PolyReal alpha = cheb_coeffs_closed(2 * m, t);
  double s = 0.0;
  for (int q = 0; q <= m; ++q) {
    const int d = m - q;
    s += alpha.coeffs[2 * d] * std::pow(t, d) * catalan(d).convert_to<double>() * (d + 1) * d;
  }
  return -0.5 * s;
}

BigRational binomial_sum_even(int k, int l) {
  if (l < 1 || k < l) throw DomainError("binomial_sum_even: need 1 <= l <= k");
  BigRational s = 0;
  for (int r = 0; r <= k - l; ++r) {
    BigRational term(binomial(2 * (k - r), k - r - l) * binomial(2 * k - r, r), BigInt(2 * k - r));
    s += (r % 2 == 0) ? term : BigRational(-term);
  }
  return s;
}

BigRational binomial_sum_odd(int k, int l) {
  if (l < 1 || k + 1 < l || k < 0) throw DomainError("binomial_sum_odd: need 1 <= l <= k+1");
  BigRational s = 0;
  for (int r = 0; r <= k + 1 - l; ++r) {
    BigRational term(binomial(2 * (k - r) + 1, k + 1 - r - l) * binomial(2 * k + 1 - r, r), BigInt(2 * k + 1 - r));
    s += (r % 2 == 0) ? term : BigRational(-term);
  }
  return s;
}

namespace {

// Solves V c = y for the Vandermonde system at nodes xs, exactly.
std::vector<BigRational> vandermonde_solve(const std::vector<int>& xs, std::vector<BigRational> y) {
  const std::size_t m = xs.size();
  std::vector<std::vector<BigRational>> a(m, std::vector<BigRational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    BigRational p = 1;
    for (std::size_t j = 0; j < m; ++j) {
      a[i][j] = p;
      p *= xs[i];
    }
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    std::swap(y[piv], y[col]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const BigRational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < m; ++j) a[i][j] -= f * a[col][j];
      y[i] -= f * y[col];
    }
  }
  for (std::size_t i = 0; i < m; ++i) y[i] /= a[i][i];
  return y;
}

}  // namespace

std::vector<BigRational> expectation_limit_polynomial(int k) {
  if (k < 1) throw DomainError("h_coeff: k must be >= 1");
  if (k > kMaxHCoeff) {
    throw UnsupportedError("h_coeff: k = " + std::to_string(k) + " exceeds the enumeration budget (max " +
                           std::to_string(kMaxHCoeff) + ")");
  }
  static std::mutex cache_mutex;
  static std::map<int, std::vector<BigRational>> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }

  // Coefficient of X^{2k-2j} in P_{2k}, as (-1)^j count_j t^j.
  std::vector<BigInt> counts(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) counts[j] = j == 0 ? BigInt(1) : binomial(2 * k - j, j) + binomial(2 * k - j - 1, j - 1);

  const int t_degree = 2 * k + 1;
  std::vector<int> nodes;
  for (int n = 1; n <= k + 3; ++n) nodes.push_back(n);

  // values[d][i] = coefficient of t^d in n_i^{k+1} E U_{2k}(n_i).
  std::vector<std::vector<BigRational>> values(static_cast<std::size_t>(t_degree) + 1,
                                               std::vector<BigRational>(nodes.size(), 0));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int n = nodes[i];
    for (int j = 0; j <= k; ++j) {
      const TPoly tr = j == k ? TPoly{{BigInt(n)}} : exact_trace_polynomial(n, 2 * (k - j));
      BigInt scale = counts[j];
      for (int e = 0; e < j + 1; ++e) scale *= n;
      if (j % 2 == 1) scale = -scale;
      for (std::size_t d = 0; d < tr.coeffs.size(); ++d) values[d + j][i] += BigRational(scale * tr.coeffs[d]);
    }
    if (k == 1) values[1][i] += BigRational(BigInt(n) * n * n);
  }

  std::vector<BigRational> limit(static_cast<std::size_t>(t_degree) + 1, 0);
  for (int d = 0; d <= t_degree; ++d) {
    const std::vector<BigRational> c = vandermonde_solve(nodes, values[d]);
    if (c[static_cast<std::size_t>(k) + 2] != 0) {
      throw std::logic_error("h_coeff: E U_2k has a divergent n term; the enumeration is inconsistent");
    }
    limit[d] = c[static_cast<std::size_t>(k) + 1];
  }
  std::lock_guard lock(cache_mutex);
  cache.emplace(k, limit);
  return limit;
}

double h_coeff(int k, double t) {
  const std::vector<BigRational> limit = expectation_limit_polynomial(k);
  double acc = 0.0;
  for (auto it = limit.rbegin(); it != limit.rend(); ++it) acc = acc * t + it->convert_to<double>();
  return acc + k * std::pow(t, k);
}

CovTable build_cov_table(double t, int max_degree) {
  if (max_degree < 1) throw DomainError("build_cov_table: max_degree must be >= 1");
  CovTable table{t, max_degree, {}, {}};
  for (int p = 1; p <= max_degree; ++p) {
    for (int q = 1; q <= max_degree; ++q) {
      table.phi[{p, q}] = phi_monomial(t, p, q);
      table.phi_c[{p, q}] = phi_c_monomial(t, p, q);
    }
  }
  return table;
}

std::string cov_table_json(const CovTable& table) {
  nlohmann::ordered_json j;
  j["t"] = table.t;
  j["max_degree"] = table.max_degree;
  auto rows = [](const std::map<std::pair<int, int>, double>& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [pq, v] : m) arr.push_back({pq.first, pq.second, v});
    return arr;
  };
  j["phi"] = rows(table.phi);
  j["phi_c"] = rows(table.phi_c);
  return j.dump(2);
}

CovTable cov_table_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  CovTable table;
  table.t = j.at("t").get<double>();
  table.max_degree = j.at("max_degree").get<int>();
  for (const auto& row : j.at("phi")) table.phi[{row.at(0).get<int>(), row.at(1).get<int>()}] = row.at(2).get<double>();
  for (const auto& row : j.at("phi_c"))
    table.phi_c[{row.at(0).get<int>(), row.at(1).get<int>()}] = row.at(2).get<double>();
  return table;
}

}  // namespace egelab
