#include "egelab/wickoracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "egelab/errors.hpp"

namespace egelab {

namespace {

void trim(TPoly& p) {
  while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
}

BigInt falling_big(int n, int m) {
  BigInt r = 1;
  for (int i = 0; i < m; ++i) {
    if (n - i <= 0) return 0;
    r *= n - i;
  }
  return r;
}

}  // namespace

double TPoly::eval(double t) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + it->convert_to<double>();
  return acc;
}

bool TPoly::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const BigInt& c) { return c == 0; });
}

TPoly& TPoly::operator+=(const TPoly& other) {
  if (coeffs.size() < other.coeffs.size()) coeffs.resize(other.coeffs.size());
  for (std::size_t i = 0; i < other.coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
  trim(*this);
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& other) {
  if (coeffs.size() < other.coeffs.size()) coeffs.resize(other.coeffs.size());
  for (std::size_t i = 0; i < other.coeffs.size(); ++i) coeffs[i] -= other.coeffs[i];
  trim(*this);
  return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  TPoly out{std::vector<BigInt>(a.coeffs.size() + b.coeffs.size() - 1)};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  trim(out);
  return out;
}

bool operator==(const TPoly& a, const TPoly& b) {
  TPoly x = a;
  TPoly y = b;
  trim(x);
  trim(y);
  return x.coeffs == y.coeffs;
}

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::DoubleTree: return "double_tree";
    case GraphKind::DoubleUnicyclic: return "double_unicyclic";
    case GraphKind::TwoFourTree: return "two_four_tree";
    case GraphKind::Other: break;
  }
  return "other";
}

DirectedMultigraph tuple_graph(std::span<const int> tuple) {
  DirectedMultigraph g;
  const std::size_t k = tuple.size();
  for (std::size_t j = 0; j < k; ++j) {
    g.vertices.insert(tuple[j]);
    g.edges.emplace_back(tuple[j], tuple[(j + 1) % k]);
  }
  return g;
}

GraphClass classify_graph(const DirectedMultigraph& g) {
  std::set<std::pair<int, int>> undirected;
  for (const auto& [u, v] : g.edges) undirected.emplace(std::min(u, v), std::max(u, v));
  GraphClass c;
  const int ebar = static_cast<int>(undirected.size());
  c.twice_q1 = 2 * ebar - static_cast<int>(g.edges.size());
  c.q2 = static_cast<int>(g.vertices.size()) - ebar;
  if (c.twice_q1 == 0 && c.q2 == 1) {
    c.kind = GraphKind::DoubleTree;
  } else if (c.twice_q1 == 0 && c.q2 == 0) {
    c.kind = GraphKind::DoubleUnicyclic;
  } else if (c.twice_q1 == -2 && c.q2 == 1) {
    c.kind = GraphKind::TwoFourTree;
  }
  return c;
}

GraphClass classify_tuple(std::span<const int> tuple) {
  if (tuple.empty()) throw DomainError("classify_tuple: empty tuple");
  return classify_graph(tuple_graph(tuple));
}

bool has_simple_edge(std::span<const int> tuple) {
  std::map<std::pair<int, int>, int> mult;
  const std::size_t k = tuple.size();
  for (std::size_t j = 0; j < k; ++j) {
    const int u = tuple[j];
    const int v = tuple[(j + 1) % k];
    ++mult[{std::min(u, v), std::max(u, v)}];
  }
  return std::any_of(mult.begin(), mult.end(), [](const auto& kv) { return kv.second == 1; });
}

std::uint64_t count_class(int n, int k, GraphKind kind) {
  if (n < 1 || k < 1) throw DomainError("count_class: need n >= 1 and k >= 1");
  std::uint64_t total = 1;
  for (int j = 0; j < k; ++j) {
    total *= static_cast<std::uint64_t>(n);
    if (total > kEnumerationBudget) {
      throw UnsupportedError("count_class: n^k exceeds the enumeration budget (n=" + std::to_string(n) +
                             ", k=" + std::to_string(k) + ")");
    }
  }
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  std::uint64_t count = 0;
  for (std::uint64_t step = 0; step < total; ++step) {
    if (classify_tuple(idx).kind == kind) ++count;
    for (int j = k - 1; j >= 0; --j) {
      if (++idx[j] < n) break;
      idx[j] = 0;
    }
  }
  return count;
}

namespace {

// 0: no covariance, 1: covariance 1, 2: covariance t.
int kernel(const WickEdge& e, const WickEdge& f) {
  if (e.conjugated != f.conjugated) return (f.u == e.u && f.v == e.v) ? 1 : 0;
  return (f.u == e.v && f.v == e.u) ? 2 : 0;
}

void match(std::span<const WickEdge> edges, std::uint64_t used, int tpow, std::vector<std::int64_t>& counts) {
  const int m = static_cast<int>(edges.size());
  int i = 0;
  while (i < m && (used >> i & 1U)) ++i;
  if (i == m) {
    ++counts[tpow];
    return;
  }
  used |= std::uint64_t{1} << i;
  for (int j = i + 1; j < m; ++j) {
    if (used >> j & 1U) continue;
    const int kv = kernel(edges[i], edges[j]);
    if (kv == 0) continue;
    match(edges, used | (std::uint64_t{1} << j), tpow + (kv == 2 ? 1 : 0), counts);
  }
}

// Matching counts by power of t, accumulated into `counts` (size >= len/2 + 1).
bool matching_counts(std::span<const WickEdge> edges, std::vector<std::int64_t>& counts) {
  if (edges.size() % 2 == 1) return false;
  match(edges, 0, 0, counts);
  return true;
}

}  // namespace

TPoly wick_pair_polynomial(std::span<const WickEdge> edges) {
  if (edges.size() > 64) throw UnsupportedError("wick_pair_polynomial: more than 64 factors");
  std::vector<std::int64_t> counts(edges.size() / 2 + 1, 0);
  if (!matching_counts(edges, counts)) return {};
  TPoly p{std::vector<BigInt>(counts.begin(), counts.end())};
  trim(p);
  return p;
}

double wick_pair_expectation(std::span<const WickEdge> edges, double t) { return wick_pair_polynomial(edges).eval(t); }

namespace {

double bell_number(int k) {
  // Bell triangle.
  std::vector<double> row{1.0};
  for (int i = 1; i <= k; ++i) {
    std::vector<double> next{row.back()};
    for (double v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

void check_partition_budget(const char* who, int k) {
  if (bell_number(k) * k > static_cast<double>(kEnumerationBudget)) {
    throw UnsupportedError(std::string(who) + ": Bell(" + std::to_string(k) + ")*" + std::to_string(k) +
                           " exceeds the enumeration budget");
  }
}

// Visits every set partition of {0..k-1} as a restricted growth string; body(labels, blocks).
template <class F>
void for_each_partition(int k, F&& body) {
  std::vector<int> a(static_cast<std::size_t>(k), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(k), 0);  // max of a[0..i]
  for (;;) {
    body(a, prefix_max.back() + 1);
    int i = k - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int j = i + 1; j < k; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

// Weights c_b (b = block count) for the Wick expectation of the given cycles.
std::vector<TPoly> partition_weights(const std::vector<int>& cycle_lengths, const std::vector<bool>& conj) {
  int k = 0;
  for (int len : cycle_lengths) k += len;
  const int max_pow = k / 2 + 1;
  std::vector<std::vector<std::int64_t>> acc(static_cast<std::size_t>(k) + 1,
                                             std::vector<std::int64_t>(static_cast<std::size_t>(max_pow), 0));
  std::vector<WickEdge> edges(static_cast<std::size_t>(k));
  for_each_partition(k, [&](const std::vector<int>& lab, int blocks) {
    int base = 0;
    for (std::size_t c = 0; c < cycle_lengths.size(); ++c) {
      const int len = cycle_lengths[c];
      for (int j = 0; j < len; ++j) edges[base + j] = {lab[base + j], lab[base + (j + 1) % len], conj[c]};
      base += len;
    }
    matching_counts(edges, acc[blocks]);
  });
  std::vector<TPoly> out(static_cast<std::size_t>(k) + 1);
  for (int b = 0; b <= k; ++b) {
    out[b].coeffs.assign(acc[b].begin(), acc[b].end());
    trim(out[b]);
  }
  return out;
}

TPoly combine(const std::vector<TPoly>& weights, int n) {
  TPoly total;
  for (std::size_t b = 1; b < weights.size(); ++b) {
    if (weights[b].is_zero()) continue;
    TPoly scaled = weights[b];
    const BigInt f = falling_big(n, static_cast<int>(b));
    for (auto& c : scaled.coeffs) c *= f;
    total += scaled;
  }
  return total;
}

}  // namespace

std::vector<TPoly> trace_partition_weights(int k) {
  if (k < 1) throw DomainError("trace_partition_weights: k must be >= 1");
  check_partition_budget("exact_trace_expectation", k);
  static std::mutex cache_mutex;
  static std::map<int, std::vector<TPoly>> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  auto weights = partition_weights({k}, {false});
  std::lock_guard lock(cache_mutex);
  cache.emplace(k, weights);
  return weights;
}

TPoly exact_trace_polynomial(int n, int k) {
  if (n < 1) throw DomainError("exact_trace_expectation: n must be >= 1");
  return combine(trace_partition_weights(k), n);
}

double exact_trace_expectation(int n, int k, double t) { return exact_trace_polynomial(n, k).eval(t); }

TPoly exact_product_covariance_polynomial(int n, int k1, int k2, bool conj2) {
  if (n < 1 || k1 < 1 || k2 < 1) throw DomainError("exact_product_covariance: need n, k1, k2 >= 1");
  check_partition_budget("exact_product_covariance", k1 + k2);
  TPoly joint = combine(partition_weights({k1, k2}, {false, conj2}), n);
  joint -= exact_trace_polynomial(n, k1) * exact_trace_polynomial(n, k2);
  return joint;
}

cplx exact_product_covariance(int n, int k1, int k2, bool conj2, double t) {
  return {exact_product_covariance_polynomial(n, k1, k2, conj2).eval(t), 0.0};
}

}  // namespace egelab
