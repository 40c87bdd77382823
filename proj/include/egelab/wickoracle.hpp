#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "egelab/scaled_complex.hpp"

namespace egelab {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial in t with exact integer coefficients; coeffs[d] multiplies t^d.
struct TPoly {
  std::vector<BigInt> coeffs;

  [[nodiscard]] double eval(double t) const;
  [[nodiscard]] bool is_zero() const;
  TPoly& operator+=(const TPoly& other);
  TPoly& operator-=(const TPoly& other);
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend bool operator==(const TPoly& a, const TPoly& b);
};

struct DirectedMultigraph {
  std::set<int> vertices;
  std::vector<std::pair<int, int>> edges;
};

enum class GraphKind { DoubleTree, DoubleUnicyclic, TwoFourTree, Other };

[[nodiscard]] const char* to_string(GraphKind kind);

struct GraphClass {
  GraphKind kind = GraphKind::Other;
  int twice_q1 = 0;  // 2 (|E bar| - |E|/2), kept integral
  int q2 = 0;        // |V| - |E bar|

  [[nodiscard]] double q1() const { return twice_q1 / 2.0; }
};

/// Cyclic walk graph: edges (i_1,i_2), ..., (i_k,i_1).
[[nodiscard]] DirectedMultigraph tuple_graph(std::span<const int> tuple);

/// E bar is the set of distinct undirected edges; a loop counts as one of them.
[[nodiscard]] GraphClass classify_graph(const DirectedMultigraph& g);
[[nodiscard]] GraphClass classify_tuple(std::span<const int> tuple);

/// True when some undirected edge of the walk is traversed exactly once.
[[nodiscard]] bool has_simple_edge(std::span<const int> tuple);

/// Elementary-step budget for the exact enumerations.
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;

/// Number of tuples in [n]^k whose graph has the given kind. Requires n^k <= budget.
[[nodiscard]] std::uint64_t count_class(int n, int k, GraphKind kind);

struct WickEdge {
  int u = 0;
  int v = 0;
  bool conjugated = false;
};

/// Sum over perfect matchings of products of pair covariances of EGE entries, as a polynomial in t.
/// Odd length gives 0.
[[nodiscard]] TPoly wick_pair_polynomial(std::span<const WickEdge> edges);
[[nodiscard]] double wick_pair_expectation(std::span<const WickEdge> edges, double t);

/// E Tr A^k at finite n, exactly. Tuples are grouped by their index partition, so the cost is
/// Bell(k) * k steps regardless of n.
[[nodiscard]] TPoly exact_trace_polynomial(int n, int k);
[[nodiscard]] double exact_trace_expectation(int n, int k, double t);

/// E Tr A^k written as sum_b (n)_b c_b(t): entry b of the result is c_b (b distinct indices).
[[nodiscard]] std::vector<TPoly> trace_partition_weights(int k);

/// E[(Tr A^k1 - E)(Tr A^k2 - E)] with the second factor conjugated when conj2, exactly.
[[nodiscard]] TPoly exact_product_covariance_polynomial(int n, int k1, int k2, bool conj2);
[[nodiscard]] cplx exact_product_covariance(int n, int k1, int k2, bool conj2, double t);

}  // namespace egelab
