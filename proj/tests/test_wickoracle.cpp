#include <doctest.h>

#include <cmath>
#include <map>

#include "egelab/errors.hpp"
#include "egelab/momentcomb.hpp"
#include "egelab/sampling.hpp"
#include "egelab/wickoracle.hpp"

using namespace egelab;

namespace {

// Calls f on every tuple in [n]^k (1-based entries).
template <class F>
void for_each_tuple(int n, int k, F&& f) {
  std::vector<int> tup(k, 1);
  while (true) {
    f(tup);
    int i = k - 1;
    while (i >= 0 && tup[i] == n) tup[i--] = 1;
    if (i < 0) return;
    ++tup[i];
  }
}

std::vector<WickEdge> walk_edges(const std::vector<int>& tup, bool conj) {
  std::vector<WickEdge> e;
  for (std::size_t i = 0; i < tup.size(); ++i) e.push_back({tup[i], tup[(i + 1) % tup.size()], conj});
  return e;
}

double literal_trace_expectation(int n, int k, double t) {
  double s = 0.0;
  for_each_tuple(n, k, [&](const std::vector<int>& tup) { s += wick_pair_expectation(walk_edges(tup, false), t); });
  return s;
}

double literal_product_moment(int n, int k1, int k2, bool conj2, double t) {
  double s = 0.0;
  for_each_tuple(n, k1, [&](const std::vector<int>& a) {
    const auto ea = walk_edges(a, false);
    for_each_tuple(n, k2, [&](const std::vector<int>& b) {
      auto e = ea;
      const auto eb = walk_edges(b, conj2);
      e.insert(e.end(), eb.begin(), eb.end());
      s += wick_pair_expectation(e, t);
    });
  });
  return s;
}

}  // namespace

TEST_CASE("tuple classification examples") {
  const GraphClass a = classify_tuple(std::vector<int>{1, 2, 1, 2});
  CHECK(a.kind == GraphKind::TwoFourTree);
  CHECK(a.q1() == -1.0);
  CHECK(a.q2 == 1);

  const GraphClass b = classify_tuple(std::vector<int>{1, 2, 3});
  CHECK(b.kind == GraphKind::Other);
  CHECK(b.q1() == 1.5);
  CHECK(b.q2 == 0);

  const GraphClass c = classify_tuple(std::vector<int>{1, 2});
  CHECK(c.kind == GraphKind::DoubleTree);
  CHECK(c.q1() == 0.0);
  CHECK(c.q2 == 1);

  const GraphClass d = classify_tuple(std::vector<int>{1, 2, 3, 1, 3, 2});
  CHECK(d.kind == GraphKind::DoubleUnicyclic);

  const DirectedMultigraph g = tuple_graph(std::vector<int>{4, 7, 4});
  CHECK(g.vertices == std::set<int>{4, 7});
  CHECK(g.edges.size() == 3);
  CHECK(std::string(to_string(GraphKind::DoubleTree)).size() > 0);
}

TEST_CASE("double tree counts") {
  CHECK(count_class(3, 2, GraphKind::DoubleTree) == 6);
  CHECK(count_class(4, 4, GraphKind::DoubleTree) == 48);
  CHECK(count_class(2, 3, GraphKind::DoubleTree) == 0);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 5; ++n)
      CHECK(BigInt(count_class(n, 2 * m, GraphKind::DoubleTree)) == falling(n, m + 1) * catalan(m));
  CHECK_THROWS_AS((void)count_class(100, 5, GraphKind::DoubleTree), UnsupportedError);
}

TEST_CASE("double trees have opposite branches") {
  for (int k = 1; k <= 6; ++k)
    for (int n = 1; n <= 4; ++n)
      for_each_tuple(n, k, [&](const std::vector<int>& tup) {
        if (classify_tuple(tup).kind != GraphKind::DoubleTree) return;
        std::map<std::pair<int, int>, int> dir;
        for (std::size_t i = 0; i < tup.size(); ++i) ++dir[{tup[i], tup[(i + 1) % tup.size()]}];
        for (const auto& [e, c] : dir) {
          CHECK(e.first != e.second);
          CHECK(c == 1);
          CHECK(dir.count({e.second, e.first}) == 1);
        }
      });
}

TEST_CASE("pair expectations") {
  const double t = 0.4;
  CHECK(wick_pair_expectation(std::vector<WickEdge>{{1, 2}, {2, 1}}, t) == doctest::Approx(t));
  CHECK(wick_pair_expectation(std::vector<WickEdge>{{1, 2}, {1, 2, true}}, t) == 1.0);
  CHECK(wick_pair_expectation(std::vector<WickEdge>{{1, 2}, {1, 2}, {2, 1}, {2, 1}}, t) == doctest::Approx(2 * t * t));
  CHECK(wick_pair_expectation(std::vector<WickEdge>{{1, 2}, {2, 1}, {1, 2, true}, {2, 1, true}}, t) ==
        doctest::Approx(1 + t * t));
  CHECK(wick_pair_expectation(std::vector<WickEdge>{{1, 1}, {1, 1}}, t) == doctest::Approx(t));
  CHECK(wick_pair_expectation(std::vector<WickEdge>{{1, 2, true}, {2, 1, true}}, t) == doctest::Approx(t));
  CHECK(wick_pair_expectation(std::vector<WickEdge>{{1, 2}}, t) == 0.0);
  CHECK(wick_pair_expectation(std::vector<WickEdge>{{1, 2}, {1, 2}}, t) == 0.0);
}

TEST_CASE("simple edges carry zero weight") {
  for (int k = 1; k <= 5; ++k)
    for (int n = 1; n <= 4; ++n)
      for_each_tuple(n, k, [&](const std::vector<int>& tup) {
        if (has_simple_edge(tup)) CHECK(wick_pair_polynomial(walk_edges(tup, false)).is_zero());
      });
}

TEST_CASE("trace expectations") {
  for (int n = 1; n <= 8; ++n)
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      CHECK(exact_trace_expectation(n, 2, t) == doctest::Approx(n * n * t));
      CHECK(exact_trace_expectation(n, 1, t) == 0.0);
    }
  for (int n = 1; n <= 5; ++n)
    for (double t : {0.0, 0.5, 1.0}) CHECK(exact_trace_expectation(n, 3, t) == 0.0);
}

TEST_CASE("partition grouping matches literal tuple sums") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 6; ++k)
      for (double t : {0.3, 1.0})
        CHECK(exact_trace_expectation(n, k, t) == doctest::Approx(literal_trace_expectation(n, k, t)).epsilon(1e-12));
}

TEST_CASE("GUE moments at t = 1") {
  for (int n = 1; n <= 9; ++n) {
    CHECK(exact_trace_expectation(n, 4, 1.0) == doctest::Approx(2.0 * n * n * n + n));
    CHECK(exact_trace_expectation(n, 6, 1.0) == doctest::Approx(5.0 * std::pow(n, 4) + 10.0 * n * n));
  }
}

TEST_CASE("Ginibre moments vanish at t = 0") {
  for (int k = 1; k <= 8; ++k) CHECK(exact_trace_polynomial(5, k).eval(0.0) == 0.0);
}

TEST_CASE("product covariances") {
  for (int n = 1; n <= 6; ++n) CHECK(exact_product_covariance(n, 1, 1, true, 0.7) == cplx{double(n), 0.0});
  for (int n = 1; n <= 4; ++n)
    for (double t : {0.0, 0.5})
      for (bool c : {false, true}) CHECK(exact_product_covariance(n, 1, 2, c, t) == cplx{0.0, 0.0});
  const double t = 0.5;
  CHECK(std::abs(exact_product_covariance(40, 2, 2, false, t).real() / 1600.0 - 2 * t * t) < 0.005);
  CHECK(std::abs(exact_product_covariance(40, 2, 2, true, t).real() / 1600.0 - 2.0) < 0.005);
}

TEST_CASE("product covariances match literal enumeration") {
  const int n = 3;
  for (auto [k1, k2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 3}, {2, 4}, {3, 3}})
    for (bool c : {false, true})
      for (double t : {0.0, 0.5, 1.0}) {
        const double e1 = literal_trace_expectation(n, k1, t);
        const double e2 = literal_trace_expectation(n, k2, t);
        const double want = literal_product_moment(n, k1, k2, c, t) - e1 * e2;
        CHECK(exact_product_covariance(n, k1, k2, c, t).real() == doctest::Approx(want).epsilon(1e-12));
      }
}

TEST_CASE("exact expectation agrees with the sampler") {
  const int reps = 100'000;
  double s = 0, s2 = 0;
  for (int i = 0; i < reps; ++i) {
    SampleStream st = derive_stream(77, i);
    const CMatrix a = sample_ege(st, {3, 0.5, 77});
    const double v = trace_powers(a, 4)[3].real();
    s += v;
    s2 += v * v;
  }
  const double mean = s / reps, se = std::sqrt((s2 / reps - mean * mean) / reps);
  CHECK(std::abs(mean - exact_trace_expectation(3, 4, 0.5)) < 4 * se);
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS((void)exact_trace_polynomial(3, 13), UnsupportedError);
  CHECK_THROWS_AS((void)trace_partition_weights(0), DomainError);
}

TEST_CASE("TPoly arithmetic") {
  TPoly a{{1, 2}}, b{{0, 0, 3}};
  TPoly c = a * b;
  CHECK(c.eval(2.0) == doctest::Approx((1 + 4) * 12.0));
  a += b;
  CHECK(a.eval(1.0) == 6.0);
  a -= b;
  CHECK(a == TPoly{{1, 2}});
  CHECK(TPoly{{0, 0}}.is_zero());
}
