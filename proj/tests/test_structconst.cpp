#include <algorithm>
#include <set>

#include "doctest.h"
#include "mirrorgw/structconst.hpp"

using namespace mirrorgw;

namespace {

// Multinomial (total; parts) from factorials.
BigInt multinomial_oracle(int total, const std::vector<int>& parts) {
  BigInt r = factorial(total);
  int sum = 0;
  for (int x : parts) {
    r /= factorial(x);
    sum += x;
  }
  return sum == total ? r : BigInt(0);
}

// Nondecreasing tuples in [lo, hi)^N.
void sorted_tuples(int N, int lo, int hi, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> p(static_cast<size_t>(N), lo);
  std::function<void(int, int)> rec = [&](int i, int from) {
    if (i == N) {
      f(p);
      return;
    }
    for (int x = from; x < hi; ++x) {
      p[i] = x;
      rec(i + 1, x);
    }
  };
  rec(0, lo);
}

}  // namespace

TEST_CASE("support relation") {
  auto cubic = make_geometry(5, {3});
  CHECK(support_target(cubic, 3) == 2 * 3 + 2 + 1);
  CHECK(satisfies_support(cubic, SCKey{{1, 3, 3}, {0, 0, 0}, 1, 0}));
  CHECK_FALSE(satisfies_support(cubic, SCKey{{1, 3, 3}, {0, 0, 0}, 2, 0}));
  CHECK_FALSE(satisfies_support(cubic, SCKey{{1, 3, 3, 3}, {1, 1, 0, 0}, 1, 0}));  // |b| > N-3
}

TEST_CASE("two-point seeds") {
  auto quintic = make_geometry(5, {5});
  MirrorContext ctx(quintic, 3, 3);
  CHECK(two_point_seed(ctx, 2, 3, 0, -1, 0, 0) == 1);
  CHECK(two_point_seed(ctx, 2, 3, 1, -2, 0, 0) == -1);
  CHECK(two_point_seed(ctx, 2, 3, 0, 0, 0, 0) == 0);
  CHECK(two_point_seed(ctx, 2, 2, 0, -1, 0, 0) == 0);
  // [L^5 / I_0^2]_{q;1} with L^5 = 1/(1 - 3125 q) and I_0 = 1 + 120 q + ...
  CHECK(two_point_seed(ctx, 2, 3, 0, -1, 1, 0) == 3125 - 240);
}

TEST_CASE("hat pairs and brackets") {
  auto quintic = make_geometry(5, {5});
  CHECK(hat_decompose(quintic, 3).p_hat == 2);
  CHECK(hat_decompose(quintic, 3).t_p == 0);
  CHECK(hat_decompose(quintic, 0).p_hat == 0);
  CHECK(hat_decompose(quintic, 0).t_p == 1);
  auto p4 = make_geometry(5, {});
  for (int p = 0; p < 5; ++p) CHECK(hat_decompose(p4, p).t_p == 0);
  CHECK(hat_twist(quintic, {0, 0, 3}) == 2);

  auto cubic = make_geometry(5, {3});
  for (int p = 0; p < 5; ++p) {
    BracketData b = bracket_decompose(cubic, p, 0);
    CHECK(b.p_bracket == p);
    CHECK(b.tau == 0);
  }
  BracketData b = bracket_decompose(cubic, 3, 1);
  CHECK(b.p_bracket == 1);
  CHECK(b.tau == 0);
  CHECK(b.p_hat_bracket == 4);
  CHECK(b.t_small == 0);
  for (auto g : {cubic, make_geometry(6, {2, 2}), make_geometry(5, {})}) {
    for (int p = -3 * g.n; p <= 3 * g.n; ++p) {
      for (int d = 0; d <= 6; ++d) {
        BracketData x = bracket_decompose(g, p, d);
        CHECK(x.p_bracket + g.nu * d + g.n * x.tau == p);
        CHECK(x.p_bracket + x.p_hat_bracket + g.n * x.t_small == g.n - 1 + g.l);
        if (d >= 1) {
          BracketData y = bracket_decompose(g, p, d - 1);
          std::pair<int, int> step{y.tau - x.tau, x.t_small};
          CHECK((step == std::pair<int, int>{0, 0} || step == std::pair<int, int>{1, 0} ||
                 step == std::pair<int, int>{0, 1}));
        }
      }
    }
  }
}

TEST_CASE("combinatorial enumerations") {
  // Stirling numbers of the second kind S(5, k).
  std::vector<int> five = {0, 1, 2, 3, 4};
  std::vector<int> stirling = {0, 1, 15, 25, 10, 1};
  for (int k = 1; k <= 5; ++k) {
    int count = 0;
    for_each_set_partition(five, k, [&](const std::vector<std::vector<int>>& blocks) {
      ++count;
      CHECK(static_cast<int>(blocks.size()) == k);
    });
    CHECK(count == stirling[k]);
  }
  CHECK(weighted_partitions(4).size() == 5);
  int compositions = 0;
  for_each_composition(3, 3, [&](const std::vector<int>&) { ++compositions; });
  CHECK(compositions == 10);
}

TEST_CASE("cubic threefold structure constants from both engines") {
  auto cubic = make_geometry(5, {3});
  MirrorContext ctx(cubic, 4, 4);
  struct Pin {
    std::vector<int> p;
    int d;
    long value;
  };
  std::vector<Pin> pins = {{{1, 3, 3}, 1, 6},      {{2, 2, 3}, 1, 15},     {{1, 1, 3}, 2, 36},
                           {{1, 2, 2}, 2, 126},    {{1, 1, 1}, 3, 216},    {{1, 3, 3, 3}, 1, 6},
                           {{2, 2, 3, 3}, 1, 15},  {{1, 1, 3, 3}, 2, 72},  {{1, 2, 2, 3}, 2, 252},
                           {{1, 1, 1, 3}, 3, 648}, {{2, 2, 2, 2}, 2, 729}, {{1, 1, 2, 2}, 3, 2484},
                           {{1, 1, 1, 1}, 4, 5184}};
  for (const auto& pin : pins) {
    std::vector<int> b(pin.p.size(), 0);
    SCKey key{pin.p, b, pin.d, 0};
    CHECK(sc_recursive(ctx, key) == pin.value);
    CHECK(sc_tree(ctx, pin.p, b, pin.d) == pin.value);
  }
}

TEST_CASE("engines agree on the cubic threefold, N = 3, 4, d <= 4") {
  auto cubic = make_geometry(5, {3});
  MirrorContext ctx(cubic, 4, 4);
  int compared = 0;
  for (int N = 3; N <= 4; ++N) {
    sorted_tuples(N, cubic.l, cubic.n, [&](const std::vector<int>& p) {
      for (int b0 = 0; b0 <= N - 3; ++b0) {
        std::vector<int> b(static_cast<size_t>(N), 0);
        b[0] = b0;
        for (int d = 0; d <= 4; ++d) {
          SCKey key{p, b, d, 0};
          if (!satisfies_support(cubic, key)) continue;
          ++compared;
          CHECK(sc_recursive(ctx, key) == sc_tree(ctx, p, b, d));
        }
      }
    });
  }
  CHECK(compared > 0);
}

TEST_CASE("degree-zero constants are multinomials") {
  for (auto g : {make_geometry(5, {3}), make_geometry(5, {5}), make_geometry(6, {2, 2})}) {
    MirrorContext ctx(g, 1, 5);
    for (int N = 3; N <= 5; ++N) {
      sorted_tuples(N, g.l, g.n, [&](const std::vector<int>& p) {
        std::vector<int> b(static_cast<size_t>(N), 0);
        for (int b0 = 0; b0 <= N - 3; ++b0) {
          b[0] = b0;
          b[N - 1] = N - 3 - b0;
          if (N == 3) b[N - 1] = 0;
          SCKey key{p, b, 0, 0};
          int sum_p = 0;
          for (int x : p) sum_p += x;
          int sum_b = 0;
          for (int x : b) sum_b += x;
          BigRational expect = 0;
          if (sum_p == (N - 1) * (g.n - 1) + g.l && sum_b == N - 3) expect = BigRational(multinomial_oracle(N - 3, b));
          if (sum_b == N - 3) CHECK(sc_recursive(ctx, key) == expect);
        }
      });
    }
  }
}

TEST_CASE("top-b constants of Calabi-Yau targets") {
  // With |b| = N-3: sum_d c^{(d,0)} q^d = C(N-3; b) L^n / I_0^2.
  auto quintic = make_geometry(5, {5});
  const int K = 3;
  MirrorContext ctx(quintic, K, 4);
  const HyperData& h = ctx.hyper();
  QSeries L = solve_L(quintic, K);
  QSeries series = pow(L, 5L) / (h.I(0) * h.I(0));
  std::vector<int> b = {1, 0, 0, 0};
  for (int d = 0; d <= K; ++d) {
    sorted_tuples(4, quintic.l, quintic.n, [&](const std::vector<int>& p) {
      SCKey key{p, b, d, 0};
      if (!satisfies_support(quintic, key)) return;
      CHECK(sc_recursive(ctx, key) == series[d]);
    });
  }
}

TEST_CASE("projective four-point constants") {
  for (int n = 4; n <= 6; ++n) {
    auto g = make_geometry(n, {});
    MirrorContext ctx(g, 2, 4);
    sorted_tuples(4, 0, n, [&](const std::vector<int>& p) {
      int sum = 0;
      for (int x : p) sum += x;
      std::vector<int> b(4, 0);
      for (int d = 0; d <= 2; ++d) {
        if (sum + n * d != 3 * n - 4) continue;
        int expect = 0;
        if (d == 1) {
          expect = n;
          for (int x : p) expect = std::min({expect, x + 1, n - 1 - x});
        }
        CHECK(sc_recursive(ctx, SCKey{p, b, d, 0}) == expect);
      }
    });
    // ctilde_{p,d'}^{(d,t)} = -p(n-p)/(2n) when d = 0, d' > 0, t = 0 or (d, d', t) = (0, 1, 1).
    for (int p = 0; p < n; ++p) {
      BigRational v = rational(-p * (n - p), 2 * n);
      CHECK(ctilde_pdt(ctx, p, 1, 0, 0) == v);
      CHECK(ctilde_pdt(ctx, p, 2, 0, 0) == v);
      CHECK(ctilde_pdt(ctx, p, 1, 0, 1) == v);
      CHECK(ctilde_pdt(ctx, p, 1, 1, 0) == 0);
      CHECK(ctilde_pdt(ctx, p, 1, 0, 1) == ctilde_pdt_closed(ctx, p, 1, 0, 1));
    }
  }
}

TEST_CASE("trivalent marked trees") {
  CHECK(enumerate_trivalent_trees(3).size() == 1);
  auto four = enumerate_trivalent_trees(4);
  REQUIRE(four.size() == 4);
  std::set<std::string> names;
  for (const auto& t : four) names.insert(t.canonical);
  CHECK(names.size() == 4);
  std::vector<long> weighted = {1, 4, 27, 256, 3125};
  for (int N = 3; N <= 7; ++N) {
    BigInt total = 0;
    for_each_trivalent_tree(N, [&](const MarkedTree& t) {
      total += tree_weight(t);
      // Valence at least three, connected and acyclic, and sum_v m_v + |Edg| = N - 3.
      int excess = 0;
      for (int v = 0; v < t.num_vertices(); ++v) {
        CHECK(t.valence(v) >= 3);
        excess += t.excess(v);
        if (v > 0) CHECK(t.parent[v] < v);
      }
      CHECK(t.parent[0] == -1);
      CHECK(static_cast<int>(t.edges().size()) == t.num_vertices() - 1);
      CHECK(excess + t.num_edges() == N - 3);
      for (int s = 0; s < N; ++s) {
        const auto& m = t.marks[t.eta[s]];
        CHECK(std::find(m.begin(), m.end(), s) != m.end());
      }
    });
    CHECK(total == weighted[N - 3]);
  }
}
