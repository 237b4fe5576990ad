#include <algorithm>

#include "doctest.h"
#include "mirrorgw/invariants.hpp"

using namespace mirrorgw;

namespace {

BigRational gw(const CIGeometry& g, int d, std::vector<int> b, std::vector<int> c) {
  return gw_invariant(g, InvariantQuery{d, std::move(b), std::move(c)});
}

// All (c_1, ..., c_N) with 0 <= c_s <= top and sum c = total, nondecreasing.
std::vector<std::vector<int>> sorted_c(int N, int top, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(static_cast<size_t>(N));
  std::function<void(int, int, int)> rec = [&](int i, int from, int left) {
    if (i == N) {
      if (left == 0) out.push_back(c);
      return;
    }
    for (int x = from; x <= std::min(top, left); ++x) {
      c[i] = x;
      rec(i + 1, x, left - x);
    }
  };
  rec(0, 0, total);
  return out;
}

}  // namespace

TEST_CASE("degree-zero invariants") {
  auto quintic = make_geometry(5, {5});
  CHECK(gw_degree_zero(quintic, {0, 0, 0}, {1, 1, 1}) == 5);
  CHECK(gw_degree_zero(quintic, {0, 0, 0}, {1, 1, 2}) == 0);
  CHECK(gw_degree_zero(quintic, {1, 0, 0, 0}, {1, 1, 1, 0}) == 5);
  CHECK(gw_degree_zero(quintic, {1, 1, 0, 0, 0}, {0, 1, 1, 1, 0}) == 10);  // 5 * 2!/(1! 1!)
  CHECK_THROWS_AS(gw_degree_zero(quintic, {0, 0}, {1, 2}), PreconditionViolated);
  CHECK(gw(quintic, 0, {0, 0, 0}, {1, 1, 1}) == 5);
}

TEST_CASE("dimension mismatches return zero with a warning") {
  auto cubic = make_geometry(5, {3});
  std::string warning;
  CHECK(gw_invariant(cubic, InvariantQuery{1, {0, 0, 0}, {1, 1, 1}}, &warning) == 0);
  CHECK_FALSE(warning.empty());
  CHECK(satisfies_dimension(cubic, InvariantQuery{1, {0, 0, 0}, {3, 1, 1}}));
}

TEST_CASE("cubic threefold invariants") {
  auto cubic = make_geometry(5, {3});
  CHECK(gw(cubic, 1, {0, 0, 0}, {3, 1, 1}) == 18);
  CHECK(gw(cubic, 1, {0, 0, 0}, {2, 2, 1}) == 45);
  CHECK(gw(cubic, 3, {0, 0, 0}, {3, 3, 3}) == 648);
  CHECK(gw(cubic, 2, {0, 0, 0, 0}, {2, 2, 2, 2}) == 2187);
  CHECK(gw(cubic, 4, {0, 0, 0, 0}, {3, 3, 3, 3}) == 15552);
}

TEST_CASE("permutation symmetry") {
  auto cubic = make_geometry(5, {3});
  BigRational v = gw(cubic, 2, {1, 0, 0, 0}, {3, 2, 2, 1});
  CHECK(v == gw(cubic, 2, {0, 0, 1, 0}, {2, 2, 3, 1}));
  CHECK(v == gw(cubic, 2, {0, 0, 0, 1}, {1, 2, 2, 3}));
}

TEST_CASE("string, dilaton and divisor equations") {
  // Genus-0 axioms for N + 1 >= 4 points and d >= 1, with the special insertion removed:
  //   string:  <tau_0 1, prod tau_{b_s} H^{c_s}> = sum_s <..., tau_{b_s - 1} H^{c_s}, ...>
  //   dilaton: <tau_1 1, prod ...> = (N - 2) <prod ...>
  //   divisor: <tau_0 H, prod ...> = d <prod ...> + sum_s <..., tau_{b_s - 1} H^{c_s + 1}, ...>
  int string_cases = 0, dilaton_cases = 0, divisor_cases = 0;
  for (auto [n, a] : std::vector<std::pair<int, std::vector<int>>>{{5, {3}}, {5, {5}}, {6, {2, 2}}}) {
    auto g = make_geometry(n, a);
    auto ctx = shared_context(g, 3, 5);
    for (int M = 4; M <= 5; ++M) {
      for (int d = 1; d <= 2; ++d) {
        auto value = [&](const std::vector<int>& b, const std::vector<int>& c) {
          return gw_invariant(*ctx, InvariantQuery{d, b, c});
        };
        for (const auto& full : sorted_queries(g, M, d)) {
          BigRational lhs = value(full.b, full.c);
          for (auto [b0, c0] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}}) {
            int at = -1;
            for (int s = 0; s < M; ++s) {
              if (full.b[s] == b0 && full.c[s] == c0) at = s;
            }
            if (at < 0) continue;
            std::vector<int> b = full.b, c = full.c;
            b.erase(b.begin() + at);
            c.erase(c.begin() + at);
            int N = M - 1;
            BigRational rhs = 0;
            if (b0 == 1) {
              rhs = BigRational(N - 2) * value(b, c);
              ++dilaton_cases;
            } else {
              if (c0 == 1) rhs = BigRational(d) * value(b, c);
              for (int s = 0; s < N; ++s) {
                if (b[s] == 0) continue;
                std::vector<int> bs = b, cs = c;
                bs[s] -= 1;
                cs[s] += c0;
                if (cs[s] <= g.n - 1 - g.l) rhs += value(bs, cs);
              }
              ++(c0 == 0 ? string_cases : divisor_cases);
            }
            CHECK(lhs == rhs);
          }
        }
      }
    }
  }
  CHECK(string_cases > 0);
  CHECK(dilaton_cases > 0);
  CHECK(divisor_cases > 0);
}

TEST_CASE("one-point descendants against three-point invariants") {
  // Dilaton and divisor axioms: <tau_1 1>_{0,d} = -2 <>_{0,d} = -2 <H, H, H>_{0,d} / d^3.
  auto quintic = make_geometry(5, {5});
  auto three = cy_three_point_series(quintic, 1, 1, 1, 3);
  for (int d = 1; d <= 3; ++d) {
    CHECK(gw(quintic, d, {1}, {0}) == BigRational(-2) * three.values[d] / BigRational(d * d * d));
    // Divisor axiom: <tau_1 1, H>_{0,d} = d <tau_1 1>_{0,d} + <H>_{0,d}.
    CHECK(gw(quintic, d, {1, 0}, {0, 1}) == BigRational(d) * gw(quintic, d, {1}, {0}) + gw(quintic, d, {0}, {1}));
  }
}

TEST_CASE("two-point generating functions") {
  const int K = 4;
  for (auto [n, a] : std::vector<std::pair<int, std::vector<int>>>{{5, {5}}, {6, {3, 3}}}) {
    auto g = make_geometry(n, a);
    HyperData h(g, K);
    BigRational deg = BigRational(g.prod_a);
    int w = g.n - 2 - g.l;
    for (int c1 = 0; c1 <= w; ++c1) {
      QSeries rhs = compose(h.I(c1 + 1) / h.I(1), h.q_of_Q()) * deg;
      CHECK(rhs[0] == deg);
      for (int d = 1; d <= K; ++d) CHECK(BigRational(d) * gw(g, d, {0, 0}, {c1, w - c1}) == rhs[d]);
    }
    QSeries rhs = compose(h.I(2) / h.I(1), h.q_of_Q()) * deg;
    for (int d = 1; d <= K; ++d) CHECK(BigRational(d * d) * gw(g, d, {0}, {g.n - 3 - g.l}) == rhs[d]);
  }
}

TEST_CASE("Calabi-Yau closed formulas agree with the general engine") {
  for (auto [n, a] : std::vector<std::pair<int, std::vector<int>>>{{5, {5}}, {6, {3, 3}}, {6, {6}}}) {
    auto g = make_geometry(n, a);
    int top = g.n - 1 - g.l;
    for (const auto& c : sorted_c(3, top, top)) {
      auto s = cy_three_point_series(g, c[0], c[1], c[2], 3);
      for (int d = 0; d <= 3; ++d) CHECK(s.values[d] == gw(g, d, {0, 0, 0}, c));
      if (std::find(c.begin(), c.end(), 0) != c.end()) {
        CHECK(s.values[0] == BigRational(g.prod_a));
        for (int d = 1; d <= 3; ++d) CHECK(s.values[d] == 0);
      }
    }
    for (const auto& c : sorted_c(4, top, top + 1)) {
      auto s = cy_four_point_series(g, c, 2);
      auto alt = cy_four_point_series_alt(g, c, 2);
      for (int d = 0; d <= 2; ++d) {
        CHECK(s.values[d] == gw(g, d, {0, 0, 0, 0}, c));
        CHECK(alt.values[d] == s.values[d]);
      }
      if (std::find(c.begin(), c.end(), 0) != c.end()) {
        for (int d = 0; d <= 2; ++d) CHECK(s.values[d] == 0);
      }
    }
  }
  CHECK_THROWS_AS(cy_three_point_series(make_geometry(5, {3}), 1, 1, 1, 2), HypothesisViolated);
  CHECK_THROWS_AS(cy_three_point_series(make_geometry(5, {5}), 1, 1, 2, 2), HypothesisViolated);
}

TEST_CASE("published first-degree Calabi-Yau numbers") {
  CHECK(cy_three_point_series(make_geometry(8, {8}), 2, 2, 2, 1).values[1] == BigRational(BigInt("59021312")));
  CHECK(cy_three_point_series(make_geometry(9, {9}), 2, 2, 3, 1).values[1] == BigRational(BigInt("1579510449")));
  CHECK(cy_four_point_series(make_geometry(9, {9}), {2, 2, 2, 2}, 1).values[1] ==
        BigRational(BigInt("2395066806")));
  CHECK(cy_four_point_series(make_geometry(10, {10}), {2, 2, 2, 3}, 1).values[1] ==
        BigRational(BigInt("75062592000")));
}

TEST_CASE("projective space closed formulas") {
  for (int n = 4; n <= 5; ++n) {
    auto g = make_geometry(n, {});
    for (int N = 3; N <= 4; ++N) {
      for (int d = 0; d <= 2; ++d) {
        for (const auto& q : sorted_queries(g, N, d)) CHECK(proj_theorem4(n, q) == gw_invariant(g, q));
      }
    }
  }
  // Four lines through P^3 with H^2 insertions (Schubert sigma_1 classes of the Grassmannian) give 2.
  CHECK(gw(make_geometry(4, {}), 1, {0, 0, 0, 0}, {2, 2, 2, 2}) == 2);
  // d = 2, four pure H insertions: 0.
  CHECK(gw(make_geometry(4, {}), 2, {0, 0, 0, 0}, {3, 3, 3, 3}) == 0);
}

TEST_CASE("vanishing predicate") {
  auto p3 = make_geometry(4, {});
  // Two copies of tau_1 H^2 on P^3 with two free slots.
  CHECK(vanishing_predicate(p3, {1, 1, 0, 2}, {2, 2, 3, 0}));
  CHECK(gw(p3, 2, {1, 1, 0, 2}, {2, 2, 3, 0}) == 0);
  // nu = 0 or 1 never satisfies the hypothesis.
  CHECK_FALSE(vanishing_predicate(make_geometry(5, {5}), {2, 2, 0}, {0, 0, 0}));
  CHECK_FALSE(vanishing_predicate(make_geometry(5, {4}), {2, 2, 0}, {0, 0, 0}));
  // Sum of b over the admissible set at most N - 3.
  CHECK_FALSE(vanishing_predicate(p3, {0, 0, 0}, {0, 3, 3}));
  CHECK_FALSE(vanishing_predicate(p3, {1, 0, 0, 0}, {0, 3, 3, 3}));
  CHECK_FALSE(vanishing_predicate(p3, {0, 0}, {0, 0}));
}

TEST_CASE("bound certificate") {
  auto cubic = make_geometry(5, {3});
  BoundCertificate cert = bound_certificate(cubic, 4, 4);
  CHECK(cert.finite);
  CHECK(cert.invariants > 0);
  CHECK(cert.constant > 0);
  CHECK(cert.max_by_degree.size() == 5);
  // Degree zero: |b! <a> C(N-3; b)| / N! <= <a>, so the ratio is at most <a>^{1/N} <= 3.
  CHECK(cert.max_by_degree[0] <= 3.0);
  CHECK(cert.bounded_growth);
  CHECK(cert.growth.size() == 4);
  BoundCertificate empty = bound_certificate(cubic, -1, 0);
  CHECK(empty.invariants == 0);
  CHECK(empty.max_by_degree.empty());
}
