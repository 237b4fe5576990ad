#include "doctest.h"
#include "mirrorgw/asym.hpp"
#include "mirrorgw/context.hpp"

using namespace mirrorgw;

TEST_CASE("the series L") {
  const int K = 6;
  // |a| = 0: L = (1+q)^{1/n}.
  auto p4 = make_geometry(5, {});
  QSeries L = solve_L(p4, K);
  CHECK(pow(L, 5L) == QSeries::one(K) + QSeries::variable(K));
  // |a| = n: L = (1 - a^a q)^{-1/n}.
  auto quintic = make_geometry(5, {5});
  QSeries Lq = solve_L(quintic, K);
  CHECK(pow(Lq, -5L) == QSeries::one(K) - QSeries::monomial(3125, 1, K));
  // Implicit differentiation of L^5 - 27 q L^3 = 1 at q = 0: 5 L'(0) = 27.
  auto cubic = make_geometry(5, {3});
  QSeries Lc = solve_L(cubic, K);
  CHECK(Lc[0] == 1);
  CHECK(Lc[1] == rational(27, 5));
  CHECK(pow(Lc, 5L) - QSeries::monomial(27, 1, K) * pow(Lc, 3L) == QSeries::one(K));
}

TEST_CASE("chi coefficients") {
  // (3D+1)(3D+2)(3D+3) = 27 D^3 + 54 D^2 + 33 D + 6.
  auto chi = compute_chi(make_geometry(5, {3}));
  REQUIRE(chi.size() == 4);
  CHECK(chi[0] == 1);
  CHECK(chi[1] == 2);
  CHECK(chi[2] == rational(11, 9));
  CHECK(chi[3] == rational(2, 9));
  auto empty = compute_chi(make_geometry(5, {}));
  REQUIRE(empty.size() == 1);
  CHECK(empty[0] == 1);
  auto g = make_geometry(8, {2, 3});
  CHECK(compute_chi(g)[1] == rational(g.abs_a + g.l, 2));
}

TEST_CASE("H_{m,j} rational functions") {
  auto g = make_geometry(5, {3});
  HTable table(g);
  Poly u = Poly::monomial(1, 1);
  CHECK(table.get(0, 0) == RationalFn::constant(1));
  for (int m = 0; m <= 4; ++m) {
    CHECK(table.get(m, 0) == RationalFn::constant(1));
    CHECK(table.get(m, m + 1).is_zero());
  }
  for (int m = 2; m <= 4; ++m) {
    RationalFn expect(u - Poly::constant(1), Poly::constant(g.abs_a) + u * BigRational(g.nu));
    expect = expect * RationalFn::constant(BigRational(binomial(m, 2)));
    CHECK(table.get(m, 1) == expect);
  }
}

TEST_CASE("asymptotic expansion") {
  const int K = 6;
  for (auto [n, a] : std::vector<std::pair<int, std::vector<int>>>{{5, {5}}, {5, {}}, {5, {3}}, {6, {2, 2}}}) {
    auto g = make_geometry(n, a);
    AsymptoticData data = solve_asymptotic_expansion(g, 3, K);
    CHECK(data.xi[0] == 0);
    CHECK(QSeries::one(K) + derivative_D(data.xi) == data.L);
    CHECK(data.Phi[0][0] == 1);
    for (int b = 1; b <= 3; ++b) CHECK(data.Phi[b][0] == 0);
    CHECK(data.Phi_at(-1).is_zero());
    for (const auto& r : asymptotic_residual(data)) CHECK(r.is_zero());
  }
  // Closed forms of Phi_0 for |a| = n and |a| = 0.
  auto quintic = make_geometry(5, {5});
  AsymptoticData q = solve_asymptotic_expansion(quintic, 1, K);
  CHECK(q.Phi[0] == q.L);
  CHECK(q.Phi[0] == pow(QSeries::one(K) - QSeries::monomial(3125, 1, K), rational(-1, 5)));
  auto p5 = make_geometry(6, {});
  AsymptoticData p = solve_asymptotic_expansion(p5, 1, K);
  CHECK(p.Phi[0] == pow(QSeries::one(K) + QSeries::variable(K), rational(-5, 12)));
  auto x33 = make_geometry(6, {3, 3});
  AsymptoticData c = solve_asymptotic_expansion(x33, 1, K);
  CHECK(c.Phi[0] == pow(QSeries::one(K) - QSeries::monomial(729, 1, K), rational(-3, 12)));
}

TEST_CASE("first operator at q = 0") {
  // L_1 = (|a| + nu L^n){D + (L^n - 1)/(|a| + nu L^n) (nu n L^n / (2(|a| + nu L^n)) - (l+1)/2)}:
  // at q = 0 (L = 1) it reduces to n D.
  for (auto [n, a] : std::vector<std::pair<int, std::vector<int>>>{{5, {3}}, {5, {5}}, {6, {}}}) {
    auto g = make_geometry(n, a);
    auto ops = build_L_operators(g, 3);
    REQUIRE(ops.size() >= 1);
    CHECK(ops[0].coeff[1][0] == n);
    CHECK(ops[0].coeff[0][0] == 0);
  }
}

TEST_CASE("derived Phi families") {
  const int K = 4;
  auto quintic = make_geometry(5, {5});
  MirrorContext ctx(quintic, K, 5);
  const PhiFamilies& phi = ctx.phi();
  QSeries phi0 = ctx.Phi0();
  for (int p = quintic.l; p < quintic.n; ++p) {
    CHECK(phi.Phi_pb(p, 0) / phi0 == pow(ctx.L(), static_cast<long>(p - quintic.l)));
  }
  QSeries base = phi0 * phi0 / ctx.I0_squared();
  CHECK(phi.Phi_m_c(0, {}) == base);
  CHECK(phi.Phi_m_c(1, {}) == -base);
  QSeries Phi1 = ctx.asym().Phi[1];
  CHECK(phi.Phi_m_c(0, {1}) == -(base * (Phi1 / (BigRational(2) * phi0))));
  CHECK(ctx.Phi_m_c(0, {1}) == phi.Phi_m_c(0, {1}));
}
