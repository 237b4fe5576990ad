#include "doctest.h"
#include "mirrorgw/series.hpp"

using namespace mirrorgw;

namespace {

QSeries series_of(std::vector<BigRational> c) { return QSeries(std::move(c)); }

}  // namespace

TEST_CASE("rationals stay canonical") {
  BigRational x = rational(6, -4);
  CHECK(x.get_num() == -3);
  CHECK(x.get_den() == 2);
  CHECK(to_string(x) == "-3/2");
  CHECK(to_string(rational(8, 4)) == "2");
  CHECK(parse_rational("10/4") == rational(5, 2));
  CHECK(to_string(parse_rational("12197109744970010814464")) == "12197109744970010814464");
  CHECK_THROWS_AS(parse_rational("abc"), PreconditionViolated);
  CHECK_THROWS_AS(rational(1, 0), DivisionByNonUnit);
}

TEST_CASE("combinatorial helpers") {
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(7, 3) == 35);
  CHECK(binomial(3, 5) == 0);
  CHECK(generalized_binomial(-1, 3) == -1);  // (-1)(-2)(-3)/3!
  CHECK(generalized_binomial(5, 2) == 10);
  CHECK(generalized_binomial(2, -1) == 0);
  CHECK(multinomial(4, {1, 1, 2}) == 12);
  CHECK(multinomial(4, {1, 1}) == 0);
}

TEST_CASE("ring operations on truncated series") {
  QSeries one_plus = series_of({1, 1, 0, 0});
  QSeries one_minus = series_of({1, -1, 0, 0});
  CHECK(one_plus * one_minus == series_of({1, 0, -1, 0}));
  CHECK(QSeries::one(3) / one_minus == series_of({1, 1, 1, 1}));
  CHECK(series_of({1, 2}) * series_of({3, rational(1, 2)}) == series_of({3, rational(13, 2)}));
  // Binary operations truncate to the shorter operand.
  CHECK((series_of({1, 1, 1}) + series_of({1, 1})).order() == 1);
  CHECK_THROWS_AS(inverse(series_of({0, 1})), DivisionByNonUnit);
}

TEST_CASE("rational powers, D, exp and log") {
  QSeries s = pow(series_of({1, 1, 0}), rational(1, 2));
  // Binomial-series oracle: C(1/2, k).
  CHECK(s == series_of({1, rational(1, 2), rational(-1, 8)}));
  CHECK(s * s == series_of({1, 1, 0}));
  CHECK(derivative_D(series_of({1, 3, 5})) == series_of({0, 3, 10}));
  QSeries x = series_of({1, 1, 0, 0, 0});
  CHECK(exp(log(x)) == x);
  CHECK(integrate_D(derivative_D(series_of({0, 2, 7, 1}))) == series_of({0, 2, 7, 1}));
  CHECK(pow(series_of({1, 1, 0, 0}), 3L) == series_of({1, 3, 3, 1}));
  CHECK(pow(series_of({1, -1, 0, 0}), -1L) == series_of({1, 1, 1, 1}));
}

TEST_CASE("composition") {
  // (1 + q)^2 at q = Q + Q^2.
  QSeries a = series_of({1, 2, 1, 0});
  QSeries s = series_of({0, 1, 1, 0});
  CHECK(compose(a, s) == series_of({1, 2, 3, 2}));
  CHECK_THROWS_AS(compose(a, series_of({1, 1, 0, 0})), PreconditionViolated);
}

TEST_CASE("inverse mirror map") {
  const int K = 6;
  CHECK(qs_revert_mirror(QSeries(K)).is_zero());
  // J = q: Q = q e^q, so q = W(Q) (Lambert W) and Jt = log(W/Q) = -W(Q).
  // Lagrange-inversion oracle: W(Q) = sum_{m >= 1} (-m)^{m-1} Q^m / m!.
  QSeries J = QSeries::variable(K);
  QSeries Jt = qs_revert_mirror(J);
  for (int m = 1; m <= K; ++m) {
    BigRational w = BigRational(BigInt(1)) / BigRational(factorial(m));
    for (int i = 0; i < m - 1; ++i) w *= -m;
    CHECK(Jt[m] == -w);
  }
  CHECK(Jt[1] == -1);
  CHECK(Jt[2] == 1);
  CHECK(Jt[3] == rational(-3, 2));
  CHECK(Jt[4] == rational(8, 3));
  // Round trip for a generic J: q(Q) e^{J(q(Q))} = Q.
  QSeries J2 = series_of({0, 3, rational(-1, 2), 7, 0, 1, 2});
  QSeries q_of_Q = inverse_mirror_map(J2);
  CHECK(q_of_Q * exp(compose(J2, q_of_Q)) == QSeries::variable(K));
}

TEST_CASE("polynomials and rational functions") {
  Poly u = Poly::monomial(1, 1);
  Poly one = Poly::constant(1);
  RationalFn r(u - one, u + one);
  // (u-1)/(u+1) at u = 1 + q is q/(2+q) = q/2 - q^2/4 + q^3/8.
  QSeries v = ratfn_eval_at_series(r, series_of({1, 1, 0, 0}));
  CHECK(v == series_of({0, rational(1, 2), rational(-1, 4), rational(1, 8)}));
  CHECK(ratfn_eval_at_series(RationalFn::constant(1), series_of({5, 1})) == QSeries::one(1));
  CHECK(ratfn_eval_at_series(RationalFn(u, one), series_of({2, 3, 4})) == series_of({2, 3, 4}));
  // Reduction to lowest terms with a monic denominator.
  RationalFn reduced((u * u - one) * BigRational(2), (u - one) * BigRational(4));
  CHECK(reduced.den() == one);
  CHECK(reduced.num() == (u + one) * rational(1, 2));
}

TEST_CASE("w-Laurent operators") {
  // {1 + (q/w) d/dq} applied to a constant is the constant itself.
  WLaurent one = WLaurent::constant(QSeries::one(2), 3);
  CHECK(wl_apply_D(one) == one);
  CHECK(wl_apply_M(one).coeff(0, 0) == 1);
  // H = q w^0 gives q + q w^{-1}.
  std::vector<LSeries> per_degree(3, LSeries(-1, 3));
  per_degree[1].at(0) = 1;
  WLaurent h(per_degree);
  WLaurent dh = wl_apply_D(h);
  CHECK(dh.coeff(1, 0) == 1);
  CHECK(dh.coeff(1, -1) == 1);
  CHECK(dh.coeff(0, 0) == 0);
  CHECK(dh.coeff(2, 0) == 0);
  CHECK_FALSE(dh.is_holomorphic());
}
