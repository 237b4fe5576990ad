#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "mirrorgw/errors.hpp"

namespace mirrorgw {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Canonicalized num/den (the two-argument mpq constructor does not reduce).
BigRational rational(long num, long den);

// Integral values print as plain integers, everything else as "p/q".
std::string to_string(const BigRational& x);
BigRational parse_rational(const std::string& text);

BigInt factorial(long n);
// Ordinary binomial coefficient; zero unless 0 <= k <= n.
BigInt binomial(long n, long k);
// Generalized binomial C(t, d) = t(t-1)...(t-d+1)/d! for any integer t, d >= 0;
// zero for d < 0.
BigRational generalized_binomial(long t, long d);
// Multinomial (total; parts) with total = sum(parts), zero otherwise or if a part is negative.
BigInt multinomial(long total, const std::vector<int>& parts);

// Truncated power series in q with exact rational coefficients q^0..q^K.
class QSeries {
 public:
  QSeries() : c_(1) {}
  explicit QSeries(int order);
  QSeries(std::vector<BigRational> coeffs);

  static QSeries constant(const BigRational& value, int order);
  static QSeries one(int order) { return constant(1, order); }
  static QSeries monomial(const BigRational& coeff, int degree, int order);
  static QSeries variable(int order) { return monomial(1, 1, order); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  // Coefficient of q^d; zero for d < 0, error for d beyond the truncation order.
  const BigRational& operator[](int d) const { return c_[static_cast<size_t>(d)]; }
  BigRational& operator[](int d) { return c_[static_cast<size_t>(d)]; }
  BigRational coeff(int d) const;
  const std::vector<BigRational>& coeffs() const { return c_; }

  QSeries truncated(int order) const;
  bool is_zero() const;
  bool operator==(const QSeries& other) const;
  bool operator!=(const QSeries& other) const { return !(*this == other); }

  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  QSeries& operator*=(const QSeries& other);
  QSeries& operator*=(const BigRational& s);

  // Multiply by q^k (k >= 0), keeping the truncation order.
  QSeries shifted(int k) const;

 private:
  std::vector<BigRational> c_;
};

QSeries operator+(QSeries a, const QSeries& b);
QSeries operator-(QSeries a, const QSeries& b);
QSeries operator-(QSeries a);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(QSeries a, const BigRational& s);
QSeries operator*(const BigRational& s, QSeries a);
QSeries operator/(const QSeries& a, const QSeries& b);

enum class RingOp { add, sub, mul, div };
QSeries qs_ring_op(const QSeries& a, const QSeries& b, RingOp which);

QSeries inverse(const QSeries& a);
QSeries exp(const QSeries& a);
QSeries log(const QSeries& a);
QSeries pow(const QSeries& a, const BigRational& r);
QSeries pow(const QSeries& a, long k);
// D = q d/dq and its inverse on series without constant term.
QSeries derivative_D(const QSeries& a);
QSeries integrate_D(const QSeries& a);
// a(s(Q)) for s with zero constant term; the result has the order of s.
QSeries compose(const QSeries& a, const QSeries& s);

// Given J with J(0) = 0, returns Jt such that q = Q exp(Jt(Q)) inverts Q = q exp(J(q)).
QSeries qs_revert_mirror(const QSeries& J);
// q(Q) = Q exp(Jt(Q)) for the inverse mirror map.
QSeries inverse_mirror_map(const QSeries& J);

// Dense polynomial in one variable with rational coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<BigRational> coeffs);
  static Poly constant(const BigRational& v);
  static Poly monomial(const BigRational& coeff, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  BigRational coeff(int k) const;
  const std::vector<BigRational>& coeffs() const { return c_; }
  const BigRational& leading() const { return c_.back(); }
  bool operator==(const Poly& other) const { return c_ == other.c_; }
  bool operator!=(const Poly& other) const { return !(*this == other); }

  Poly derivative() const;
  QSeries evaluate(const QSeries& s) const;
  BigRational evaluate(const BigRational& x) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const BigRational& s);

 private:
  void trim();
  std::vector<BigRational> c_;
};

// Quotient and remainder of polynomial division; b must be nonzero.
void poly_divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder);
// Monic greatest common divisor (zero if both inputs are zero).
Poly poly_gcd(Poly a, Poly b);

// Reduced ratio num/den of polynomials with monic denominator.
class RationalFn {
 public:
  RationalFn() : num_(), den_(Poly::constant(1)) {}
  RationalFn(const Poly& num, const Poly& den);
  static RationalFn constant(const BigRational& v) { return RationalFn(Poly::constant(v), Poly::constant(1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }

  RationalFn derivative() const;

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);

 private:
  Poly num_;
  Poly den_;
};

QSeries ratfn_eval_at_series(const RationalFn& r, const QSeries& s);

// Truncated Laurent series in w: coefficients for exponents lo..hi are known,
// everything above hi is unknown.
class LSeries {
 public:
  LSeries() : lo_(0), c_(1) {}
  LSeries(int lo, int hi);
  static LSeries from_poly(const Poly& p, int hi);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  BigRational coeff(int e) const;  // zero below lo, error above hi
  BigRational& at(int e) { return c_[static_cast<size_t>(e - lo_)]; }
  bool is_zero() const;
  // Lowest exponent with a nonzero coefficient (hi + 1 if none).
  int valuation() const;

  LSeries truncated(int hi) const;
  LSeries shifted(int k) const;  // multiply by w^k
  // Drops the (zero) coefficients below w^e; throws if one of them is nonzero.
  LSeries dropped_below(int e) const;

  LSeries& operator+=(const LSeries& o);
  LSeries& operator-=(const LSeries& o);
  LSeries& operator*=(const BigRational& s);
  friend LSeries operator+(LSeries a, const LSeries& b) { return a += b; }
  friend LSeries operator-(LSeries a, const LSeries& b) { return a -= b; }
  friend LSeries operator*(LSeries a, const BigRational& s) { return a *= s; }
  friend LSeries operator*(const LSeries& a, const LSeries& b);
  bool operator==(const LSeries& o) const;

 private:
  int lo_;
  std::vector<BigRational> c_;
};

// num/den expanded about w = 0 up to w^hi; den(0) must be nonzero.
LSeries series_divide(const Poly& num, const Poly& den, int hi);

// Power series in q whose coefficients are truncated Laurent series in w.
class WLaurent {
 public:
  WLaurent() : deg_(1) {}
  explicit WLaurent(std::vector<LSeries> per_degree);
  static WLaurent constant(const QSeries& s, int w_hi);

  int order() const { return static_cast<int>(deg_.size()) - 1; }
  const LSeries& degree(int d) const { return deg_[static_cast<size_t>(d)]; }
  LSeries& degree(int d) { return deg_[static_cast<size_t>(d)]; }
  BigRational coeff(int d, int e) const { return degree(d).coeff(e); }
  // Coefficient of w^e as a q-series.
  QSeries coeff_w(int e) const;
  int e_min() const;  // lowest stored exponent
  int e_max() const;  // lowest precision bound over all degrees
  // True if no negative power of w has a nonzero coefficient.
  bool is_holomorphic() const;
  WLaurent truncated_q(int order) const;
  WLaurent truncated_w(int hi) const;
  // Drops stored negative powers of w (all of which must vanish).
  WLaurent holomorphic_part() const;

  WLaurent& operator+=(const WLaurent& o);
  WLaurent& operator-=(const WLaurent& o);
  friend WLaurent operator+(WLaurent a, const WLaurent& b) { return a += b; }
  friend WLaurent operator-(WLaurent a, const WLaurent& b) { return a -= b; }
  friend WLaurent operator*(const WLaurent& a, const QSeries& s);
  friend WLaurent operator*(const WLaurent& a, const WLaurent& b);
  WLaurent shifted_w(int k) const;
  bool operator==(const WLaurent& o) const { return deg_ == o.deg_; }

 private:
  std::vector<LSeries> deg_;
};

// {1 + (q/w) d/dq} H
WLaurent wl_apply_D(const WLaurent& h);
// D(H / H(0,q))
WLaurent wl_apply_M(const WLaurent& h);
// H(w, q) -> H(w, q / w^nu)
WLaurent wl_scale_q(const WLaurent& h, int nu);
// exp(s(q) * w) truncated at w^w_hi
WLaurent wl_exp_times_w(const QSeries& s, int w_hi);

}  // namespace mirrorgw
