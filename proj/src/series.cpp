#include "mirrorgw/series.hpp"

#include <algorithm>
#include <utility>

namespace mirrorgw {

BigRational rational(long num, long den) {
  if (den == 0) throw DivisionByNonUnit("zero denominator");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigRational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

BigRational parse_rational(const std::string& text) {
  BigRational r;
  if (r.set_str(text, 10) != 0) throw PreconditionViolated("not a rational number: " + text);
  r.canonicalize();
  if (r.get_den() == 0) throw PreconditionViolated("zero denominator: " + text);
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw PreconditionViolated("factorial of a negative number");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigRational generalized_binomial(long t, long d) {
  if (d < 0) return 0;
  BigRational r = 1;
  for (long i = 0; i < d; ++i) r *= BigRational(t - i);
  r /= BigRational(factorial(d));
  return r;
}

BigInt multinomial(long total, const std::vector<int>& parts) {
  long sum = 0;
  for (int p : parts) {
    if (p < 0) return 0;
    sum += p;
  }
  if (sum != total || total < 0) return 0;
  BigInt r = factorial(total);
  for (int p : parts) r /= factorial(p);
  return r;
}

// ---------------------------------------------------------------- QSeries

QSeries::QSeries(int order) {
  if (order < 0) throw PreconditionViolated("truncation order must be nonnegative");
  c_.assign(static_cast<size_t>(order) + 1, BigRational(0));
}

QSeries::QSeries(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw PreconditionViolated("a series needs at least one coefficient");
}

QSeries QSeries::constant(const BigRational& value, int order) {
  QSeries s(order);
  s[0] = value;
  return s;
}

QSeries QSeries::monomial(const BigRational& coeff, int degree, int order) {
  QSeries s(order);
  if (degree >= 0 && degree <= order) s[degree] = coeff;
  return s;
}

BigRational QSeries::coeff(int d) const {
  if (d < 0) return 0;
  if (d > order()) throw PrecisionExceeded("q^" + std::to_string(d) + " beyond order " + std::to_string(order()));
  return c_[static_cast<size_t>(d)];
}

QSeries QSeries::truncated(int order) const {
  if (order > this->order()) throw PrecisionExceeded("cannot extend a truncated series");
  return QSeries(std::vector<BigRational>(c_.begin(), c_.begin() + order + 1));
}

bool QSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const BigRational& x) { return x == 0; });
}

bool QSeries::operator==(const QSeries& other) const {
  int k = std::min(order(), other.order());
  for (int d = 0; d <= k; ++d)
    if (c_[d] != other.c_[d]) return false;
  return true;
}

QSeries& QSeries::operator+=(const QSeries& other) {
  if (other.order() < order()) c_.resize(other.c_.size());
  for (size_t d = 0; d < c_.size(); ++d) c_[d] += other.c_[d];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
  if (other.order() < order()) c_.resize(other.c_.size());
  for (size_t d = 0; d < c_.size(); ++d) c_[d] -= other.c_[d];
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& other) {
  *this = *this * other;
  return *this;
}

QSeries& QSeries::operator*=(const BigRational& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

QSeries QSeries::shifted(int k) const {
  if (k < 0) throw PreconditionViolated("negative shift of a power series");
  QSeries r(order());
  for (int d = k; d <= order(); ++d) r[d] = c_[d - k];
  return r;
}

QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
QSeries operator-(QSeries a) {
  for (int d = 0; d <= a.order(); ++d) a[d] = -a[d];
  return a;
}
QSeries operator*(QSeries a, const BigRational& s) { return a *= s; }
QSeries operator*(const BigRational& s, QSeries a) { return a *= s; }

QSeries operator*(const QSeries& a, const QSeries& b) {
  int k = std::min(a.order(), b.order());
  QSeries r(k);
  BigRational t;
  for (int i = 0; i <= k; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= k; ++j) {
      if (b[j] == 0) continue;
      mpq_mul(t.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
      r[i + j] += t;
    }
  }
  return r;
}

QSeries inverse(const QSeries& a) {
  if (a[0] == 0) throw DivisionByNonUnit("series with zero constant term is not invertible");
  int k = a.order();
  QSeries r(k);
  BigRational inv0 = 1 / a[0];
  r[0] = inv0;
  for (int d = 1; d <= k; ++d) {
    BigRational acc = 0;
    for (int j = 1; j <= d; ++j)
      if (a[j] != 0) acc += a[j] * r[d - j];
    r[d] = -acc * inv0;
  }
  return r;
}

QSeries operator/(const QSeries& a, const QSeries& b) {
  if (b[0] == 0) throw DivisionByNonUnit("divisor has zero constant term");
  int k = std::min(a.order(), b.order());
  return a.truncated(k) * inverse(b.truncated(k));
}

QSeries qs_ring_op(const QSeries& a, const QSeries& b, RingOp which) {
  switch (which) {
    case RingOp::add: return a + b;
    case RingOp::sub: return a - b;
    case RingOp::mul: return a * b;
    case RingOp::div: return a / b;
  }
  throw PreconditionViolated("unknown ring operation");
}

QSeries exp(const QSeries& a) {
  if (a[0] != 0) throw PreconditionViolated("exp requires a(0) = 0");
  int k = a.order();
  QSeries r(k);
  r[0] = 1;
  for (int d = 1; d <= k; ++d) {
    BigRational acc = 0;
    for (int j = 1; j <= d; ++j)
      if (a[j] != 0) acc += BigRational(j) * a[j] * r[d - j];
    r[d] = acc / d;
  }
  return r;
}

QSeries log(const QSeries& a) {
  if (a[0] != 1) throw PreconditionViolated("log requires a(0) = 1");
  int k = a.order();
  QSeries r(k);
  for (int d = 1; d <= k; ++d) {
    BigRational acc = 0;
    for (int j = 1; j < d; ++j)
      if (a[d - j] != 0) acc += BigRational(j) * r[j] * a[d - j];
    r[d] = a[d] - acc / d;
  }
  return r;
}

QSeries pow(const QSeries& a, const BigRational& r) {
  if (a[0] != 1) throw PreconditionViolated("pow_rational requires a(0) = 1");
  // Miller's recurrence for b = a^r: d b_d = sum_j ((r+1) j - d) a_j b_{d-j}.
  int k = a.order();
  QSeries b(k);
  b[0] = 1;
  for (int d = 1; d <= k; ++d) {
    BigRational acc = 0;
    for (int j = 1; j <= d; ++j)
      if (a[j] != 0) acc += ((r + 1) * j - d) * a[j] * b[d - j];
    b[d] = acc / d;
  }
  return b;
}

QSeries pow(const QSeries& a, long k) {
  if (k < 0) return pow(inverse(a), -k);
  QSeries result = QSeries::one(a.order());
  QSeries base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

QSeries derivative_D(const QSeries& a) {
  QSeries r(a.order());
  for (int d = 1; d <= a.order(); ++d) r[d] = a[d] * d;
  return r;
}

QSeries integrate_D(const QSeries& a) {
  if (a[0] != 0) throw PreconditionViolated("integrate_D requires a(0) = 0");
  QSeries r(a.order());
  for (int d = 1; d <= a.order(); ++d) r[d] = a[d] / d;
  return r;
}

QSeries compose(const QSeries& a, const QSeries& s) {
  if (s[0] != 0) throw PreconditionViolated("composition requires s(0) = 0");
  int k = std::min(a.order(), s.order());
  QSeries st = s.truncated(k);
  QSeries r = QSeries::constant(a[k], k);
  for (int d = k - 1; d >= 0; --d) {
    r = r * st;
    r[0] += a[d];
  }
  return r;
}

QSeries inverse_mirror_map(const QSeries& J) {
  if (J[0] != 0) throw PreconditionViolated("mirror map requires J(0) = 0");
  int k = J.order();
  QSeries Q = QSeries::variable(k);
  QSeries s = Q;
  // Each pass fixes one more coefficient of q(Q) = Q exp(-J(q(Q))).
  for (int it = 0; it < k; ++it) s = Q * exp(-compose(J, s));
  return s;
}

QSeries qs_revert_mirror(const QSeries& J) {
  QSeries s = inverse_mirror_map(J);
  return -compose(J, s);
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const BigRational& v) { return Poly(std::vector<BigRational>{v}); }

Poly Poly::monomial(const BigRational& coeff, int degree) {
  std::vector<BigRational> c(static_cast<size_t>(degree) + 1, BigRational(0));
  c.back() = coeff;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigRational Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[static_cast<size_t>(k)];
}

Poly Poly::derivative() const {
  if (degree() <= 0) return Poly();
  std::vector<BigRational> c(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * static_cast<long>(k);
  return Poly(std::move(c));
}

QSeries Poly::evaluate(const QSeries& s) const {
  QSeries r(s.order());
  for (int k = degree(); k >= 0; --k) {
    r = r * s;
    r[0] += c_[k];
  }
  return r;
}

BigRational Poly::evaluate(const BigRational& x) const {
  BigRational r = 0;
  for (int k = degree(); k >= 0; --k) r = r * x + c_[k];
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<BigRational> c(std::max(a.c_.size(), b.c_.size()), BigRational(0));
  for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + b * BigRational(-1); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<BigRational> c(a.c_.size() + b.c_.size() - 1, BigRational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const BigRational& s) {
  std::vector<BigRational> c = a.c_;
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

void poly_divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) {
  if (b.is_zero()) throw DivisionByNonUnit("polynomial division by zero");
  std::vector<BigRational> r = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  std::vector<BigRational> q(da >= db ? static_cast<size_t>(da - db + 1) : 0, BigRational(0));
  for (int k = da; k >= db; --k) {
    BigRational f = r[k] / b.leading();
    q[k - db] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeff(j);
  }
  quotient = Poly(std::move(q));
  remainder = Poly(std::move(r));
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (1 / a.leading());
}

// ---------------------------------------------------------------- RationalFn

RationalFn::RationalFn(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByNonUnit("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly::constant(1);
    return;
  }
  Poly g = poly_gcd(num, den);
  Poly n, d, rem;
  poly_divmod(num, g, n, rem);
  poly_divmod(den, g, d, rem);
  BigRational lead = d.leading();
  num_ = n * (1 / lead);
  den_ = d * (1 / lead);
}

RationalFn RationalFn::derivative() const {
  return RationalFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

QSeries ratfn_eval_at_series(const RationalFn& r, const QSeries& s) {
  QSeries den = r.den().evaluate(s);
  if (den[0] == 0) throw SingularEvaluation("denominator vanishes at q = 0");
  return r.num().evaluate(s) / den;
}

// ---------------------------------------------------------------- LSeries

LSeries::LSeries(int lo, int hi) : lo_(lo) {
  c_.assign(hi >= lo ? static_cast<size_t>(hi - lo + 1) : 0, BigRational(0));
}

LSeries LSeries::from_poly(const Poly& p, int hi) {
  LSeries r(0, hi);
  for (int k = 0; k <= std::min(hi, p.degree()); ++k) r.at(k) = p.coeff(k);
  return r;
}

BigRational LSeries::coeff(int e) const {
  if (e < lo_) return 0;
  if (e > hi())
    throw PrecisionExceeded("w^" + std::to_string(e) + " beyond precision " + std::to_string(hi()));
  return c_[static_cast<size_t>(e - lo_)];
}

LSeries LSeries::dropped_below(int e) const {
  if (e <= lo_) return *this;
  for (int k = lo_; k < e && k <= hi(); ++k)
    if (coeff(k) != 0) throw HolomorphyViolation("nonzero coefficient below w^" + std::to_string(e));
  LSeries r(e, std::max(hi(), e - 1));
  for (int k = e; k <= hi(); ++k) r.at(k) = coeff(k);
  return r;
}

bool LSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const BigRational& x) { return x == 0; });
}

int LSeries::valuation() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return lo_ + static_cast<int>(k);
  return hi() + 1;
}

LSeries LSeries::truncated(int hi) const {
  if (hi > this->hi()) throw PrecisionExceeded("cannot extend a truncated Laurent series");
  LSeries r(lo_, hi);
  for (int e = lo_; e <= hi; ++e) r.at(e) = coeff(e);
  return r;
}

LSeries LSeries::shifted(int k) const {
  LSeries r = *this;
  r.lo_ += k;
  return r;
}

LSeries& LSeries::operator+=(const LSeries& o) {
  int lo = std::min(lo_, o.lo_);
  int hi = std::min(this->hi(), o.hi());
  LSeries r(lo, hi);
  for (int e = lo; e <= hi; ++e) {
    if (e >= lo_) r.at(e) += c_[e - lo_];
    if (e >= o.lo_) r.at(e) += o.c_[e - o.lo_];
  }
  return *this = std::move(r);
}

LSeries& LSeries::operator-=(const LSeries& o) {
  LSeries neg = o;
  neg *= BigRational(-1);
  return *this += neg;
}

LSeries& LSeries::operator*=(const BigRational& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

LSeries operator*(const LSeries& a, const LSeries& b) {
  int lo = a.lo_ + b.lo_;
  int hi = std::min(a.hi() + b.lo_, b.hi() + a.lo_);
  LSeries r(lo, hi);
  BigRational t;
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      int e = lo + static_cast<int>(i + j);
      if (e > hi) break;
      if (b.c_[j] == 0) continue;
      mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
      r.at(e) += t;
    }
  }
  return r;
}

bool LSeries::operator==(const LSeries& o) const {
  int lo = std::min(lo_, o.lo_);
  int hi = std::min(this->hi(), o.hi());
  for (int e = lo; e <= hi; ++e)
    if (coeff(e) != o.coeff(e)) return false;
  return true;
}

LSeries series_divide(const Poly& num, const Poly& den, int hi) {
  BigRational d0 = den.coeff(0);
  if (d0 == 0) throw DivisionByNonUnit("denominator vanishes at w = 0");
  LSeries r(0, hi);
  for (int e = 0; e <= hi; ++e) {
    BigRational acc = num.coeff(e);
    for (int j = 1; j <= std::min(e, den.degree()); ++j) acc -= den.coeff(j) * r.coeff(e - j);
    r.at(e) = acc / d0;
  }
  return r;
}

// ---------------------------------------------------------------- WLaurent

WLaurent::WLaurent(std::vector<LSeries> per_degree) : deg_(std::move(per_degree)) {
  if (deg_.empty()) throw PreconditionViolated("WLaurent needs at least one q-degree");
}

WLaurent WLaurent::constant(const QSeries& s, int w_hi) {
  std::vector<LSeries> deg;
  for (int d = 0; d <= s.order(); ++d) {
    LSeries l(0, w_hi);
    if (w_hi >= 0) l.at(0) = s[d];
    deg.push_back(std::move(l));
  }
  return WLaurent(std::move(deg));
}

QSeries WLaurent::coeff_w(int e) const {
  QSeries r(order());
  for (int d = 0; d <= order(); ++d) r[d] = deg_[d].coeff(e);
  return r;
}

int WLaurent::e_min() const {
  int m = deg_[0].lo();
  for (const auto& l : deg_) m = std::min(m, l.lo());
  return m;
}

int WLaurent::e_max() const {
  int m = deg_[0].hi();
  for (const auto& l : deg_) m = std::min(m, l.hi());
  return m;
}

bool WLaurent::is_holomorphic() const {
  for (const auto& l : deg_)
    for (int e = l.lo(); e < 0 && e <= l.hi(); ++e)
      if (l.coeff(e) != 0) return false;
  return true;
}

WLaurent WLaurent::truncated_q(int order) const {
  if (order > this->order()) throw PrecisionExceeded("cannot extend q-order");
  return WLaurent(std::vector<LSeries>(deg_.begin(), deg_.begin() + order + 1));
}

WLaurent WLaurent::truncated_w(int hi) const {
  std::vector<LSeries> deg;
  for (const auto& l : deg_) deg.push_back(l.truncated(std::min(hi, l.hi())));
  return WLaurent(std::move(deg));
}

WLaurent WLaurent::holomorphic_part() const {
  std::vector<LSeries> deg;
  for (const auto& l : deg_) deg.push_back(l.dropped_below(0));
  return WLaurent(std::move(deg));
}

WLaurent& WLaurent::operator+=(const WLaurent& o) {
  if (o.order() < order()) deg_.resize(o.deg_.size());
  for (size_t d = 0; d < deg_.size(); ++d) deg_[d] += o.deg_[d];
  return *this;
}

WLaurent& WLaurent::operator-=(const WLaurent& o) {
  if (o.order() < order()) deg_.resize(o.deg_.size());
  for (size_t d = 0; d < deg_.size(); ++d) deg_[d] -= o.deg_[d];
  return *this;
}

WLaurent operator*(const WLaurent& a, const QSeries& s) {
  int k = std::min(a.order(), s.order());
  std::vector<LSeries> deg;
  for (int d = 0; d <= k; ++d) {
    LSeries acc = a.deg_[d] * s[0];
    for (int i = 0; i < d; ++i)
      if (s[d - i] != 0) acc += a.deg_[i] * s[d - i];
    deg.push_back(std::move(acc));
  }
  return WLaurent(std::move(deg));
}

WLaurent operator*(const WLaurent& a, const WLaurent& b) {
  int k = std::min(a.order(), b.order());
  std::vector<LSeries> deg;
  for (int d = 0; d <= k; ++d) {
    LSeries acc = a.deg_[0] * b.deg_[d];
    for (int i = 1; i <= d; ++i) acc += a.deg_[i] * b.deg_[d - i];
    deg.push_back(std::move(acc));
  }
  return WLaurent(std::move(deg));
}

WLaurent WLaurent::shifted_w(int k) const {
  std::vector<LSeries> deg;
  for (const auto& l : deg_) deg.push_back(l.shifted(k));
  return WLaurent(std::move(deg));
}

WLaurent wl_apply_D(const WLaurent& h) {
  std::vector<LSeries> deg;
  for (int d = 0; d <= h.order(); ++d) {
    const LSeries& l = h.degree(d);
    if (d == 0) {
      deg.push_back(l);
    } else {
      deg.push_back(l + l.shifted(-1) * BigRational(d));
    }
  }
  return WLaurent(std::move(deg));
}

WLaurent wl_apply_M(const WLaurent& h) {
  if (!h.is_holomorphic()) throw NotHolomorphicAtZero("negative powers of w present");
  QSeries h0 = h.coeff_w(0);
  if (h0[0] != 1) throw NonUnitEvaluation("H(0,q) must have constant term 1");
  return wl_apply_D(h * inverse(h0));
}

WLaurent wl_scale_q(const WLaurent& h, int nu) {
  std::vector<LSeries> deg;
  for (int d = 0; d <= h.order(); ++d) deg.push_back(h.degree(d).shifted(-nu * d));
  return WLaurent(std::move(deg));
}

WLaurent wl_exp_times_w(const QSeries& s, int w_hi) {
  int k = s.order();
  std::vector<LSeries> deg(static_cast<size_t>(k) + 1, LSeries(0, w_hi));
  QSeries power = QSeries::one(k);
  BigRational inv_fact = 1;
  for (int e = 0; e <= w_hi; ++e) {
    if (e > 0) {
      power = power * s;
      inv_fact /= e;
    }
    for (int d = 0; d <= k; ++d) deg[d].at(e) = power[d] * inv_fact;
  }
  return WLaurent(std::move(deg));
}

}  // namespace mirrorgw
