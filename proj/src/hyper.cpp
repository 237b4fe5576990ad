#include "mirrorgw/hyper.hpp"

#include <algorithm>

namespace mirrorgw {

namespace {

// s * (alpha w + beta), truncated at the precision of s.
LSeries mul_linear(const LSeries& s, const BigRational& alpha, const BigRational& beta) {
  LSeries r(s.lo(), s.hi());
  for (int e = s.lo(); e <= s.hi(); ++e) {
    BigRational v = beta * s.coeff(e);
    if (e > s.lo()) v += alpha * s.coeff(e - 1);
    r.at(e) = v;
  }
  return r;
}

// (w + r)^n - w^n as a polynomial in w.
Poly shifted_power_difference(int n, int r) {
  std::vector<BigRational> c(static_cast<size_t>(n), BigRational(0));
  BigInt rp;
  for (int k = 0; k < n; ++k) {
    mpz_ui_pow_ui(rp.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(n - k));
    c[k] = BigRational(binomial(n, k) * rp);
  }
  return Poly(std::move(c));
}

LSeries inverse_lseries(const LSeries& s) {
  BigRational s0 = s.coeff(0);
  if (s.lo() != 0 || s0 == 0) throw DivisionByNonUnit("Laurent series without unit constant term");
  LSeries r(0, s.hi());
  for (int e = 0; e <= s.hi(); ++e) {
    BigRational acc = e == 0 ? BigRational(1) : BigRational(0);
    for (int j = 1; j <= e; ++j) acc -= s.coeff(j) * r.coeff(e - j);
    r.at(e) = acc / s0;
  }
  return r;
}

// 1 / prod_{r=1}^{d} ((w+r)^n - w^n) up to w^hi.
LSeries inverse_denominator(int n, int d, int hi) {
  LSeries den(0, hi);
  den.at(0) = 1;
  for (int r = 1; r <= d; ++r) den = den * LSeries::from_poly(shifted_power_difference(n, r), hi);
  return inverse_lseries(den);
}

// w^{nu d} prod_k prod_{r=first}^{a_k d - 1 + first} (a_k w + r) times the inverse denominator.
WLaurent hypergeometric(const CIGeometry& g, int K_w, int K_q, int first) {
  if (K_w < 0 || K_q < 0) throw PreconditionViolated("orders must be nonnegative");
  std::vector<LSeries> deg;
  for (int d = 0; d <= K_q; ++d) {
    int shift = g.nu * d;
    int hi = K_w - shift;
    LSeries num(0, std::max(hi, 0));
    num.at(0) = 1;
    for (int ak : g.a)
      for (int r = first; r < ak * d + first; ++r) num = mul_linear(num, ak, r);
    LSeries term = num * inverse_denominator(g.n, d, std::max(hi, 0));
    term = term.shifted(shift);
    if (hi < 0) term = LSeries(0, K_w);  // w^{nu d} exceeds the window: all known coefficients vanish
    deg.push_back(term.truncated(K_w));
  }
  return WLaurent(std::move(deg));
}

WLaurent q_shift(const WLaurent& h, int k) {
  std::vector<LSeries> deg;
  for (int d = 0; d <= h.order(); ++d) {
    if (d < k)
      deg.push_back(LSeries(h.degree(0).lo(), h.degree(0).hi()));
    else
      deg.push_back(h.degree(d - k));
  }
  return WLaurent(std::move(deg));
}

WLaurent scale(const WLaurent& h, const BigRational& s) { return h * QSeries::constant(s, h.order()); }

void require_holomorphic(const WLaurent& h, const std::string& what) {
  if (!h.is_holomorphic()) throw HolomorphyViolation(what + " has negative powers of w");
}

}  // namespace

int default_w_precision(const CIGeometry& g, int K_q) { return 2 * g.n + g.nu * K_q + 2; }

WLaurent build_F(const CIGeometry& g, int K_w, int K_q) { return hypergeometric(g, K_w, K_q, 1); }

WLaurent build_F0(const CIGeometry& g, int K_w, int K_q) { return hypergeometric(g, K_w, K_q, 0); }

// ---------------------------------------------------------------- CoeffTable

CoeffTable::CoeffTable(const CIGeometry& g, int max_degree) : geom_(g), max_degree_(max_degree), width_(g.n - g.l) {
  if (g.nu == 0) throw NotFano("coefficient tables need a positive Fano index");
  int dmax = (width_ - 1) / g.nu;
  int cdeg = std::max(max_degree, dmax);
  int hi = width_ - 1;
  for (int d = 0; d <= cdeg; ++d) {
    LSeries gd(0, hi);
    gd.at(0) = 1;
    for (int ak : g.a)
      for (int r = 1; r <= ak * d; ++r) gd = mul_linear(gd, ak, r);
    gd = gd * inverse_denominator(g.n, d, hi);
    std::vector<std::vector<BigRational>> table(width_, std::vector<BigRational>(width_));
    LSeries cur = gd;
    for (int p = 0; p < width_; ++p) {
      for (int s = 0; s < width_; ++s) table[p][s] = cur.coeff(s);
      cur = mul_linear(cur, 1, d);
    }
    c_.push_back(std::move(table));
  }
  for (int d = 0; d <= dmax; ++d) {
    std::vector<std::vector<BigRational>> table(width_, std::vector<BigRational>(width_));
    for (int P = 0; P < width_; ++P) {
      for (int S = 0; S + g.nu * d <= P; ++S) {
        if (d == 0) {
          table[P][S] = P == S ? 1 : 0;
          continue;
        }
        BigRational acc = 0;
        for (int d1 = 0; d1 < d; ++d1)
          for (int r = 0; r + g.nu * d1 <= P; ++r)
            if (ct_[d1][P][r] != 0) acc += ct_[d1][P][r] * c_[d - d1][r][S];
        table[P][S] = -acc;
      }
    }
    ct_.push_back(std::move(table));
  }
}

BigRational CoeffTable::c(int p, int s, int d) const {
  if (p < 0 || s < 0 || p >= width_ || s >= width_) throw PreconditionViolated("c index out of range");
  if (d < 0) return 0;
  if (d >= static_cast<int>(c_.size())) throw PrecisionExceeded("c degree beyond table");
  return c_[d][p][s];
}

BigRational CoeffTable::ctilde(int P, int S, int d) const {
  int l = geom_.l;
  if (P < l || S < l) return (d == 0 && P == S) ? 1 : 0;
  if (P >= geom_.n || S >= geom_.n) throw PreconditionViolated("ctilde index out of range");
  if (d < 0 || S + geom_.nu * d > P) return 0;
  return ct_[d][P - l][S - l];
}

CoeffTable compute_coeff_tables(const CIGeometry& g, int K_q) { return CoeffTable(g, K_q); }

// ---------------------------------------------------------------- I and J

IJSeries compute_I_and_J(const CIGeometry& g, int K_q) {
  IJSeries out;
  int width = g.n - g.l;
  if (g.nu > 0) {
    out.I.assign(static_cast<size_t>(width) + 1, QSeries::one(K_q));
    out.J = g.nu == 1 ? QSeries::monomial(BigRational(g.a_fact), 1, K_q) : QSeries(K_q);
    return out;
  }
  WLaurent h = build_F(g, width + 1, K_q);
  out.I.push_back(h.coeff_w(0));
  for (int c = 1; c <= width; ++c) {
    h = wl_apply_M(h);
    out.I.push_back(h.coeff_w(0));
  }
  QSeries sum(K_q);
  for (int d = 1; d <= K_q; ++d) {
    BigRational num = 1;
    BigRational harmonic = 0;
    for (int ak : g.a) {
      num *= BigRational(factorial(static_cast<long>(ak) * d));
      for (int r = d + 1; r <= ak * d; ++r) harmonic += rational(ak, r);
    }
    BigRational den = 1;
    for (int k = 0; k < g.n; ++k) den *= BigRational(factorial(d));
    sum[d] = num / den * harmonic;
  }
  out.J = sum / out.I[0];
  return out;
}

// ---------------------------------------------------------------- HyperData

HyperData::HyperData(const CIGeometry& g, int K_q, int K_w)
    : geom_(g), K_q_(K_q), K_w_(K_w < 0 ? default_w_precision(g, K_q) : K_w) {
  int n = g.n, l = g.l;
  F_ = build_F(g, K_w_, K_q_);
  F0_ = build_F0(g, K_w_, K_q_);
  IJSeries ij = compute_I_and_J(g, K_q_);
  I_ = ij.I;
  J_ = ij.J;
  if (g.nu == 0) {
    Jt_ = qs_revert_mirror(J_);
    q_of_Q_ = inverse_mirror_map(J_);
  } else {
    Jt_ = QSeries(K_q_);
    q_of_Q_ = QSeries::variable(K_q_);
    coeffs_ = std::make_shared<CoeffTable>(g, K_q_);
  }

  WLaurent cur = F0_;
  for (int p = 0; p <= std::min(l, n - 1); ++p) {
    if (p > 0) cur = wl_apply_D(cur);
    Fp_.push_back(cur);
  }
  if (g.nu == 0) {
    WLaurent h = F_;
    for (int p = l + 1; p < n; ++p) {
      h = wl_apply_M(h);
      Fp_.push_back(h);
    }
  } else {
    std::vector<WLaurent> DsF{F_};
    for (int s = 1; s < n - l; ++s) DsF.push_back(wl_apply_D(DsF.back()));
    for (int p = l + 1; p < n; ++p) {
      WLaurent acc = DsF[p - l];
      for (int d = 1; g.nu * d <= p - l && d <= K_q_; ++d) {
        for (int s = 0; s <= p - l - g.nu * d; ++s) {
          BigRational ct = coeffs_->ctilde(p, l + s, d);
          if (ct == 0) continue;
          acc += scale(q_shift(DsF[s], d).shifted_w(-(p - l - g.nu * d - s)), ct);
        }
      }
      Fp_.push_back(acc);
    }
  }
  for (int p = 0; p < n; ++p) {
    require_holomorphic(Fp_[p], "F_" + std::to_string(p));
    Fp_[p] = Fp_[p].holomorphic_part();
  }

  Fhat_.resize(static_cast<size_t>(n));
  Fhat_paren_.resize(static_cast<size_t>(n));
  for (int p = l; p < n; ++p) {
    WLaurent fh;
    if (g.nu == 0) {
      fh = (wl_exp_times_w(-J_, K_w_) * Fp_[p]) * inverse(I(p - l));
      fh = fh.shifted_w(p);
    } else {
      fh = wl_scale_q(Fp_[p], g.nu).shifted_w(p);
      if (g.nu == 1) fh = fh * exp(-J_);
    }
    require_holomorphic(fh, "Fhat_" + std::to_string(p));
    fh = fh.holomorphic_part();
    QSeries prod = QSeries::one(K_q_);
    for (int r = p - l + 1; r <= n - l - 1; ++r) prod = prod * I(r);
    Fhat_[p] = fh;
    Fhat_paren_[p] = fh * inverse(prod);
  }
}

const WLaurent& HyperData::Fp(int p) const {
  if (p < 0 || p >= geom_.n) throw PreconditionViolated("F_p needs 0 <= p <= n-1");
  return Fp_[p];
}

QSeries HyperData::I(int c) const {
  if (c < 0 || c >= static_cast<int>(I_.size())) return QSeries::one(K_q_);
  return I_[c];
}

BigRational HyperData::ctilde(int P, int S, int d) const {
  if (coeffs_) return coeffs_->ctilde(P, S, d);
  return (d == 0 && P == S) ? 1 : 0;
}

const WLaurent& HyperData::Fhat(int p) const {
  if (p < geom_.l || p >= geom_.n) throw PreconditionViolated("Fhat_p needs l <= p <= n-1");
  return Fhat_[p];
}

const WLaurent& HyperData::Fhat_paren(int p) const {
  if (p < geom_.l || p >= geom_.n) throw PreconditionViolated("Fhat_(p) needs l <= p <= n-1");
  return Fhat_paren_[p];
}

WLaurent build_F0_Fp(const CIGeometry& g, int p, int K_w, int K_q) {
  if (p < 0 || p >= g.n) throw PreconditionViolated("F_p needs 0 <= p <= n-1");
  HyperData h(g, K_q, K_w);
  return h.Fp(p);
}

std::pair<WLaurent, WLaurent> build_Fhat(const CIGeometry& g, int p, int K_w, int K_q) {
  HyperData h(g, K_q, K_w);
  return {h.Fhat(p), h.Fhat_paren(p)};
}

}  // namespace mirrorgw
