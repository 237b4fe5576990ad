#include <algorithm>
#include <numeric>

#include "mirrorgw/errors.hpp"
#include "mirrorgw/structconst.hpp"

namespace mirrorgw {

namespace {

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

BigRational power(const BigRational& x, int k) {
  BigRational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// n L^e / (|a| + nu L^n) as a series; e may be negative.
QSeries lemma_b4_series(const MirrorContext& ctx, int e) {
  const CIGeometry& g = ctx.geometry();
  const QSeries& L = ctx.L();
  QSeries den = QSeries::constant(g.abs_a, L.order()) + BigRational(g.nu) * pow(L, static_cast<long>(g.n));
  return BigRational(g.n) * pow(L, static_cast<long>(e)) / den;
}

BigRational ct(const MirrorContext& ctx, int P, int S, int d) { return ctx.hyper().ctilde(P, S, d); }

// ctilde_{p, p - nu d_s}^{(d_s)} products over a degree split.
BigRational ctilde_split(const MirrorContext& ctx, const std::vector<int>& p_hat, const std::vector<int>& ds) {
  BigRational prod = 1;
  for (size_t s = 0; s < p_hat.size() && prod != 0; ++s) prod *= ct(ctx, p_hat[s], p_hat[s] - ctx.geometry().nu * ds[s], ds[s]);
  return prod;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw HypothesisViolated(what);
}

void identity(bool ok, const std::string& what) {
  if (!ok) throw IdentityViolation(what);
}

}  // namespace

BigRational ctilde_tuple(const MirrorContext& ctx, const std::vector<int>& p_hat, int d) {
  BigRational sum = 0;
  for_each_composition(d, static_cast<int>(p_hat.size()), [&](const std::vector<int>& ds) { sum += ctilde_split(ctx, p_hat, ds); });
  return sum;
}

BigRational ctilde_pdt(const MirrorContext& ctx, int p, int dprime, int d, int t) {
  const CIGeometry& g = ctx.geometry();
  require(g.nu != 0, "ctilde_{p,d'}^{(d,t)} needs a positive Fano index");
  require(t == 0 || t == 1, "ctilde_{p,d'}^{(d,t)} needs t in {0, 1}");
  if (dprime < 0 || d < 0) return 0;
  BigRational top = ct(ctx, p, p - g.nu * d, d);
  BigRational next = ct(ctx, p, p - g.nu * d - 1, d);
  if (top == 0 && next == 0) return 0;
  QSeries inner(ctx.q_order());
  if (top != 0) inner += top * (ctx.L() * ctx.phi().A1(p - g.l - g.nu * d));
  if (next != 0) inner += QSeries::constant(next, ctx.q_order());
  QSeries s = lemma_b4_series(ctx, g.nu * dprime + g.n * (1 - t)) * inner;
  return s.coeff(dprime);
}

BigRational ctilde_pdt_closed(const MirrorContext& ctx, int p, int dprime, int d, int t) {
  const CIGeometry& g = ctx.geometry();
  require(g.nu != 0, "ctilde_{p,d'}^{(d,t)} needs a positive Fano index");
  require(t == 0 || t == 1, "ctilde_{p,d'}^{(d,t)} needs t in {0, 1}");
  if (dprime < 0 || d < 0) return 0;
  BigRational A = BigRational(g.a_pow_a);
  BigRational top = ct(ctx, p, p - g.nu * d, d);
  BigRational next = ct(ctx, p, p - g.nu * d - 1, d);
  BigRational value = generalized_binomial(dprime - t, dprime) * power(A, dprime) * next;
  if (top != 0) {
    int P = p - g.nu * d;
    BigRational abs_a = g.abs_a;
    BigRational inner = BigRational(dprime) * power(abs_a, dprime);
    BigRational mixed = 0;
    for (int d1 = 0; d1 <= dprime - 1; ++d1) mixed += power(abs_a, d1) * power(BigRational(g.n - g.nu * t), dprime - 1 - d1);
    inner -= BigRational(g.n - P) * mixed;
    if (dprime >= 2) inner -= BigRational((dprime - 1) * t * P) * power(abs_a, dprime - 1);
    BigRational bracket = rational(P - g.l, 2) * power(A / BigRational(g.n), dprime) * inner;
    value += top * bracket;
  }
  return value;
}

BigRational Ctilde(const MirrorContext& ctx, int p, int d) {
  const CIGeometry& g = ctx.geometry();
  require(g.nu != 0, "Ctilde needs a positive Fano index");
  BigRational A = BigRational(g.a_pow_a);
  BigRational sum = 0;
  for_each_composition(d, 4, [&](const std::vector<int>& ds) {
    BracketData br = bracket_decompose(g, p, ds[1] + ds[2]);
    BigRational pre = power(A, ds[2]) * generalized_binomial(ds[2] + br.tau - br.t_small, ds[2]) *
                      ct(ctx, br.p_hat_bracket, br.p_hat_bracket - g.nu * ds[1], ds[1]);
    if (pre == 0) return;
    if (br.tau != 0 && br.tau != 1) throw IdentityViolation("Ctilde needs tau in {0, 1} on its support");
    sum += pre * ctilde_pdt(ctx, br.p_bracket, ds[3], ds[0], br.tau);
  });
  return sum;
}

BigRational sc_closed_forms(const MirrorContext& ctx, const SCKey& key, ClosedForm which) {
  const CIGeometry& g = ctx.geometry();
  const int n = g.n, l = g.l, nu = g.nu;
  const int N = static_cast<int>(key.p.size());
  require(N >= 3 && static_cast<int>(key.b.size()) == N, "closed forms need N >= 3 and matching b");
  for (int x : key.p) require(x >= 0 && x < n, "closed forms need 0 <= p_s < n");
  for (int x : key.b) require(x >= 0, "closed forms need b_s >= 0");
  std::vector<int> p_hat;
  for (int x : key.p) p_hat.push_back(hat_decompose(g, x).p_hat);
  int t_p = hat_twist(g, key.p);

  switch (which) {
    case ClosedForm::degree_zero: {
      require(key.d == 0, "degree-zero form needs d = 0");
      if (total(key.p) + n * key.t != (N - 1) * (n - 1) + l) return 0;
      return BigRational(multinomial(N - 3, key.b));
    }
    case ClosedForm::top_b: {
      require(total(key.b) == N - 3, "top-b form needs |b| = N - 3");
      require(satisfies_support(g, key), "top-b form needs the support relation");
      BigRational mult = BigRational(multinomial(N - 3, key.b));
      if (nu == 0) {
        QSeries s = ctx.L_pow_n(1 + key.t) / ctx.I0_squared();
        return mult * s.coeff(key.d);
      }
      BigRational A = BigRational(g.a_pow_a);
      BigRational sum = 0;
      for (int dp = 0; dp <= key.d; ++dp)
        sum += power(A, dp) * generalized_binomial(dp + key.t - t_p, dp) * ctilde_tuple(ctx, p_hat, key.d - dp);
      return mult * sum;
    }
    case ClosedForm::four_point: {
      require(N == 4, "four-point form needs N = 4");
      require(total(key.b) == 0 && key.t == 0, "four-point form needs b = 0 and t = 0");
      require(satisfies_support(g, key), "four-point form needs the support relation");
      const auto& p = key.p;
      if (nu == 0) {
        const PhiFamilies& fam = ctx.phi();
        QSeries braces(ctx.q_order());
        int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (auto& pr : pairs) {
          int pprime = p[pr[0]] + p[pr[1]] + 1;
          braces += fam.A1(bracket_decompose(g, pprime, 0).p_hat_bracket - l);
        }
        for (int s = 0; s < 4; ++s) braces -= fam.A1(p_hat[s] - l);
        QSeries Ln1 = ctx.L_pow_n(1) * ctx.L();
        QSeries total_series = Ln1 / ctx.I0_squared() * braces;
        return total_series.coeff(key.d);
      }
      require(t_p == 0, "four-point form needs t_p = 0 when nu > 0");
      BigRational sum = 0;
      for (int dp = 0; dp <= key.d; ++dp) {
        for_each_composition(key.d - dp, 4, [&](const std::vector<int>& ds) {
          BigRational split = ctilde_split(ctx, p_hat, ds);
          if (split != 0) {
            int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
            for (auto& pr : pairs) {
              int sigma = p[pr[0]] + p[pr[1]] + nu * (ds[pr[0]] + ds[pr[1]]);
              sum += Ctilde(ctx, 2 * n - 2 + l - sigma, dp) * split;
            }
          }
          for (int r = 0; r < 4; ++r) {
            BigRational others = 1;
            for (int s = 0; s < 4 && others != 0; ++s) {
              if (s != r) others *= ct(ctx, p_hat[s], p_hat[s] - nu * ds[s], ds[s]);
            }
            if (others != 0) sum -= others * ctilde_pdt(ctx, p_hat[r], dp, ds[r], 0);
          }
        });
      }
      return sum;
    }
    case ClosedForm::projective: {
      require(g.l == 0, "projective form needs a projective space");
      require(satisfies_support(g, key), "projective form needs the support relation");
      if (N == 3) return generalized_binomial(key.d + key.t, key.d);
      require(N == 4 && total(key.b) == 0 && key.t == 0, "projective form covers N = 3, or N = 4 with b = 0, t = 0");
      if (key.d != 1) return 0;
      int best = n;
      for (int x : key.p) best = std::min({best, x + 1, n - 1 - x});
      return best;
    }
  }
  throw PreconditionViolated("unknown closed form");
}

int check_ctilde_support(const MirrorContext& ctx) {
  const CIGeometry& g = ctx.geometry();
  int checked = 0;
  for (int p = 0; p < g.n; ++p) {
    HatPair h = hat_decompose(g, p);
    for (int d = 0; d <= ctx.q_order(); ++d) {
      ++checked;
      if (ct(ctx, h.p_hat, h.p_hat - g.nu * d, d) == 0) continue;
      identity(p + g.nu * d + (g.n - g.l) * h.t_p <= g.n - 1,
               "ctilde support bound fails at p=" + std::to_string(p) + ", d=" + std::to_string(d));
    }
  }
  return checked;
}

int check_ctilde_lemmas(const MirrorContext& ctx, int max_degree) {
  const CIGeometry& g = ctx.geometry();
  require(g.nu != 0, "ctilde identities need a positive Fano index");
  require(max_degree <= ctx.q_order(), "degree beyond truncation order");
  const int n = g.n, nu = g.nu;
  const BigRational A = BigRational(g.a_pow_a);
  int checked = 0;
  for (int p = -2 * n; p <= 3 * n; ++p) {
    for (int d = 0; d <= max_degree; ++d) {
      std::string where = " at p=" + std::to_string(p) + ", d=" + std::to_string(d);
      if (d >= 1) {
        BracketData now = bracket_decompose(g, p, d), before = bracket_decompose(g, p, d - 1);
        int jump = before.tau - now.tau;
        identity((jump == 0 && now.t_small == 0) || (jump == 1 && now.t_small == 0) || (jump == 0 && now.t_small == 1),
                 "carry pattern" + where);
      }
      // Split identity with test functions f(tau, t) = tau^i t^j.
      for (int i = 0; i <= 2; ++i) {
        for (int j = 0; j <= 2; ++j) {
          auto f = [&](int tau, int t) -> BigRational { return power(BigRational(tau), i) * power(BigRational(t), j); };
          BigRational lhs = 0;
          for (int d2 = 0; d2 <= d; ++d2) {
            int d1 = d - d2;
            BracketData br = bracket_decompose(g, p, d2);
            lhs += ct(ctx, br.p_bracket, br.p_bracket - nu * d1, d1) *
                   ct(ctx, br.p_hat_bracket, br.p_hat_bracket - nu * d2, d2) * f(br.tau, br.t_small);
          }
          BigRational rhs = 0;
          BracketData b0 = bracket_decompose(g, p, 0), b1 = bracket_decompose(g, p, 1);
          if (d == 0) rhs = f(b0.tau, b0.t_small);
          if (d == 1) rhs = -A * BigRational(1 - b0.tau + b1.tau - b1.t_small) * f(b1.tau, b1.t_small);
          identity(lhs == rhs, "split identity" + where);
          ++checked;
        }
      }
      // Four-fold identity and its twisted generalization with test series f.
      std::vector<QSeries> fs{QSeries::one(ctx.q_order()), ctx.L(), inverse(QSeries::one(ctx.q_order()) + QSeries::variable(ctx.q_order()))};
      for (int t = -1; t <= 1; ++t) {
        for (size_t fi = 0; fi < fs.size(); ++fi) {
          BigRational lhs = 0;
          for_each_composition(d, 4, [&](const std::vector<int>& ds) {
            BracketData br = bracket_decompose(g, p, ds[1] + ds[2]);
            BigRational pre = ct(ctx, br.p_bracket, br.p_bracket - nu * ds[0], ds[0]) *
                              ct(ctx, br.p_hat_bracket, br.p_hat_bracket - nu * ds[1], ds[1]);
            if (pre == 0) return;
            pre *= power(A, ds[2]) * generalized_binomial(ds[2] + br.tau - br.t_small - t, ds[2]);
            if (pre == 0) return;
            QSeries s = lemma_b4_series(ctx, nu * ds[3] + n * (t - br.tau)) * fs[fi];
            lhs += pre * s.coeff(ds[3]);
          });
          BigRational rhs = (lemma_b4_series(ctx, nu * d) * fs[fi]).coeff(d);
          if (t == 0 && fi == 0) identity(lhs == (d == 0 ? BigRational(1) : BigRational(0)), "four-fold identity" + where);
          identity(lhs == rhs, "twisted four-fold identity" + where + ", t=" + std::to_string(t));
          ++checked;
        }
      }
    }
  }
  return checked;
}

}  // namespace mirrorgw
