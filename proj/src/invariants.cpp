#include "mirrorgw/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "mirrorgw/errors.hpp"
#include "mirrorgw/structconst.hpp"

namespace mirrorgw {

namespace {

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

// [[F]]_{w;p} of an F-hat family member as a q-series; zero outside l <= index < n.
QSeries fhat_w_coeff(const HyperData& h, int index, int p, bool paren) {
  const CIGeometry& g = h.geometry();
  if (index < g.l || index >= g.n) return QSeries(h.q_order());
  const WLaurent& f = paren ? h.Fhat_paren(index) : h.Fhat(index);
  return f.coeff_w(p);
}

// Coefficient of Q^d of a q-series: the mirror map is applied in the Calabi-Yau case.
BigRational q_to_Q_coeff(const HyperData& h, const QSeries& s, int d) {
  if (h.geometry().nu != 0) return s.coeff(d);
  return compose(s, h.q_of_Q()).coeff(d);
}

// <a> sum over d_1 + d_2 = d of prod_s [[Fhat_{nu d_s + p_s - beta_s - 1}]]_{q;d_s, w;p_s};
// equals <tau_{beta_1+1}, tau_{beta_2}> + <tau_{beta_1}, tau_{beta_2+1}> (tau_{-1} = 0).
BigRational two_point_sum(const HyperData& h, const std::vector<int>& p, int beta1, int beta2, int d) {
  const CIGeometry& g = h.geometry();
  const int beta[2] = {beta1, beta2};
  BigRational prod_a(g.prod_a);
  if (g.nu == 0) {
    QSeries s = fhat_w_coeff(h, p[0] - beta[0] - 1, p[0], false) * fhat_w_coeff(h, p[1] - beta[1] - 1, p[1], false);
    return prod_a * q_to_Q_coeff(h, s, d);
  }
  BigRational sum = 0;
  for (int d1 = 0; d1 <= d; ++d1) {
    int ds[2] = {d1, d - d1};
    BigRational term = 1;
    for (int s = 0; s < 2 && term != 0; ++s) {
      term *= fhat_w_coeff(h, g.nu * ds[s] + p[s] - beta[s] - 1, p[s], false).coeff(ds[s]);
    }
    sum += term;
  }
  return prod_a * sum;
}

BigRational one_point(const MirrorContext& ctx, const InvariantQuery& q) {
  const HyperData& h = ctx.hyper();
  const CIGeometry& g = h.geometry();
  int p = g.n - 1 - q.c[0];
  QSeries s = fhat_w_coeff(h, g.l, p, false);
  return BigRational(g.prod_a) * q_to_Q_coeff(h, s, q.d);
}

BigRational two_point(const MirrorContext& ctx, const InvariantQuery& q) {
  if (q.d == 0) return 0;
  const HyperData& h = ctx.hyper();
  const CIGeometry& g = h.geometry();
  std::vector<int> p = {g.n - 1 - q.c[0], g.n - 1 - q.c[1]};
  // <tau_x, tau_y> = sum_{j=0}^{x} (-1)^j S(x-1-j, y+j) by peeling one psi at a time.
  int x = q.b[0], y = q.b[1];
  BigRational sum = 0;
  for (int j = 0; j <= x; ++j) {
    BigRational s = two_point_sum(h, p, x - 1 - j, y + j, q.d);
    sum += (j % 2) ? BigRational(-s) : s;
  }
  return sum;
}

BigRational multi_point(const MirrorContext& ctx, const InvariantQuery& q) {
  const HyperData& h = ctx.hyper();
  const CIGeometry& g = h.geometry();
  const int N = q.num_points();
  const int n = g.n, l = g.l, nu = g.nu;
  RecursiveEngine& engine = ctx.recursive_engine();
  std::vector<int> p(static_cast<size_t>(N));
  for (int s = 0; s < N; ++s) p[s] = n - 1 - q.c[s];

  std::vector<int> bp(static_cast<size_t>(N), 0), pp(static_cast<size_t>(N), 0);
  if (nu == 0) {
    QSeries G(ctx.q_order());
    std::function<void(int, int)> each = [&](int s, int left) {
      if (s == N) {
        QSeries prod = QSeries::one(ctx.q_order());
        for (int i = 0; i < N; ++i) {
          prod *= fhat_w_coeff(h, pp[i], p[i], true);
          if (prod.is_zero()) return;
        }
        G += engine.series(pp, bp, 0) * prod;
        return;
      }
      for (int x = 0; x <= left; ++x) {
        bp[s] = x;
        pp[s] = p[s] - q.b[s] + x;
        if (pp[s] < l) continue;
        if (pp[s] >= n) break;
        each(s + 1, left - x);
      }
      bp[s] = 0;
    };
    each(0, N - 3);
    return BigRational(g.prod_a) * q_to_Q_coeff(h, G, q.d);
  }

  // Fano case: the degrees d_s are shifted into p' and each factor is a single coefficient.
  BigRational sum = 0;
  for (int dprime = 0; dprime <= q.d; ++dprime) {
    for_each_composition(q.d - dprime, N, [&](const std::vector<int>& dv) {
      std::function<void(int, int)> each = [&](int s, int left) {
        if (s == N) {
          BigRational prod = 1;
          for (int i = 0; i < N; ++i) {
            prod *= fhat_w_coeff(h, pp[i], p[i], true).coeff(dv[i]);
            if (prod == 0) return;
          }
          sum += engine.value(SCKey{pp, bp, dprime, 0}) * prod;
          return;
        }
        for (int x = 0; x <= left; ++x) {
          bp[s] = x;
          pp[s] = nu * dv[s] + p[s] - q.b[s] + x;
          if (pp[s] < l) continue;
          if (pp[s] >= n) break;
          each(s + 1, left - x);
        }
        bp[s] = 0;
      };
      each(0, N - 3);
    });
  }
  return BigRational(g.prod_a) * sum;
}

void validate_query(const InvariantQuery& q) {
  if (q.b.size() != q.c.size() || q.c.empty()) throw PreconditionViolated("query needs equal nonempty b and c");
  if (q.d < 0) throw PreconditionViolated("degree must be nonnegative");
  for (size_t s = 0; s < q.c.size(); ++s) {
    if (q.b[s] < 0 || q.c[s] < 0) throw PreconditionViolated("insertion exponents must be nonnegative");
  }
}

QSeries log_derivative(const QSeries& s) { return derivative_D(s) / s; }

// a^a q / (1 - a^a q) - 2 I_0' / I_0.
QSeries cy_E(const HyperData& h) {
  const CIGeometry& g = h.geometry();
  int K = h.q_order();
  QSeries aq = QSeries::monomial(BigRational(g.a_pow_a), 1, K);
  return aq / (QSeries::one(K) - aq) - BigRational(2) * log_derivative(h.I(0));
}

// <a> / ((1 - a^a q) I_0^2 prod_s prod_{c=1}^{c_s} I_c).
QSeries cy_prefactor(const HyperData& h, const std::vector<int>& c) {
  const CIGeometry& g = h.geometry();
  int K = h.q_order();
  QSeries den = (QSeries::one(K) - QSeries::monomial(BigRational(g.a_pow_a), 1, K)) * h.I(0) * h.I(0);
  for (int cs : c) {
    for (int r = 1; r <= cs; ++r) den *= h.I(r);
  }
  return BigRational(g.prod_a) * inverse(den);
}

InvariantSeries to_Q_series(const HyperData& h, const std::vector<int>& c, const QSeries& s, int D) {
  InvariantSeries out;
  out.geometry = h.geometry();
  out.c = c;
  QSeries Qs = compose(s, h.q_of_Q());
  for (int d = 0; d <= D; ++d) out.values.push_back(Qs.coeff(d));
  return out;
}

void require_cy(const CIGeometry& g, const std::vector<int>& c, int sum) {
  if (!g.is_calabi_yau()) throw HypothesisViolated("closed multi-point formula needs |a| = n");
  for (int x : c) {
    if (x < 0) throw HypothesisViolated("insertion exponents must be nonnegative");
  }
  if (total(c) != sum) throw HypothesisViolated("insertion exponents have the wrong total");
}

std::shared_ptr<const HyperData> cy_hyper(const CIGeometry& g, int D) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::vector<int>>, std::shared_ptr<const HyperData>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(g.n, g.a);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->q_order() >= D) return it->second;
  auto h = std::make_shared<const HyperData>(g, std::max(D, 1));
  cache[key] = h;
  return h;
}

}  // namespace

bool satisfies_dimension(const CIGeometry& g, const InvariantQuery& q) {
  int N = q.num_points();
  if (static_cast<int>(q.b.size()) != N) return false;
  return total(q.b) + total(q.c) == g.nu * q.d + g.n - 4 - g.l + N;
}

BigRational gw_degree_zero(const CIGeometry& g, const std::vector<int>& b, const std::vector<int>& c) {
  int N = static_cast<int>(c.size());
  if (N < 3 || b.size() != c.size()) throw PreconditionViolated("degree-zero formula needs N >= 3 and |b| = |c|");
  if (total(c) != g.n - 1 - g.l || total(b) != N - 3) return 0;
  for (int x : b) {
    if (x < 0) return 0;
  }
  return BigRational(g.prod_a * multinomial(N - 3, b));
}

std::shared_ptr<const MirrorContext> shared_context(const CIGeometry& g, int K_q, int max_points) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::vector<int>>, std::shared_ptr<const MirrorContext>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(g.n, g.a);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->q_order() >= K_q && it->second->max_points() >= max_points) return it->second;
  int K = K_q, P = max_points;
  if (it != cache.end()) {
    K = std::max(K, it->second->q_order());
    P = std::max(P, it->second->max_points());
  }
  auto ctx = make_context(g, K, P);
  cache[key] = ctx;
  return ctx;
}

BigRational gw_invariant(const MirrorContext& ctx, const InvariantQuery& q, std::string* warning) {
  validate_query(q);
  const CIGeometry& g = ctx.geometry();
  const int N = q.num_points();
  if (!satisfies_dimension(g, q)) {
    if (warning) *warning = "dimension mismatch: |b| + |c| != nu d + n - 4 - l + N; the invariant vanishes";
    return 0;
  }
  for (int x : q.c) {
    if (x > g.n - 1 - g.l) return 0;  // H^c vanishes on X above its dimension
  }
  if (q.d == 0 && N >= 3) return gw_degree_zero(g, q.b, q.c);
  if (q.d > ctx.q_order()) throw PrecisionExceeded("degree beyond the context truncation order");
  if (N > ctx.max_points()) throw PreconditionViolated("more points than the context supports");
  if (N == 1) return one_point(ctx, q);
  if (N == 2) return two_point(ctx, q);
  return multi_point(ctx, q);
}

BigRational gw_invariant(const CIGeometry& g, const InvariantQuery& q, std::string* warning) {
  validate_query(q);
  auto ctx = shared_context(g, std::max(q.d, 1), std::max(q.num_points(), 3));
  return gw_invariant(*ctx, q, warning);
}

QSeries calabi_yau_S(const HyperData& h, int c) {
  QSeries s = QSeries::one(h.q_order());
  for (int r = 1; r <= c; ++r) s *= pow(h.I(r), static_cast<long>(c - r));
  return s;
}

InvariantSeries cy_three_point_series(const CIGeometry& g, int c1, int c2, int c3, int D) {
  std::vector<int> c = {c1, c2, c3};
  require_cy(g, c, g.n - 1 - g.l);
  auto h = cy_hyper(g, D);
  return to_Q_series(*h, c, cy_prefactor(*h, c), D);
}

InvariantSeries cy_four_point_series(const CIGeometry& g, const std::vector<int>& c, int D) {
  if (c.size() != 4) throw HypothesisViolated("four-point formula needs four insertions");
  require_cy(g, c, g.n - g.l);
  auto h = cy_hyper(g, D);
  auto dlog_S = [&](int k) { return log_derivative(calabi_yau_S(*h, k)); };
  QSeries brace = rational(g.n - g.l - 2 * c[3], 2) * cy_E(*h);
  for (int x : c) brace += dlog_S(x);
  brace -= dlog_S(c[0] + c[1]);
  brace -= dlog_S(c[0] + c[2]);
  brace -= dlog_S(c[1] + c[2]);
  return to_Q_series(*h, c, cy_prefactor(*h, c) * brace, D);
}

InvariantSeries cy_four_point_series_alt(const CIGeometry& g, const std::vector<int>& c, int D) {
  if (c.size() != 4) throw HypothesisViolated("four-point formula needs four insertions");
  require_cy(g, c, g.n - g.l);
  auto h = cy_hyper(g, D);
  auto dlog_S = [&](int k) { return log_derivative(calabi_yau_S(*h, k)); };
  QSeries brace = BigRational(c[0]) * cy_E(*h);
  for (int x : c) brace += dlog_S(x);
  brace -= dlog_S(c[0] + c[1]);
  brace -= dlog_S(c[0] + c[2]);
  brace -= dlog_S(c[0] + c[3]);
  return to_Q_series(*h, c, cy_prefactor(*h, c) * brace, D);
}

BigRational proj_theorem4(int n, const InvariantQuery& q) {
  validate_query(q);
  const int N = q.num_points();
  if (N != 3 && N != 4) throw HypothesisViolated("closed projective formulas cover N = 3, 4");
  if (n < 2) throw HypothesisViolated("projective space needs n >= 2");
  const int d = q.d;
  std::vector<int> p(static_cast<size_t>(N));
  for (int s = 0; s < N; ++s) {
    if (q.c[s] > n - 1) return 0;
    p[s] = n - 1 - q.c[s];
  }
  // [x^k] (x + m)^e / prod_{r=1}^{m} (x + r)^n, the per-point factor with H/hbar = x.
  std::map<std::pair<int, int>, QSeries> memo;
  auto coeff = [&](int e, int m, int k) -> BigRational {
    if (m == 0) return e == k ? 1 : 0;
    auto key = std::make_pair(e, m);
    auto it = memo.find(key);
    if (it == memo.end()) {
      QSeries num = pow(QSeries::constant(m, n) + QSeries::variable(n), static_cast<long>(e));
      QSeries den = QSeries::one(n);
      for (int r = 1; r <= m; ++r) den *= pow(QSeries::constant(r, n) + QSeries::variable(n), static_cast<long>(n));
      it = memo.emplace(key, num / den).first;
    }
    return it->second.coeff(k);
  };
  // Product over points for one degree split; the hbar shift of each point is
  // absorbed into e_s = p_s - beta_s + n d_s, which must lie in [0, n).
  auto term = [&](const std::vector<int>& beta, const std::vector<int>& dv, int e_total, bool weight) -> BigRational {
    std::vector<int> e(static_cast<size_t>(N));
    for (int s = 0; s < N; ++s) {
      e[s] = p[s] - beta[s] + n * dv[s];
      if (e[s] < 0 || e[s] >= n) return 0;
    }
    if (total(e) != e_total) return 0;
    BigRational prod = 1;
    for (int s = 0; s < N && prod != 0; ++s) prod *= coeff(e[s], dv[s], p[s]);
    if (weight && prod != 0) {
      int w = n;
      for (int x : e) w = std::min({w, x + 1, n - 1 - x});
      prod *= w;
    }
    return prod;
  };
  BigRational sum = 0;
  if (N == 3) {
    for (int dp = 0; dp <= std::min(1, d); ++dp) {
      for_each_composition(d - dp, 3, [&](const std::vector<int>& dv) { sum += term(q.b, dv, (2 - dp) * n - 2, false); });
    }
    return sum;
  }
  if (d >= 1) {
    for_each_composition(d - 1, 4, [&](const std::vector<int>& dv) { sum += term(q.b, dv, 2 * n - 4, true); });
  }
  for (int j = 0; j < 4; ++j) {
    std::vector<int> beta = q.b;
    beta[j] -= 1;  // the extra 1/hbar_j lowers the psi power read off at point j
    for (int dp = 0; dp <= std::min(2, d); ++dp) {
      for_each_composition(d - dp, 4, [&](const std::vector<int>& dv) { sum += term(beta, dv, (3 - dp) * n - 3, false); });
    }
  }
  return sum;
}

bool vanishing_predicate(const CIGeometry& g, const std::vector<int>& b, const std::vector<int>& c) {
  int N = static_cast<int>(c.size());
  if (N < 3 || b.size() != c.size()) return false;
  // The best S collects every point with b_s + c_s < nu.
  int sum = 0;
  for (int s = 0; s < N; ++s) {
    if (b[s] + c[s] < g.nu) sum += b[s];
  }
  return sum > N - 3;
}

std::vector<InvariantQuery> sorted_queries(const CIGeometry& g, int N, int d) {
  std::vector<InvariantQuery> out;
  if (N < 1 || d < 0) return out;
  int target = g.nu * d + g.n - 4 - g.l + N;
  if (target < 0) return out;
  int cmax = g.n - 1 - g.l;
  std::vector<int> b(static_cast<size_t>(N)), c(static_cast<size_t>(N));
  std::function<void(int, int, int, int)> rec = [&](int s, int left, int c_lo, int b_lo) {
    if (s == N) {
      if (left == 0) out.push_back({d, b, c});
      return;
    }
    for (int cs = c_lo; cs <= cmax && cs <= left; ++cs) {
      for (int bs = (cs == c_lo ? b_lo : 0); cs + bs <= left; ++bs) {
        c[s] = cs;
        b[s] = bs;
        rec(s + 1, left - cs - bs, cs, bs);
      }
    }
  };
  rec(0, target, 0, 0);
  return out;
}

BoundCertificate bound_certificate(const CIGeometry& g, int D_max, int N_max) {
  BoundCertificate cert;
  if (D_max < 0 || N_max < 1) return cert;
  auto ctx = shared_context(g, std::max(D_max, 1), std::max(N_max, 3));
  cert.max_by_degree.assign(static_cast<size_t>(D_max + 1), 0.0);
  for (int d = 0; d <= D_max; ++d) {
    for (int N = 1; N <= N_max; ++N) {
      for (const auto& q : sorted_queries(g, N, d)) {
        BigRational v = gw_invariant(*ctx, q);
        if (v == 0) continue;
        ++cert.invariants;
        BigRational scaled = abs(v) / BigRational(factorial(N));
        for (int x : q.b) scaled *= BigRational(factorial(x));
        double ratio = std::pow(scaled.get_d(), 1.0 / (N + d));
        if (!std::isfinite(ratio)) cert.finite = false;
        cert.max_by_degree[d] = std::max(cert.max_by_degree[d], ratio);
        cert.constant = std::max(cert.constant, ratio);
      }
    }
  }
  for (int d = 0; d < D_max; ++d) {
    if (cert.max_by_degree[d] > 0 && cert.max_by_degree[d + 1] > 0) {
      double gfac = cert.max_by_degree[d + 1] / cert.max_by_degree[d];
      if (!std::isfinite(gfac) || (!cert.growth.empty() && gfac > cert.growth.back())) cert.bounded_growth = false;
      cert.growth.push_back(gfac);
    }
  }
  return cert;
}

}  // namespace mirrorgw
