#include "mirrorgw/asym.hpp"

#include <map>

namespace mirrorgw {

QSeries solve_L(const CIGeometry& g, int K_q) {
  QSeries q_aa = QSeries::monomial(BigRational(g.a_pow_a), 1, K_q);
  QSeries L = QSeries::one(K_q);
  BigRational inv_n = rational(1, g.n);
  // Each pass of L <- (1 + a^a q L^{|a|})^{1/n} fixes one more coefficient.
  for (int it = 0; it <= K_q; ++it) {
    QSeries next = pow(QSeries::one(K_q) + q_aa * pow(L, static_cast<long>(g.abs_a)), inv_n);
    if (next == L) break;
    L = next;
  }
  QSeries residual = pow(L, static_cast<long>(g.n)) - q_aa * pow(L, static_cast<long>(g.abs_a)) - QSeries::one(K_q);
  if (!residual.is_zero()) throw IdentityViolation("L does not solve its defining equation");
  return L;
}

std::vector<BigRational> compute_chi(const CIGeometry& g) {
  Poly prod = Poly::constant(1);
  for (int ak : g.a)
    for (int r = 1; r <= ak; ++r) prod = prod * Poly(std::vector<BigRational>{BigRational(r), BigRational(ak)});
  std::vector<BigRational> chi(static_cast<size_t>(g.abs_a) + 1);
  BigRational aa(g.a_pow_a);
  for (int i = 0; i <= g.abs_a; ++i) chi[g.abs_a - i] = prod.coeff(i) / aa;
  if (chi[0] != 1) throw IdentityViolation("chi_0 must equal 1");
  if (g.abs_a >= 1 && chi[1] != rational(g.abs_a + g.l, 2)) throw IdentityViolation("chi_1 must equal (|a|+l)/2");
  return chi;
}

// ---------------------------------------------------------------- H_{m,j}

HTable::HTable(const CIGeometry& g)
    : geom_(g),
      rho_(Poly(std::vector<BigRational>{BigRational(-1), BigRational(1)}),
           Poly(std::vector<BigRational>{BigRational(g.abs_a), BigRational(g.nu)})) {}

RationalFn HTable::get(int m, int j) {
  if (m < 0 || j < 0 || j > m) return RationalFn();
  if (m == 0) return RationalFn::constant(1);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find({m, j});
    if (it != memo_.end()) return it->second;
  }
  RationalFn value = get(m - 1, j);
  RationalFn prev = get(m - 1, j - 1);
  if (!prev.is_zero()) {
    RationalFn u(Poly::monomial(1, 1), Poly::constant(1));
    RationalFn nu_d = RationalFn::constant(geom_.n) * u * prev.derivative();
    RationalFn shifted = nu_d + RationalFn::constant(m - j) * prev;
    value = value + rho_ * shifted;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(std::make_pair(m, j), value);
  return value;
}

RationalFn compute_H_mj(const CIGeometry& g, int m, int j) {
  HTable table(g);
  return table.get(m, j);
}

// ---------------------------------------------------------------- operators

QSeries OperatorLk::apply(const QSeries& f) const {
  QSeries result(f.order());
  QSeries cur = f;
  for (size_t i = 0; i < coeff.size(); ++i) {
    if (i > 0) cur = derivative_D(cur);
    result += coeff[i] * cur;
  }
  return result;
}

namespace {

QSeries conjugating_factor(const CIGeometry& g, const QSeries& L) {
  int K = L.order();
  QSeries Ln = pow(L, static_cast<long>(g.n));
  QSeries A = QSeries::constant(g.abs_a, K) + BigRational(g.nu) * Ln;
  return pow(QSeries::constant(g.n, K) / A, rational(1, 2)) * pow(L, rational(g.l + 1, 2));
}

std::vector<OperatorLk> operators_from_L(const CIGeometry& g, const QSeries& L) {
  int K = L.order();
  int n = g.n;
  std::vector<BigRational> chi = compute_chi(g);
  HTable H(g);
  QSeries Ln = pow(L, static_cast<long>(n));
  QSeries Ln1 = Ln - QSeries::one(K);
  std::map<std::pair<int, int>, QSeries> evaluated;
  auto Hval = [&](int m, int j) -> QSeries {
    auto key = std::make_pair(m, j);
    auto it = evaluated.find(key);
    if (it != evaluated.end()) return it->second;
    RationalFn r = H.get(m, j);
    QSeries v = r.is_zero() ? QSeries(K) : ratfn_eval_at_series(r, Ln);
    evaluated.emplace(key, v);
    return v;
  };
  std::vector<OperatorLk> ops;
  for (int k = 1; k <= n; ++k) {
    OperatorLk op;
    for (int i = 0; i <= k; ++i) {
      QSeries h = BigRational(binomial(n, i)) * Ln * Hval(n - i, k - i);
      QSeries inner(K);
      for (int r = 0; r <= k - i && r <= g.abs_a; ++r) {
        BigInt bc = binomial(g.abs_a - r, i);
        if (bc == 0 || chi[r] == 0) continue;
        inner += BigRational(bc) * chi[r] * Hval(g.abs_a - i - r, k - i - r);
      }
      h -= Ln1 * inner;
      op.coeff.push_back(h);
    }
    ops.push_back(std::move(op));
  }
  // The first operator must be (|a| + nu L^n) g D g^{-1}.
  QSeries A = QSeries::constant(g.abs_a, K) + BigRational(g.nu) * Ln;
  QSeries gf = conjugating_factor(g, L);
  QSeries expected0 = -(A * derivative_D(gf) / gf);
  QSeries expected0_alt = Ln1 * (rational(g.nu * n, 2) * Ln / A - QSeries::constant(rational(g.l + 1, 2), K));
  if (ops[0].coeff[1] != A || ops[0].coeff[0] != expected0 || expected0 != expected0_alt)
    throw IdentityViolation("first operator does not match its conjugated form");
  return ops;
}

}  // namespace

std::vector<OperatorLk> build_L_operators(const CIGeometry& g, int K_q) { return operators_from_L(g, solve_L(g, K_q)); }

QSeries AsymptoticData::Phi_at(int b) const {
  if (b < 0) return QSeries(L.order());
  if (b >= static_cast<int>(Phi.size())) throw PrecisionExceeded("Phi_b beyond computed range");
  return Phi[b];
}

AsymptoticData solve_asymptotic_expansion(const CIGeometry& g, int B, int K_q) {
  if (B < 0) throw PreconditionViolated("B must be nonnegative");
  AsymptoticData data;
  data.geometry = g;
  data.L = solve_L(g, K_q);
  data.chi = compute_chi(g);
  data.xi = integrate_D(data.L - QSeries::one(K_q));
  data.ops = operators_from_L(g, data.L);
  data.g = conjugating_factor(g, data.L);
  const QSeries& L = data.L;
  QSeries Linv = inverse(L);
  QSeries Ln = pow(L, static_cast<long>(g.n));
  QSeries A = QSeries::constant(g.abs_a, K_q) + BigRational(g.nu) * Ln;
  QSeries Ag_inv = inverse(A * data.g);
  for (int b = 0; b <= B; ++b) {
    QSeries R(K_q);
    QSeries Lpow = Linv;
    for (int k = 2; k <= g.n; ++k) {
      int j = b + 1 - k;
      if (j >= 0) R += Lpow * data.ops[k - 1].apply(data.Phi[j]);
      Lpow = Lpow * Linv;
    }
    QSeries integrand = -(R * Ag_inv);
    if (integrand[0] != 0) throw ObstructionNonzero("constant term of the Phi_" + std::to_string(b) + " integrand");
    QSeries phi = data.g * integrate_D(integrand);
    if (b == 0) phi = data.g;
    if (!(data.ops[0].apply(phi) + R).is_zero()) throw IdentityViolation("Phi_" + std::to_string(b) + " fails its ODE");
    data.Phi.push_back(phi);
  }
  return data;
}

std::vector<QSeries> asymptotic_residual(const AsymptoticData& data) {
  const CIGeometry& g = data.geometry;
  int K = data.L.order();
  int B = static_cast<int>(data.Phi.size()) - 1;
  using Expansion = std::map<int, QSeries>;
  auto apply_Dt = [&](const Expansion& G) {
    Expansion out;
    for (const auto& [e, s] : G) {
      auto add = [&](int ee, const QSeries& v) {
        auto it = out.find(ee);
        if (it == out.end())
          out.emplace(ee, v);
        else
          it->second += v;
      };
      add(e + 1, data.L * s);
      add(e, derivative_D(s));
    }
    return out;
  };
  Expansion G;
  for (int b = 0; b <= B; ++b) G.emplace(-b, data.Phi[b]);
  Expansion T1 = G;
  for (int i = 0; i < g.n; ++i) T1 = apply_Dt(T1);
  Expansion T3 = G;
  for (int ak : g.a) {
    for (int r = 1; r <= ak; ++r) {
      Expansion next = apply_Dt(T3);
      for (auto& [e, s] : next) s *= BigRational(ak);
      for (const auto& [e, s] : T3) {
        auto it = next.find(e);
        if (it == next.end())
          next.emplace(e, s * BigRational(r));
        else
          it->second += s * BigRational(r);
      }
      T3 = std::move(next);
    }
  }
  std::vector<QSeries> residual;
  for (int b = -1; b <= B; ++b) {
    int e = g.n - 1 - b;
    QSeries v(K);
    if (auto it = T1.find(e); it != T1.end()) v += it->second;
    if (auto it = G.find(e - g.n); it != G.end()) v -= it->second;
    if (auto it = T3.find(e - g.nu); it != T3.end()) v -= it->second.shifted(1);
    residual.push_back(v);
  }
  return residual;
}

// ---------------------------------------------------------------- Phi families

PhiFamilies::PhiFamilies(std::shared_ptr<const HyperData> hyper, std::shared_ptr<const AsymptoticData> asym)
    : hyper_(std::move(hyper)), asym_(std::move(asym)) {
  const CIGeometry& g = hyper_->geometry();
  int n = g.n, l = g.l;
  int K = asym_->L.order();
  int B = static_cast<int>(asym_->Phi.size()) - 1;
  zero_ = QSeries(K);
  p_min_ = -l;
  int p_max = n - 1 - l;
  const QSeries& L = asym_->L;
  QSeries Linv = inverse(L);
  hat_.assign(static_cast<size_t>(p_max - p_min_ + 1), std::vector<QSeries>());
  auto log_derivative_sum = [&](int p) {
    QSeries s(K);
    for (int r = 0; r <= p; ++r) {
      QSeries Ir = hyper_->I(r).truncated(K);
      s += derivative_D(Ir) / Ir;
    }
    return s;
  };
  hat_[0 - p_min_] = asym_->Phi;
  for (int p = 0; p < p_max; ++p) {
    QSeries S = log_derivative_sum(p);
    const auto& cur = hat_[p - p_min_];
    std::vector<QSeries> next;
    for (int b = 0; b <= B; ++b) {
      QSeries v = L * cur[b];
      if (b > 0) v += derivative_D(cur[b - 1]) - S * cur[b - 1];
      next.push_back(v);
    }
    hat_[p + 1 - p_min_] = std::move(next);
  }
  for (int p = -1; p >= p_min_; --p) {
    const auto& up = hat_[p + 1 - p_min_];
    std::vector<QSeries> cur;
    for (int b = 0; b <= B; ++b) {
      QSeries v = up[b];
      if (b > 0) v -= derivative_D(cur[b - 1]);
      cur.push_back(v * Linv);
    }
    hat_[p - p_min_] = std::move(cur);
  }
  pb_.assign(static_cast<size_t>(n), std::vector<QSeries>());
  for (int p = 0; p < n; ++p) {
    for (int b = 0; b <= B; ++b) {
      if (g.nu == 0) {
        pb_[p].push_back(hat_[p - l - p_min_][b]);
        continue;
      }
      QSeries v(K);
      for (int d = 0; d <= K && g.nu * d <= p; ++d) {
        for (int s = 0; s <= p - g.nu * d; ++s) {
          int bb = b - (p - g.nu * d - s);
          if (bb < 0) continue;
          BigRational ct = hyper_->ctilde(p, s, d);
          if (ct == 0) continue;
          v += (hat_[s - l - p_min_][bb] * ct).shifted(d);
        }
      }
      pb_[p].push_back(v);
    }
  }
}

const QSeries& PhiFamilies::Phi_hat(int p, int b) const {
  if (b < 0) return zero_;
  if (p < p_min_ || p - p_min_ >= static_cast<int>(hat_.size())) throw PreconditionViolated("Phihat index p out of range");
  if (b > max_b()) throw PrecisionExceeded("Phihat index b beyond computed range");
  return hat_[p - p_min_][b];
}

const QSeries& PhiFamilies::Phi_pb(int p, int b) const {
  if (b < 0) return zero_;
  if (p < 0 || p >= static_cast<int>(pb_.size())) throw PreconditionViolated("Phi_{p;b} index p out of range");
  if (b > max_b()) throw PrecisionExceeded("Phi_{p;b} index b beyond computed range");
  return pb_[p][b];
}

QSeries PhiFamilies::A1(int p) const {
  int K = q_order();
  const QSeries& L = asym_->L;
  const QSeries& Phi0 = asym_->Phi[0];
  QSeries v = BigRational(p) * derivative_D(Phi0) / Phi0 +
              rational(static_cast<long>(p) * (p - 1), 2) * derivative_D(L) / L;
  for (int r = 0; r <= p; ++r) {
    QSeries Ir = hyper_->I(r).truncated(K);
    v -= BigRational(p - r) * derivative_D(Ir) / Ir;
  }
  return v / L;
}

QSeries PhiFamilies::Phi_m_c(int m, const std::vector<int>& c) const {
  int K = q_order();
  const QSeries& Phi0 = asym_->Phi[0];
  QSeries I0 = hyper_->I(0).truncated(K);
  long total = m;
  BigRational scalar = 1;
  QSeries prod = Phi0 * Phi0 / (I0 * I0);
  for (size_t i = 0; i < c.size(); ++i) {
    int r = static_cast<int>(i) + 1;
    if (c[i] == 0) continue;
    total += c[i];
    scalar /= BigRational(factorial(c[i]));
    QSeries base = asym_->Phi_at(r) / (BigRational(factorial(r + 1)) * Phi0);
    prod = prod * pow(base, static_cast<long>(c[i]));
  }
  scalar *= BigRational(factorial(total));
  if (total % 2) scalar = -scalar;
  return prod * scalar;
}

QSeries compute_Phi_families(const CIGeometry& g, int p, int b, int K_q) {
  auto hyper = std::make_shared<const HyperData>(g, K_q);
  auto asym = std::make_shared<const AsymptoticData>(solve_asymptotic_expansion(g, b, K_q));
  PhiFamilies fam(hyper, asym);
  return fam.Phi_pb(p, b);
}

QSeries compute_Phi_m_c(const CIGeometry& g, int m, const std::vector<int>& c, int K_q) {
  auto hyper = std::make_shared<const HyperData>(g, K_q);
  auto asym = std::make_shared<const AsymptoticData>(solve_asymptotic_expansion(g, static_cast<int>(c.size()), K_q));
  PhiFamilies fam(hyper, asym);
  return fam.Phi_m_c(m, c);
}

}  // namespace mirrorgw
