#include "mirrorgw/appendix_b.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "mirrorgw/asym.hpp"
#include "mirrorgw/errors.hpp"

namespace mirrorgw {

namespace {

void identity(bool ok, const std::string& what) {
  if (!ok) throw IdentityViolation(what);
}

BigRational power(const BigRational& x, int k) {
  BigRational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Polynomial in the two retained variables shat_{r1}, shat_{r2}.
using Poly2 = std::map<std::pair<int, int>, BigRational>;

}  // namespace

int check_binomial_identities(int max_arg) {
  int checked = 0;
  // sum over compositions b' of b'_total of prod C(b_i, b'_i) = C(|b|, b'_total). Both
  // sides are symmetric in b, so nondecreasing tuples cover every case.
  for (int m = 1; m <= max_arg; ++m) {
    std::vector<int> b(static_cast<size_t>(m), 0);
    std::function<void(int, int)> each_b = [&](int i, int lo) {
      if (i < m) {
        for (int x = lo; x <= max_arg; ++x) {
          b[i] = x;
          each_b(i + 1, x);
        }
        return;
      }
      int sum_b = 0;
      for (int x : b) sum_b += x;
      for (int bp = 0; bp <= max_arg; ++bp) {
        BigInt lhs = 0;
        std::vector<int> parts(static_cast<size_t>(m), 0);
        std::function<void(int, int)> each_part = [&](int j, int left) {
          if (j == m - 1) {
            parts[j] = left;
            long term = 1;
            for (int s = 0; s < m && term != 0; ++s) term *= binomial(b[s], parts[s]).get_si();
            lhs += static_cast<long>(term);
            return;
          }
          for (int x = 0; x <= left; ++x) {
            parts[j] = x;
            each_part(j + 1, left - x);
          }
        };
        each_part(0, bp);
        identity(lhs == binomial(sum_b, bp), "Vandermonde convolution fails");
        ++checked;
      }
    };
    each_b(0, 0);
  }
  // sum_b (-1)^b C(p, b) prod_{t=B-s+1}^{B} (t + b) = (-1)^p s! C(B, s - p).
  for (int B = 0; B <= max_arg; ++B) {
    for (int p = 0; p <= max_arg; ++p) {
      for (int s = 0; s <= max_arg; ++s) {
        BigInt lhs = 0;
        for (int b = 0; b <= p; ++b) {
          BigInt prod = 1;
          for (int t = B - s + 1; t <= B; ++t) prod *= t + b;
          BigInt term = binomial(p, b) * prod;
          lhs += (b % 2) ? BigInt(-term) : term;
        }
        BigInt rhs = s - p < 0 ? BigInt(0) : BigInt(factorial(s) * binomial(B, s - p));
        if (p % 2) rhs = -rhs;
        identity(lhs == rhs, "alternating rising-product sum fails");
        ++checked;
      }
    }
  }
  // sum_p (-1)^p C(m + p, p) Psi^p = (1 + Psi)^{-(m+1)} as power series in Psi.
  for (int m = 0; m <= max_arg; ++m) {
    QSeries one_plus = QSeries::one(max_arg) + QSeries::variable(max_arg);
    QSeries rhs = inverse(pow(one_plus, static_cast<long>(m + 1)));
    for (int p = 0; p <= max_arg; ++p) {
      BigRational lhs(binomial(m + p, p));
      if (p % 2) lhs = -lhs;
      identity(lhs == rhs[p], "negative binomial expansion fails");
      ++checked;
    }
  }
  return checked;
}

BigRational power_sum_coefficient(int r1, int r2, int b1, int b2) {
  if (r1 < 1 || r2 < 1 || r1 == r2) throw PreconditionViolated("power-sum coefficient needs distinct r1, r2 >= 1");
  if (b1 < 0 || b2 < 0) return 0;
  int top = b1 * r1 + b2 * r2;
  // Newton: w_k = sum_{r=1}^{k-1} shat_r w_{k-r} + k shat_k, with every shat_r other
  // than shat_{r1}, shat_{r2} set to zero (they cannot contribute to the coefficient).
  std::vector<Poly2> w(static_cast<size_t>(top + 1));
  auto var = [&](int r) -> std::pair<int, int> { return r == r1 ? std::make_pair(1, 0) : std::make_pair(0, 1); };
  for (int k = 1; k <= top; ++k) {
    Poly2 wk;
    for (int r : {r1, r2}) {
      if (r < k) {
        auto [e1, e2] = var(r);
        for (const auto& [mono, coeff] : w[static_cast<size_t>(k - r)]) {
          wk[{mono.first + e1, mono.second + e2}] += coeff;
        }
      }
      if (r == k) wk[var(r)] += k;
    }
    w[static_cast<size_t>(k)] = std::move(wk);
  }
  if (top == 0) return 0;
  auto it = w[static_cast<size_t>(top)].find({b1, b2});
  return it == w[static_cast<size_t>(top)].end() ? BigRational(0) : it->second;
}

BigRational power_sum_coefficient_closed(int r1, int r2, int b1, int b2) {
  if (b1 < 0 || b2 < 0) return 0;
  if (b1 + b2 == 0) throw PreconditionViolated("closed power-sum coefficient needs b1 + b2 > 0");
  return BigRational(binomial(b1 + b2 - 1, b2) * r1 + binomial(b1 + b2 - 1, b1) * r2);
}

int check_power_sum_coefficients(int max_b_sum, int max_r) {
  int checked = 0;
  for (int r1 = 1; r1 <= max_r; ++r1) {
    for (int r2 = 1; r2 <= max_r; ++r2) {
      if (r1 == r2) continue;
      for (int b1 = 0; b1 <= max_b_sum; ++b1) {
        for (int b2 = 0; b1 + b2 <= max_b_sum; ++b2) {
          if (b1 + b2 == 0) continue;
          identity(power_sum_coefficient(r1, r2, b1, b2) == power_sum_coefficient_closed(r1, r2, b1, b2),
                   "power-sum coefficient closed form fails at r=(" + std::to_string(r1) + "," + std::to_string(r2) +
                       ") b=(" + std::to_string(b1) + "," + std::to_string(b2) + ")");
          ++checked;
        }
      }
    }
  }
  return checked;
}

namespace {

QSeries denominator(const CIGeometry& g, const QSeries& L) {
  return QSeries::constant(g.abs_a, L.order()) + BigRational(g.nu) * pow(L, static_cast<long>(g.n));
}

}  // namespace

BigRational l_power_coefficient(const CIGeometry& g, const QSeries& L, int d, int t) {
  if (d < 0) return 0;
  QSeries s = BigRational(g.n) * pow(L, static_cast<long>(g.nu * d + g.n * t)) / denominator(g, L);
  return s.coeff(d);
}

BigRational l_power_coefficient_closed(const CIGeometry& g, int d, int t) {
  if (d < 0) return 0;
  return power(BigRational(g.a_pow_a), d) * generalized_binomial(d + t - 1, d);
}

BigRational l_log_derivative_coefficient(const CIGeometry& g, const QSeries& L, int d, int t, int k) {
  if (d < 0) return 0;
  QSeries s = BigRational(g.n) * pow(L, static_cast<long>(g.nu * d + g.n * t)) *
              pow(inverse(denominator(g, L)), static_cast<long>(k)) * (derivative_D(L) / L);
  return s.coeff(d);
}

BigRational l_log_derivative_coefficient_closed(const CIGeometry& g, int d, int t, int k) {
  if (d < 0) return 0;
  BigRational sum = 0;
  BigRational ratio = rational(-g.nu, g.n);
  for (int r = 0; r <= d - 1; ++r) {
    sum += generalized_binomial(k - 1 + r, r) * generalized_binomial(d - 1 + t, d - 1 - r) * power(ratio, r);
  }
  return power(BigRational(g.a_pow_a), d) / power(BigRational(g.n), k) * sum;
}

int check_l_power_identities(const CIGeometry& g, int max_d, int max_abs_t, int max_k) {
  QSeries L = solve_L(g, max_d);
  int checked = 0;
  for (int d = 0; d <= max_d; ++d) {
    for (int t = -max_abs_t; t <= max_abs_t; ++t) {
      identity(l_power_coefficient(g, L, d, t) == l_power_coefficient_closed(g, d, t),
               "L-power coefficient closed form fails for " + g.name() + " at d=" + std::to_string(d) +
                   " t=" + std::to_string(t));
      ++checked;
      for (int k = 0; k <= max_k; ++k) {
        identity(l_log_derivative_coefficient(g, L, d, t, k) == l_log_derivative_coefficient_closed(g, d, t, k),
                 "L log-derivative coefficient closed form fails for " + g.name() + " at d=" + std::to_string(d) +
                     " t=" + std::to_string(t) + " k=" + std::to_string(k));
        ++checked;
      }
    }
  }
  return checked;
}

}  // namespace mirrorgw
