#include "mirrorgw/structconst.hpp"

#include <algorithm>
#include <numeric>

#include "mirrorgw/errors.hpp"

namespace mirrorgw {

namespace {

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

int floor_mod(int x, int n) {
  int r = x % n;
  return r < 0 ? r + n : r;
}

void set_partition_rec(const std::vector<int>& elements, size_t i, int k, std::vector<std::vector<int>>& blocks,
                       const std::function<void(const std::vector<std::vector<int>>&)>& f) {
  int remaining = static_cast<int>(elements.size() - i);
  int missing = k - static_cast<int>(blocks.size());
  if (missing > remaining) return;
  if (i == elements.size()) {
    if (missing == 0) f(blocks);
    return;
  }
  size_t existing = blocks.size();
  for (size_t j = 0; j < existing; ++j) {
    blocks[j].push_back(elements[i]);
    set_partition_rec(elements, i + 1, k, blocks, f);
    blocks[j].pop_back();
  }
  if (missing > 0) {
    blocks.push_back({elements[i]});
    set_partition_rec(elements, i + 1, k, blocks, f);
    blocks.pop_back();
  }
}

void composition_rec(int remaining, int parts, std::vector<int>& cur,
                     const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(remaining);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int x = 0; x <= remaining; ++x) {
    cur.push_back(x);
    composition_rec(remaining - x, parts, cur, f);
    cur.pop_back();
  }
}

void weighted_rec(int remaining, int max_part, std::vector<int>& c, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    std::vector<int> v = c;
    while (!v.empty() && v.back() == 0) v.pop_back();
    out.push_back(v);
    return;
  }
  for (int r = std::min(remaining, max_part); r >= 1; --r) {
    if (static_cast<int>(c.size()) < r) c.resize(static_cast<size_t>(r), 0);
    ++c[r - 1];
    weighted_rec(remaining - r, r, c, out);
    --c[r - 1];
  }
}

}  // namespace

int support_target(const CIGeometry& g, int N) { return (N - 1) * (g.n - 2) + 2 + g.l; }

bool satisfies_support(const CIGeometry& g, const SCKey& key) {
  int N = static_cast<int>(key.p.size());
  if (static_cast<int>(key.b.size()) != N) return false;
  for (int x : key.b) {
    if (x < 0) return false;
  }
  if (total(key.b) > N - 3) return false;
  return total(key.p) - total(key.b) + g.nu * key.d + g.n * key.t == support_target(g, N);
}

HatPair hat_decompose(const CIGeometry& g, int p) {
  if (p < 0 || p >= g.n) throw PreconditionViolated("hat decomposition needs 0 <= p < n");
  if (p >= g.l) return {g.n - 1 + g.l - p, 0};
  return {g.l - 1 - p, 1};
}

int hat_twist(const CIGeometry& g, const std::vector<int>& p) {
  return static_cast<int>(std::count_if(p.begin(), p.end(), [&](int x) { return x < g.l; }));
}

BracketData bracket_decompose(const CIGeometry& g, int p, int d) {
  BracketData r;
  int x = p - g.nu * d;
  r.p_bracket = floor_mod(x, g.n);
  r.tau = (x - r.p_bracket) / g.n;
  int y = g.n - 1 + g.l - r.p_bracket;
  r.p_hat_bracket = floor_mod(y, g.n);
  r.t_small = (y - r.p_hat_bracket) / g.n;
  return r;
}

BigRational two_point_seed(const MirrorContext& ctx, int p, int pp, int b, int bp, int d, int t) {
  const CIGeometry& g = ctx.geometry();
  if (p < 0 || p >= g.n || pp < 0 || pp >= g.n) throw PreconditionViolated("two-point seed needs 0 <= p, p' < n");
  if (b < 0 || b + bp != -1 || p + pp + g.n * t != g.n - 1 + g.l || d < 0) return 0;
  QSeries s = ctx.L_pow_n(1 + t) / ctx.I0_squared();
  BigRational v = s.coeff(d);
  return b % 2 ? BigRational(-v) : v;
}

void for_each_set_partition(const std::vector<int>& elements, int k,
                            const std::function<void(const std::vector<std::vector<int>>&)>& f) {
  if (k < 0) return;
  std::vector<std::vector<int>> blocks;
  set_partition_rec(elements, 0, k, blocks, f);
}

const std::vector<std::vector<int>>& weighted_partitions(int weight) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(weight);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (weight >= 0) {
    std::vector<int> c;
    weighted_rec(weight, weight, c, out);
  }
  return cache.emplace(weight, std::move(out)).first->second;
}

void for_each_composition(int total_value, int parts, const std::function<void(const std::vector<int>&)>& f) {
  if (total_value < 0 || parts < 0) return;
  if (parts == 0) {
    if (total_value == 0) f({});
    return;
  }
  std::vector<int> cur;
  composition_rec(total_value, parts, cur, f);
}

RecursiveEngine::RecursiveEngine(const MirrorContext& ctx) : ctx_(ctx) {
  for (int t = 0; t <= 1; ++t) seed_.push_back(ctx.L_pow_n(1 + t) / ctx.I0_squared());
}

size_t RecursiveEngine::memo_size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.size();
}

QSeries RecursiveEngine::series(const std::vector<int>& p, const std::vector<int>& b, int t) {
  if (p.size() != b.size()) throw PreconditionViolated("p and b must have equal length");
  std::vector<int> key = p;
  key.insert(key.end(), b.begin(), b.end());
  key.push_back(t);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  QSeries value = compute(p, b, t);
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.emplace(std::move(key), std::move(value)).first->second;
}

BigRational RecursiveEngine::value(const SCKey& key) {
  const CIGeometry& g = ctx_.geometry();
  for (int x : key.p) {
    if (x < 0 || x >= g.n) throw PreconditionViolated("structure constant entries p_s must lie in [0, n)");
  }
  if (key.p.size() < 3) throw PreconditionViolated("structure constants need N >= 3");
  if (key.d < 0 || !satisfies_support(g, key)) return 0;
  if (key.d > ctx_.q_order()) throw PrecisionExceeded("degree beyond the context truncation order");
  return series(key.p, key.b, key.t).coeff(key.d);
}

QSeries RecursiveEngine::compute(const std::vector<int>& p, const std::vector<int>& b, int t) {
  const CIGeometry& g = ctx_.geometry();
  const int n = g.n, l = g.l, nu = g.nu;
  const int K = ctx_.q_order();
  const int N = static_cast<int>(p.size());
  QSeries result(K);
  if (N < 3) throw PreconditionViolated("structure constants need N >= 3");
  for (int x : b) {
    if (x < 0) return result;
  }
  if (total(b) > N - 3) return result;
  int rhs = support_target(g, N) - total(p) + total(b) - n * t;  // equals nu * d
  int degree = 0;
  if (nu == 0) {
    if (rhs != 0) return result;
  } else {
    if (rhs < 0 || rhs % nu != 0) return result;
    degree = rhs / nu;
    if (degree > K) return result;
  }

  struct Option {
    int pp;
    int bp;
    QSeries C;
  };
  std::vector<int> rest(static_cast<size_t>(N - 1));
  std::iota(rest.begin(), rest.end(), 0);
  for (int m = 3; m <= N; ++m) {
    for_each_set_partition(rest, m - 1, [&](const std::vector<std::vector<int>>& part) {
      std::vector<std::vector<int>> blocks = part;
      blocks.push_back({N - 1});
      std::vector<std::vector<Option>> options(blocks.size());
      for (size_t i = 0; i < blocks.size(); ++i) {
        const auto& S = blocks[i];
        if (S.size() == 1) {
          int s = S[0];
          HatPair h = hat_decompose(g, p[s]);
          QSeries C = seed_[h.t_p];
          if (b[s] % 2) C = -C;
          options[i].push_back({h.p_hat, -1 - b[s], std::move(C)});
          continue;
        }
        int k = static_cast<int>(S.size());
        std::vector<int> sub_p, sub_b;
        for (int s : S) {
          sub_p.push_back(p[s]);
          sub_b.push_back(b[s]);
        }
        int pS = total(sub_p), bS = total(sub_b);
        sub_p.push_back(0);
        sub_b.push_back(0);
        for (int bp = 0; bp <= k - 2 - bS; ++bp) {
          for (int pp = 0; pp < n; ++pp) {
            int base = support_target(g, k + 1) - pS - pp + bS + bp;  // nu d_i + n t_i
            sub_p.back() = pp;
            sub_b.back() = bp;
            for (int ti = 0; n * ti <= base; ++ti) {
              int rem = base - n * ti;
              if (nu == 0 ? rem != 0 : (rem % nu != 0 || rem / nu > K)) continue;
              QSeries C = series(sub_p, sub_b, ti);
              if (!C.is_zero()) options[i].push_back({pp, bp, std::move(C)});
            }
          }
        }
        if (options[i].empty()) return;
      }
      std::vector<size_t> idx(blocks.size(), 0);
      while (true) {
        std::vector<std::pair<int, int>> pb;
        QSeries prod = QSeries::one(K);
        for (size_t i = 0; i < blocks.size(); ++i) {
          const Option& o = options[i][idx[i]];
          pb.emplace_back(o.pp, o.bp);
          prod *= o.C;
        }
        QSeries R = root_factor(m, pb);
        if (!R.is_zero()) result += prod * R;
        size_t j = 0;
        while (j < idx.size() && ++idx[j] == options[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
      }
    });
  }
  if (nu > 0) {
    // Only the degree forced by the support relation is a structure constant.
    BigRational v = result.coeff(degree);
    return QSeries::monomial(v, degree, K);
  }
  return result;
}

QSeries RecursiveEngine::root_factor(int m, std::vector<std::pair<int, int>> pb) {
  std::sort(pb.begin(), pb.end());
  auto key = std::make_pair(m, pb);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = root_memo_.find(key);
    if (it != root_memo_.end()) return it->second;
  }
  const PhiFamilies& fam = ctx_.phi();
  const int K = ctx_.q_order();
  QSeries sum(K);
  for (int weight = 0; weight <= m - 3; ++weight) {
    for (const auto& c : weighted_partitions(weight)) {
      const QSeries& Pmc = ctx_.Phi_m_c(m - 3, c);
      for_each_composition(m - 3 - weight, m, [&](const std::vector<int>& bpp) {
        QSeries term = Pmc;
        BigRational scalar = 1;
        for (int i = 0; i < m; ++i) {
          int index = pb[i].second + 1 + bpp[i];
          if (index < 0) return;
          term *= fam.Phi_pb(pb[i].first, index);
          scalar /= BigRational(factorial(bpp[i]));
        }
        sum += term * scalar;
      });
    }
  }
  if (!sum.is_zero()) {
    QSeries unit = ctx_.I0_squared() * ctx_.Phi0_inverse() / ctx_.L_pow_n(1);
    sum *= pow(unit, static_cast<long>(m));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return root_memo_.emplace(std::move(key), std::move(sum)).first->second;
}

BigRational sc_recursive(const MirrorContext& ctx, const SCKey& key) { return ctx.recursive_engine().value(key); }

}  // namespace mirrorgw
