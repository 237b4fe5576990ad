#include "mirrorgw/suites.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "mirrorgw/appendix_b.hpp"
#include "mirrorgw/asym.hpp"
#include "mirrorgw/bps.hpp"
#include "mirrorgw/context.hpp"
#include "mirrorgw/errors.hpp"
#include "mirrorgw/hyper.hpp"
#include "mirrorgw/invariants.hpp"
#include "mirrorgw/structconst.hpp"

namespace mirrorgw {

namespace {

std::string describe(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

void parallel_for(int count, const std::function<void(int)>& f) {
  int workers = std::min(worker_count(), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::mutex mutex;
  int next = 0;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        int i;
        {
          std::lock_guard<std::mutex> lock(mutex);
          if (next >= count || error) return;
          i = next++;
        }
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

// Collects checks from worker threads into one result.
class Collector {
 public:
  explicit Collector(SuiteResult& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    std::lock_guard<std::mutex> lock(mutex_);
    ++r_.checks;
    if (!ok) r_.fail(what);
  }
  void add(long checks) {
    std::lock_guard<std::mutex> lock(mutex_);
    r_.checks += checks;
  }
  void note(const std::string& what) {
    std::lock_guard<std::mutex> lock(mutex_);
    r_.note(what);
  }
  void fail(const std::string& what) {
    std::lock_guard<std::mutex> lock(mutex_);
    r_.fail(what);
  }

 private:
  SuiteResult& r_;
  std::mutex mutex_;
};

// Runs body and turns a library error into a suite failure.
void guarded(Collector& c, const std::string& label, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    c.fail(label + ": " + e.what());
  }
}

}  // namespace

void SuiteResult::fail(const std::string& what) {
  passed = false;
  if (details.size() < 50) details.insert(details.begin(), "FAIL " + what);
}

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("MIRRORGW_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

SuiteResult suite_identities(int K) {
  SuiteResult r;
  r.name = "lemma2.3";
  Collector c(r);
  const std::vector<GeometrySpec> cy = {{5, {5}}, {6, {3, 3}}, {8, {8}}};
  for (const auto& [n, a] : cy) {
    auto g = make_geometry(n, a);
    guarded(c, g.name(), [&] {
      HyperData h(g, K);
      QSeries L = solve_L(g, K);
      int w = g.n - g.l;
      QSeries prod = QSeries::one(K), weighted = QSeries::one(K);
      for (int p = 0; p <= w; ++p) {
        c.check(h.I(w - p) == h.I(p), g.name() + ": I_{n-l-p} = I_p at p=" + std::to_string(p));
        prod *= h.I(p);
        weighted *= pow(h.I(p), static_cast<long>(w - p));
      }
      c.check(prod == pow(L, static_cast<long>(g.n)), g.name() + ": I_0 ... I_{n-l} = L^n");
      c.check(weighted == pow(L, rational(g.n * w, 2)), g.name() + ": prod I_p^{n-l-p} = L^{n(n-l)/2}");
      QSeries aq = QSeries::monomial(BigRational(g.a_pow_a), 1, K);
      QSeries E = aq / (QSeries::one(K) - aq) - BigRational(2) * (derivative_D(h.I(0)) / h.I(0));
      for (int cc = 0; cc <= w; ++cc) {
        QSeries lhs = derivative_D(calabi_yau_S(h, cc)) / calabi_yau_S(h, cc);
        QSeries rhs = derivative_D(calabi_yau_S(h, w - cc)) / calabi_yau_S(h, w - cc) - rational(w - 2 * cc, 2) * E;
        c.check(lhs == rhs, g.name() + ": S_c log-derivative symmetry at c=" + std::to_string(cc));
      }
    });
  }
  const std::vector<GeometrySpec> grid = {{5, {}}, {5, {3}}, {5, {4}}, {5, {5}}, {6, {3, 3}}, {8, {8}}, {6, {2, 2}}};
  parallel_for(static_cast<int>(grid.size()), [&](int i) {
    auto g = make_geometry(grid[i].first, grid[i].second);
    guarded(c, g.name(), [&] {
      // D^p F_0 = M^p F_0 for p <= l.
      if (g.l >= 1) {
        WLaurent F0 = build_F0(g, default_w_precision(g, K), K);
        WLaurent viaD = F0, viaM = F0;
        for (int p = 1; p <= g.l; ++p) {
          viaD = wl_apply_D(viaD);
          viaM = wl_apply_M(viaM);
          c.check(viaD == viaM, g.name() + ": D^p F_0 = M^p F_0 at p=" + std::to_string(p));
        }
      }
      AsymptoticData data = solve_asymptotic_expansion(g, 4, K);
      const QSeries& L = data.L;
      QSeries Ln = pow(L, static_cast<long>(g.n));
      QSeries A = QSeries::constant(g.abs_a, K) + BigRational(g.nu) * Ln;
      c.check(Ln - BigRational(g.a_pow_a) * pow(L, static_cast<long>(g.abs_a)).shifted(1) == QSeries::one(K),
              g.name() + ": L^n - a^a q L^|a| = 1");
      c.check(derivative_D(L) / L == (Ln - QSeries::one(K)) / A, g.name() + ": L'/L = (L^n - 1)/(|a| + nu L^n)");
      QSeries closed = pow(QSeries::constant(g.n, K) / A, rational(1, 2)) * pow(L, rational(g.l + 1, 2));
      c.check(data.Phi[0] == closed, g.name() + ": Phi_0 equals its closed form");
      c.check(data.ops[0].apply(data.Phi[0]).is_zero(), g.name() + ": closed Phi_0 solves the first-order ODE");
      auto residual = asymptotic_residual(data);
      for (size_t b = 0; b < residual.size(); ++b)
        c.check(residual[b].is_zero(), g.name() + ": asymptotic ODE residual vanishes at b=" + std::to_string(b));
    });
  });
  return r;
}

SuiteResult suite_appendix_b() {
  SuiteResult r;
  r.name = "appendixB";
  Collector c(r);
  guarded(c, "binomial identities", [&] { c.add(check_binomial_identities(6)); });
  guarded(c, "power-sum coefficients", [&] { c.add(check_power_sum_coefficients(5, 4)); });
  const std::vector<GeometrySpec> grid = {{5, {}}, {5, {3}}, {5, {4}}, {5, {5}}, {6, {3, 3}}, {8, {8}}};
  for (const auto& [n, a] : grid) {
    auto g = make_geometry(n, a);
    guarded(c, g.name(), [&] { c.add(check_l_power_identities(g, 12, 3, 3)); });
  }
  const std::vector<GeometrySpec> fano = {{5, {3}}, {5, {4}}, {6, {2, 2}}};
  parallel_for(static_cast<int>(fano.size()), [&](int i) {
    auto g = make_geometry(fano[i].first, fano[i].second);
    guarded(c, g.name(), [&] {
      MirrorContext ctx(g, 4, 4);
      c.add(check_ctilde_support(ctx));
      c.add(check_ctilde_lemmas(ctx, 4));
    });
  });
  return r;
}

std::vector<GeometrySpec> default_engine_geometries() { return {{5, {}}, {5, {3}}, {5, {5}}, {6, {3, 3}}, {8, {8}}}; }

SuiteResult suite_engines(const std::vector<GeometrySpec>& geometries, int max_points, int max_degree) {
  SuiteResult r;
  r.name = "engines";
  Collector c(r);
  // One task per (geometry, N) so the largest cases do not serialize.
  std::vector<std::pair<int, int>> tasks;
  for (int i = 0; i < static_cast<int>(geometries.size()); ++i) {
    for (int N = 3; N <= max_points; ++N) tasks.emplace_back(i, N);
  }
  parallel_for(static_cast<int>(tasks.size()), [&](int task) {
    auto [gi, N] = tasks[task];
    // Each task evaluates through its own context so memo tables are not contended.
    MirrorContext ctx(make_geometry(geometries[gi].first, geometries[gi].second), std::max(max_degree, 1), max_points);
    const CIGeometry& g = ctx.geometry();
    guarded(c, g.name(), [&] {
      long keys = 0, nonzero = 0, closed = 0;
      std::vector<int> p(static_cast<size_t>(N), g.l), b(static_cast<size_t>(N), 0);
      std::function<void(int)> each_p;
      std::function<void(int, int)> each_b = [&](int j, int left) {
        if (j == N) {
          for (int d = 0; d <= max_degree; ++d) {
            SCKey key{p, b, d, 0};
            if (!satisfies_support(g, key)) continue;
            ++keys;
            BigRational rec = sc_recursive(ctx, key);
            BigRational tree = sc_tree(ctx, p, b, d);
            if (rec != 0) ++nonzero;
            c.check(rec == tree, g.name() + " p=" + describe(p) + " b=" + describe(b) + " d=" + std::to_string(d) +
                                     ": recursive " + to_string(rec) + " vs tree " + to_string(tree));
            for (ClosedForm which :
                 {ClosedForm::degree_zero, ClosedForm::top_b, ClosedForm::four_point, ClosedForm::projective}) {
              BigRational v;
              try {
                v = sc_closed_forms(ctx, key, which);
              } catch (const HypothesisViolated&) {
                continue;
              }
              ++closed;
              c.check(v == rec, g.name() + " p=" + describe(p) + " b=" + describe(b) + " d=" + std::to_string(d) +
                                    ": closed form " + std::to_string(static_cast<int>(which)) + " gives " +
                                    to_string(v) + " vs " + to_string(rec));
            }
          }
          return;
        }
        for (int x = 0; x <= left; ++x) {
          b[j] = x;
          each_b(j + 1, left - x);
        }
        b[j] = 0;
      };
      each_p = [&](int i) {
        if (i == N) {
          each_b(0, N - 3);
          return;
        }
        for (int x = g.l; x < g.n; ++x) {
          p[i] = x;
          each_p(i + 1);
        }
      };
      each_p(0);
      c.note(g.name() + " N=" + std::to_string(N) + ": " + std::to_string(keys) + " keys (" + std::to_string(nonzero) +
             " nonzero), " + std::to_string(closed) + " closed-form comparisons");
    });
  });
  return r;
}

SuiteResult suite_vanishing(int random_queries, unsigned seed) {
  SuiteResult r;
  r.name = "vanishing";
  Collector c(r);
  // P^m is the geometry with n = m + 1 and no equations.
  for (int m = 2; m <= 5; ++m) {
    auto g = make_geometry(m + 1, {});
    guarded(c, g.name(), [&] {
      auto ctx = shared_context(g, 3, 6);
      long instances = 0;
      for (int b = 1; b <= m; ++b) {
        for (int N = 3; N <= 6; ++N) {
          for (int d = 1; d <= 3; ++d) {
            int free_total = g.nu * d + g.n - 4 + N - (N - 2) * m;
            for (int c1 = 0; c1 <= m; ++c1) {
              for (int b1 = 0; b1 + c1 <= free_total; ++b1) {
                for (int c2 = 0; c2 <= m; ++c2) {
                  int b2 = free_total - b1 - c1 - c2;
                  if (b2 < 0) continue;
                  InvariantQuery q{d, std::vector<int>(static_cast<size_t>(N - 2), b),
                                   std::vector<int>(static_cast<size_t>(N - 2), m - b)};
                  q.b.push_back(b1);
                  q.c.push_back(c1);
                  q.b.push_back(b2);
                  q.c.push_back(c2);
                  ++instances;
                  c.check(vanishing_predicate(g, q.b, q.c), g.name() + ": hypothesis holds for the repeated family");
                  BigRational v = gw_invariant(*ctx, q);
                  c.check(v == 0, g.name() + " b=" + describe(q.b) + " c=" + describe(q.c) + " d=" + std::to_string(d) +
                                      " gives " + to_string(v));
                }
              }
            }
          }
        }
      }
      c.note(g.name() + ": " + std::to_string(instances) + " repeated-insertion instances");
    });
  }
  const std::vector<GeometrySpec> grid = {{5, {3}}, {6, {2, 2}}, {5, {}}, {6, {3}}, {7, {2, 3}}};
  struct Cell {
    int geometry;
    std::vector<InvariantQuery> queries;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
    auto g = make_geometry(grid[i].first, grid[i].second);
    for (int N = 3; N <= 5; ++N) {
      for (int d = 1; d <= 3; ++d) {
        Cell cell{i, {}};
        for (auto& q : sorted_queries(g, N, d)) {
          if (vanishing_predicate(g, q.b, q.c)) cell.queries.push_back(q);
        }
        if (!cell.queries.empty()) cells.push_back(std::move(cell));
      }
    }
  }
  std::mt19937 rng(seed);
  std::vector<std::pair<int, InvariantQuery>> picks;
  for (int k = 0; k < random_queries && !cells.empty(); ++k) {
    const Cell& cell = cells[std::uniform_int_distribution<size_t>(0, cells.size() - 1)(rng)];
    InvariantQuery q = cell.queries[std::uniform_int_distribution<size_t>(0, cell.queries.size() - 1)(rng)];
    std::vector<size_t> perm(q.c.size());
    for (size_t s = 0; s < perm.size(); ++s) perm[s] = s;
    std::shuffle(perm.begin(), perm.end(), rng);
    InvariantQuery shuffled{q.d, {}, {}};
    for (size_t s : perm) {
      shuffled.b.push_back(q.b[s]);
      shuffled.c.push_back(q.c[s]);
    }
    picks.emplace_back(cell.geometry, shuffled);
  }
  parallel_for(static_cast<int>(picks.size()), [&](int k) {
    auto g = make_geometry(grid[picks[k].first].first, grid[picks[k].first].second);
    const InvariantQuery& q = picks[k].second;
    guarded(c, g.name(), [&] {
      auto ctx = shared_context(g, 3, 5);
      BigRational v = gw_invariant(*ctx, q);
      c.check(v == 0, g.name() + " random b=" + describe(q.b) + " c=" + describe(q.c) + " d=" + std::to_string(q.d) +
                          " gives " + to_string(v));
    });
  });
  c.note(std::to_string(picks.size()) + " random queries satisfying the vanishing hypothesis");
  return r;
}

SuiteResult suite_theorem4() {
  SuiteResult r;
  r.name = "theorem4";
  Collector c(r);
  std::vector<int> ns = {4, 5, 6, 7, 8};
  parallel_for(static_cast<int>(ns.size()), [&](int i) {
    int n = ns[i];
    auto g = make_geometry(n, {});
    guarded(c, g.name(), [&] {
      auto ctx = shared_context(g, 2, 4);
      std::vector<int> cv(4);
      long lines = 0, conics = 0;
      std::function<void(int, int)> each = [&](int s, int left) {
        if (s == 4) {
          if (left != 0) return;
          int expect = n;
          for (int x : cv) expect = std::min({expect, x, n - x});
          InvariantQuery q{1, {0, 0, 0, 0}, cv};
          BigRational eng = gw_invariant(*ctx, q), thm = proj_theorem4(n, q);
          ++lines;
          c.check(eng == expect && thm == expect, g.name() + " lines c=" + describe(cv) + ": engine " + to_string(eng) +
                                                      ", closed " + to_string(thm) + ", expected " +
                                                      std::to_string(expect));
          return;
        }
        for (int x = 0; x <= std::min(left, n - 1); ++x) {
          cv[s] = x;
          each(s + 1, left - x);
        }
      };
      each(0, 2 * n);
      std::function<void(int, int)> each2 = [&](int s, int left) {
        if (s == 4) {
          if (left != 0) return;
          InvariantQuery q{2, {0, 0, 0, 0}, cv};
          BigRational eng = gw_invariant(*ctx, q), thm = proj_theorem4(n, q);
          ++conics;
          c.check(eng == 0 && thm == 0, g.name() + " conics c=" + describe(cv) + ": engine " + to_string(eng) +
                                            ", closed " + to_string(thm));
          return;
        }
        for (int x = 0; x <= std::min(left, n - 1); ++x) {
          cv[s] = x;
          each2(s + 1, left - x);
        }
      };
      each2(0, 3 * n);
      long three = 0;
      for (int d = 0; d <= 1; ++d) {
        for (const auto& q : sorted_queries(g, 3, d)) {
          ++three;
          BigRational eng = gw_invariant(*ctx, q), thm = proj_theorem4(n, q);
          c.check(eng == thm, g.name() + " three-point b=" + describe(q.b) + " c=" + describe(q.c) + " d=" +
                                  std::to_string(d) + ": engine " + to_string(eng) + ", closed " + to_string(thm));
        }
      }
      c.note(g.name() + ": " + std::to_string(lines) + " line counts, " + std::to_string(conics) + " conic counts, " +
             std::to_string(three) + " three-point comparisons");
    });
  });
  return r;
}

SuiteResult suite_integrality(int max_degree) {
  SuiteResult r;
  r.name = "integrality";
  Collector c(r);
  const std::vector<GeometrySpec> table1 = {{8, {8}},       {9, {2, 7}},    {9, {3, 6}},    {9, {4, 5}},
                                            {10, {2, 2, 6}}, {10, {2, 3, 5}}, {10, {2, 4, 4}}, {10, {3, 3, 4}}};
  parallel_for(static_cast<int>(table1.size()), [&](int i) {
    auto g = make_geometry(table1[i].first, table1[i].second);
    guarded(c, g.name(), [&] {
      auto bps = bps_from_gw(cy_three_point_series(g, 2, 2, 2, max_degree), 3);
      auto report = integrality_check(bps);
      c.check(report.ok, g.name() + ": " + report.message);
      c.note(g.name() + ": " + report.message);
    });
  });
  return r;
}

SuiteResult suite_trees(int max_points) {
  SuiteResult r;
  r.name = "trees";
  Collector c(r);
  for (int N = 3; N <= max_points; ++N) {
    guarded(c, "N=" + std::to_string(N), [&] {
      BigInt weight = 0;
      long count = 0;
      for_each_trivalent_tree(N, [&](const MarkedTree& t) {
        weight += tree_weight(t);
        ++count;
      });
      BigInt expect = 1;
      for (int i = 0; i < N - 2; ++i) expect *= N - 2;
      c.check(weight == expect, "N=" + std::to_string(N) + ": weighted count " + weight.get_str() + " vs " +
                                    expect.get_str());
      c.note("N=" + std::to_string(N) + ": " + std::to_string(count) + " trees, weighted count " + weight.get_str());
    });
  }
  guarded(c, "N=4 trees", [&] {
    auto trees = enumerate_trivalent_trees(4);
    std::vector<std::string> names;
    for (const auto& t : trees) names.push_back(t.canonical);
    std::vector<std::string> expect = {"(1,2,3,4)", "(1,4(2,3))", "(2,4(1,3))", "(3,4(1,2))"};
    c.check(names == expect, "the four-marked trees are the one-vertex tree and the three two-vertex splittings");
  });
  return r;
}

SuiteResult suite_holomorphy(int max_degree) {
  SuiteResult r;
  r.name = "holomorphy";
  Collector c(r);
  const std::vector<GeometrySpec> grid = {{5, {}},     {5, {3}},  {5, {4}},  {5, {5}},
                                          {6, {3, 3}}, {8, {8}},  {6, {2, 2}}, {6, {3}}};
  parallel_for(static_cast<int>(grid.size()), [&](int i) {
    auto g = make_geometry(grid[i].first, grid[i].second);
    guarded(c, g.name(), [&] {
      HyperData h(g, max_degree);  // the constructor rejects any negative power of w
      for (int p = 0; p < g.n; ++p) c.check(h.Fp(p).is_holomorphic(), g.name() + ": F_" + std::to_string(p));
      for (int p = g.l; p < g.n; ++p) {
        const WLaurent& f = h.Fhat_paren(p);
        c.check(f.is_holomorphic(), g.name() + ": Fhat_(" + std::to_string(p) + ")");
        c.check(f.coeff(0, p) == 1, g.name() + ": Fhat_(" + std::to_string(p) + ") starts with w^p");
      }
    });
  });
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma2.3", "appendixB", "engines",    "vanishing",
                                                 "theorem4", "integrality", "trees", "holomorphy"};
  return names;
}

SuiteResult run_suite(const std::string& name) {
  if (name == "lemma2.3") return suite_identities();
  if (name == "appendixB") return suite_appendix_b();
  if (name == "engines") return suite_engines(default_engine_geometries());
  if (name == "vanishing") return suite_vanishing();
  if (name == "theorem4") return suite_theorem4();
  if (name == "integrality") return suite_integrality();
  if (name == "trees") return suite_trees();
  if (name == "holomorphy") return suite_holomorphy();
  throw PreconditionViolated("unknown suite '" + name + "'");
}

}  // namespace mirrorgw
