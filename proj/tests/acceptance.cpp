// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "mirrorgw/cli.hpp"
#include "mirrorgw/errors.hpp"
#include "mirrorgw/invariants.hpp"
#include "mirrorgw/structconst.hpp"
#include "mirrorgw/suites.hpp"

using namespace mirrorgw;

namespace {

struct Outcome {
  bool passed = true;
  std::string summary;
  std::vector<std::string> failures;
};

Outcome from_suite(const SuiteResult& r) {
  Outcome o;
  o.passed = r.passed;
  o.summary = std::to_string(r.checks) + " checks";
  for (const auto& line : r.details) {
    if (line.rfind("FAIL", 0) == 0) o.failures.push_back(line);
  }
  return o;
}

Outcome tables(const std::vector<int>& which, int max_degree) {
  Outcome o;
  int compared = 0;
  for (int t : which) {
    for (const auto& entry : pinned_table(t)) {
      TableCheck chk = check_table_entry(entry, std::min<int>(max_degree, static_cast<int>(entry.bps.size())));
      compared += chk.compared;
      for (const auto& m : chk.mismatches) o.failures.push_back(m);
    }
  }
  o.passed = o.failures.empty() && compared > 0;
  o.summary = std::to_string(compared) + " published BPS numbers compared";
  return o;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cubic threefold invariants",
       [] {
         Outcome o;
         auto start = clock::now();
         auto g = make_geometry(5, {3});
         for (const auto& pin : pinned_cubic_invariants()) {
           BigRational v = gw_invariant(g, InvariantQuery{pin.d, std::vector<int>(pin.c.size(), 0), pin.c});
           if (v != parse_rational(pin.value)) o.failures.push_back("d=" + std::to_string(pin.d) + " gives " + to_string(v));
         }
         double seconds = std::chrono::duration<double>(clock::now() - start).count();
         if (seconds >= 30.0) o.failures.push_back("took " + std::to_string(seconds) + " s");
         o.passed = o.failures.empty();
         std::ostringstream s;
         s << pinned_cubic_invariants().size() << " invariants in " << seconds << " s";
         o.summary = s.str();
         return o;
       }},
      {"cubic threefold structure constants (both engines)",
       [] {
         Outcome o;
         MirrorContext ctx(make_geometry(5, {3}), 4, 4);
         for (const auto& pin : pinned_cubic_constants()) {
           std::vector<int> b(pin.p.size(), 0);
           BigRational want = parse_rational(pin.value);
           BigRational rec = sc_recursive(ctx, SCKey{pin.p, b, pin.d, 0});
           BigRational tree = sc_tree(ctx, pin.p, b, pin.d);
           if (rec != want || tree != want)
             o.failures.push_back("d=" + std::to_string(pin.d) + ": " + to_string(rec) + " / " + to_string(tree));
         }
         o.passed = o.failures.empty();
         o.summary = std::to_string(pinned_cubic_constants().size()) + " constants";
         return o;
       }},
      {"Calabi-Yau 6-fold BPS table", [] { return tables({1}, 4); }},
      {"Calabi-Yau 7-fold and X_10 BPS tables", [] { return tables({2, 3, 4}, 3); }},
      {"projective line counts and closed formulas", [] { return from_suite(suite_theorem4()); }},
      {"vanishing of descendant invariants", [] { return from_suite(suite_vanishing()); }},
      {"identities of the mirror series to order 15", [] { return from_suite(suite_identities(15)); }},
      {"binomial, power-sum, L-power and ctilde identities", [] { return from_suite(suite_appendix_b()); }},
      {"recursive and tree engines agree", [] { return from_suite(suite_engines(default_engine_geometries())); }},
      {"weighted trivalent tree counts", [] { return from_suite(suite_trees(9)); }},
      {"BPS integrality to degree 10", [] { return from_suite(suite_integrality(10)); }},
      {"holomorphy of F_p and Fhat_(p)", [] { return from_suite(suite_holomorphy(10)); }},
      {"empirical growth bound (cubic threefold, d <= 4, N <= 5)",
       [] {
         Outcome o;
         BoundCertificate cert = bound_certificate(make_geometry(5, {3}), 4, 5);
         o.passed = cert.finite && cert.bounded_growth && cert.invariants > 0;
         std::ostringstream s;
         s << cert.invariants << " invariants, C = " << cert.constant << ", per-degree growth";
         for (double x : cert.growth) s << ' ' << x;
         s << " (non-increasing: " << (cert.bounded_growth ? "yes" : "no") << ")";
         o.summary = s.str();
         return o;
       }},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto start = clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.summary = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(clock::now() - start).count();
    std::printf("%s %2zu. %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.summary.c_str(), seconds);
    for (size_t k = 0; k < o.failures.size() && k < 10; ++k) std::printf("       %s\n", o.failures[k].c_str());
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
