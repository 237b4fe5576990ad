#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mirrorgw/geometry.hpp"

namespace mirrorgw {

// Outcome of a named verification suite.
struct SuiteResult {
  std::string name;
  bool passed = true;
  long checks = 0;
  std::vector<std::string> details;  // failures first, then summary lines

  void fail(const std::string& what);
  void note(const std::string& what) { details.push_back(what); }
};

using GeometrySpec = std::pair<int, std::vector<int>>;

// Worker count: hardware concurrency capped by MIRRORGW_THREADS when set.
int worker_count();
// Runs f(i) for i in [0, count) on up to worker_count() threads; rethrows the first error.
void parallel_for(int count, const std::function<void(int)>& f);

// The three mirror-series identities for |a| = n, the S_c log-derivative symmetry, D^p F_0 = M^p F_0 for p <= l, the
// closed form of Phi_0 against the ODE, and the asymptotic ODE residual.
SuiteResult suite_identities(int K = 15);
// Binomial identities, power-sum coefficients, L-power identities and ctilde lemmas.
SuiteResult suite_appendix_b();
// Recursive and tree engines agree on every feasible t = 0 key with l <= p_s < n,
// 3 <= N <= max_points and d <= max_degree; closed forms agree on their domains.
SuiteResult suite_engines(const std::vector<GeometrySpec>& geometries, int max_points = 5, int max_degree = 3);
std::vector<GeometrySpec> default_engine_geometries();
// Vanishing of the P^n family with repeated tau_b H^{n-b} insertions, plus a random
// grid of queries satisfying the vanishing hypothesis.
SuiteResult suite_vanishing(int random_queries = 200, unsigned seed = 20240607u);
// Line counts and conic vanishing for P^{n-1}, n = 4..8, and three-point agreement of
// the closed projective formula with the general engine.
SuiteResult suite_theorem4();
// Integrality of BPS numbers for the Calabi-Yau 6-folds of the first table, d <= max_degree.
SuiteResult suite_integrality(int max_degree = 10);
// Weighted counts of trivalent N-marked trees, N = 3..max_points.
SuiteResult suite_trees(int max_points = 9);
// Holomorphy of F_p and Fhat_(p) over the test geometries, d <= max_degree.
SuiteResult suite_holomorphy(int max_degree = 10);

// Dispatch by CLI name; throws PreconditionViolated for unknown names.
SuiteResult run_suite(const std::string& name);
const std::vector<std::string>& suite_names();

}  // namespace mirrorgw
