#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mirrorgw/context.hpp"
#include "mirrorgw/geometry.hpp"
#include "mirrorgw/series.hpp"

namespace mirrorgw {

// <tau_{b_1} H^{c_1}, ..., tau_{b_N} H^{c_N}>_{0,d}.
struct InvariantQuery {
  int d = 0;
  std::vector<int> b;
  std::vector<int> c;
  int num_points() const { return static_cast<int>(c.size()); }
};

// Generating series sum_d Q^d N_d for fixed insertions, d = 0..values.size()-1.
struct InvariantSeries {
  CIGeometry geometry;
  std::vector<int> c;
  std::vector<BigRational> values;
};

// |b| + |c| = nu d + n - 4 - l + N.
bool satisfies_dimension(const CIGeometry& g, const InvariantQuery& q);

// Degree-zero invariant <a> delta_{|c|, n-1-l} multinomial(N-3; b) (N >= 3).
BigRational gw_degree_zero(const CIGeometry& g, const std::vector<int>& b, const std::vector<int>& c);

// Shared contexts keyed by geometry; reuses a context whose truncation order and
// point bound cover the request so engine memo tables are shared across queries.
std::shared_ptr<const MirrorContext> shared_context(const CIGeometry& g, int K_q, int max_points);

// General extraction of a genus-0 invariant. Queries violating the dimension
// constraint return 0 (and note the mismatch through `warning` when given).
BigRational gw_invariant(const MirrorContext& ctx, const InvariantQuery& q, std::string* warning = nullptr);
BigRational gw_invariant(const CIGeometry& g, const InvariantQuery& q, std::string* warning = nullptr);

// Closed three- and four-point formulas for Calabi-Yau complete intersections with
// primary insertions, converted to Q-series; N_d for d <= D.
InvariantSeries cy_three_point_series(const CIGeometry& g, int c1, int c2, int c3, int D);
InvariantSeries cy_four_point_series(const CIGeometry& g, const std::vector<int>& c, int D);
// The equivalent second form of the four-point formula (c_1 singled out).
InvariantSeries cy_four_point_series_alt(const CIGeometry& g, const std::vector<int>& c, int D);
// S_c = prod_{r=1}^{c} I_r^{c-r}.
QSeries calabi_yau_S(const HyperData& h, int c);

// Closed three- and four-point formulas for P^{n-1}, independent of the engines.
BigRational proj_theorem4(int n, const InvariantQuery& q);

// True iff some set S of points has b_s + c_s < nu for s in S and sum_S b_s > N - 3.
bool vanishing_predicate(const CIGeometry& g, const std::vector<int>& b, const std::vector<int>& c);

// Empirical growth report for (|b! <...>| / N!)^{1/(N+d)} over a grid of invariants.
struct BoundCertificate {
  int invariants = 0;                  // number of nonzero invariants examined
  std::vector<double> max_by_degree;   // per d, max ratio (0 if none)
  double constant = 0.0;               // max over the whole grid
  std::vector<double> growth;          // max_by_degree[d+1] / max_by_degree[d] where defined
  bool finite = true;
  bool bounded_growth = true;          // growth factors are finite and non-increasing in d
};
BoundCertificate bound_certificate(const CIGeometry& g, int D_max, int N_max);

// All (b, c) with nondecreasing (c, b) pairs satisfying the dimension constraint and
// 0 <= c_s <= n-1-l, for N points at degree d.
std::vector<InvariantQuery> sorted_queries(const CIGeometry& g, int N, int d);

}  // namespace mirrorgw
