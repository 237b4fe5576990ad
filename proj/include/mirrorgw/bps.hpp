#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mirrorgw/geometry.hpp"
#include "mirrorgw/invariants.hpp"
#include "mirrorgw/series.hpp"

namespace mirrorgw {

// Genus-0 BPS numbers n_d, d = 0..values.size()-1 (index 0 is unused and zero).
struct BPSSeries {
  CIGeometry geometry;
  std::vector<int> c;
  int num_points = 0;
  std::vector<BigRational> n_values;
};

// Inverts N_d = sum_{k | d} k^{N-3} n_{d/k} for d >= 1.
BPSSeries bps_from_gw(const InvariantSeries& gw, int N);
// The forward transform, N_d from n_d (d >= 1; the degree-zero entry is copied).
std::vector<BigRational> gw_from_bps(const std::vector<BigRational>& n_values, int N);

struct IntegralityReport {
  bool ok = true;
  std::optional<int> first_failure;  // degree of the first non-integer n_d
  int checked = 0;
  std::string message;
};
IntegralityReport integrality_check(const BPSSeries& bps);

}  // namespace mirrorgw
