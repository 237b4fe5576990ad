#pragma once

#include <string>
#include <vector>

#include "mirrorgw/series.hpp"

namespace mirrorgw {

// A complete intersection of multidegree a in P^{n-1}.
struct CIGeometry {
  int n = 0;
  std::vector<int> a;
  int l = 0;        // number of equations
  int abs_a = 0;    // sum of degrees
  int norm_a = 0;   // sum of k * a_k
  int nu = 0;       // Fano index n - |a|
  BigInt prod_a;    // product of degrees
  BigInt a_pow_a;   // product of a_k^{a_k}
  BigInt a_fact;    // product of a_k!
  // Set when the weighted norm exceeds n (the unweighted bound is what is enforced).
  bool norm_warning = false;

  bool is_calabi_yau() const { return nu == 0; }
  std::string name() const;
  bool operator==(const CIGeometry& o) const { return n == o.n && a == o.a; }
};

// Validates n >= 2, a_k >= 1 and |a| <= n; throws InvalidGeometry otherwise.
CIGeometry make_geometry(int n, std::vector<int> a);

}  // namespace mirrorgw
