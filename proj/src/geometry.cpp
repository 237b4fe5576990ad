#include "mirrorgw/geometry.hpp"

namespace mirrorgw {

std::string CIGeometry::name() const {
  std::string s = "X(" + std::to_string(n) + ";";
  for (size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
  return s + ")";
}

CIGeometry make_geometry(int n, std::vector<int> a) {
  if (n < 2) throw InvalidGeometry("n must be at least 2");
  CIGeometry g;
  g.n = n;
  g.a = std::move(a);
  g.l = static_cast<int>(g.a.size());
  g.prod_a = 1;
  g.a_pow_a = 1;
  g.a_fact = 1;
  for (int k = 0; k < g.l; ++k) {
    int ak = g.a[k];
    if (ak < 1) throw InvalidGeometry("degrees must be positive");
    g.abs_a += ak;
    g.norm_a += (k + 1) * ak;
    g.prod_a *= ak;
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(ak), static_cast<unsigned long>(ak));
    g.a_pow_a *= p;
    g.a_fact *= factorial(ak);
  }
  if (g.abs_a > n) throw InvalidGeometry("|a| must not exceed n");
  g.nu = n - g.abs_a;
  g.norm_warning = g.norm_a > n;
  return g;
}

}  // namespace mirrorgw
