#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "mirrorgw/geometry.hpp"
#include "mirrorgw/hyper.hpp"
#include "mirrorgw/series.hpp"

namespace mirrorgw {

// Unique L in 1 + qQ[[q]] with L^n - a^a q L^{|a|} = 1.
QSeries solve_L(const CIGeometry& g, int K_q);
// chi_0 .. chi_{|a|}, defined by prod_k prod_{r=1}^{a_k} (a_k D + r) = a^a sum_i chi_{|a|-i} D^i.
std::vector<BigRational> compute_chi(const CIGeometry& g);

// Memoized rational functions H_{m,j}(u).
class HTable {
 public:
  explicit HTable(const CIGeometry& g);
  RationalFn get(int m, int j);

 private:
  CIGeometry geom_;
  RationalFn rho_;  // (u-1)/(|a| + nu u)
  std::map<std::pair<int, int>, RationalFn> memo_;
  std::mutex mutex_;
};

RationalFn compute_H_mj(const CIGeometry& g, int m, int j);

// A differential operator sum_i coeff[i] D^i with series coefficients.
struct OperatorLk {
  std::vector<QSeries> coeff;
  QSeries apply(const QSeries& f) const;
};

// L_1 .. L_n (index k-1 holds L_k).
std::vector<OperatorLk> build_L_operators(const CIGeometry& g, int K_q);

struct AsymptoticData {
  CIGeometry geometry;
  QSeries L;
  std::vector<BigRational> chi;
  QSeries xi;
  std::vector<QSeries> Phi;  // Phi_0 .. Phi_B
  std::vector<OperatorLk> ops;
  QSeries g;                 // conjugating factor, equal to Phi_0
  QSeries Phi_at(int b) const;  // zero for b < 0
};

AsymptoticData solve_asymptotic_expansion(const CIGeometry& g, int B, int K_q);

// Residual of the w-expansion ODE for the coefficients w^{n}, w^{n-1}, ..., w^{n-1-B};
// all entries vanish exactly when the asymptotic data is consistent.
std::vector<QSeries> asymptotic_residual(const AsymptoticData& data);

// Derived families Phihat_{p;b}, Phi_{p;b}, A_p^{(1)} and Phi_{m,c}.
class PhiFamilies {
 public:
  PhiFamilies(std::shared_ptr<const HyperData> hyper, std::shared_ptr<const AsymptoticData> asym);

  const HyperData& hyper() const { return *hyper_; }
  const AsymptoticData& asym() const { return *asym_; }
  int max_b() const { return static_cast<int>(asym_->Phi.size()) - 1; }
  int q_order() const { return asym_->L.order(); }

  // Phihat_{p;b} for -l <= p <= n-1-l (zero for b < 0).
  const QSeries& Phi_hat(int p, int b) const;
  // Phi_{p;b} for 0 <= p <= n-1 (zero for b < 0).
  const QSeries& Phi_pb(int p, int b) const;
  // A_p^{(1)} from its closed form.
  QSeries A1(int p) const;
  // Phi_{m,c}; c[r-1] holds c_r.
  QSeries Phi_m_c(int m, const std::vector<int>& c) const;

  const QSeries& zero() const { return zero_; }

 private:
  std::shared_ptr<const HyperData> hyper_;
  std::shared_ptr<const AsymptoticData> asym_;
  int p_min_;
  std::vector<std::vector<QSeries>> hat_;  // [p - p_min][b]
  std::vector<std::vector<QSeries>> pb_;   // [p][b]
  QSeries zero_;
};

QSeries compute_Phi_families(const CIGeometry& g, int p, int b, int K_q);
QSeries compute_Phi_m_c(const CIGeometry& g, int m, const std::vector<int>& c, int K_q);

}  // namespace mirrorgw
