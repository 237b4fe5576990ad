#pragma once

#include <memory>
#include <vector>

#include "mirrorgw/geometry.hpp"
#include "mirrorgw/series.hpp"

namespace mirrorgw {

// The coefficients c_{p,s}^{(d)} and their triangular inverse ctilde_{P,S}^{(d)}
// of a Fano complete intersection.
class CoeffTable {
 public:
  CoeffTable(const CIGeometry& g, int max_degree);

  const CIGeometry& geometry() const { return geom_; }
  int max_degree() const { return max_degree_; }
  // c_{p,s}^{(d)}: coefficient of w^s q^d in w^p D^p F(w, q/w^nu); 0 <= s, p <= n-1-l.
  BigRational c(int p, int s, int d) const;
  // ctilde_{P,S}^{(d)} in the absolute indexing (P, S >= l). Returns delta_{0d} delta_{PS}
  // unless P, S >= l, and zero when S + nu d > P.
  BigRational ctilde(int P, int S, int d) const;

 private:
  CIGeometry geom_;
  int max_degree_;
  int width_;  // n - l
  std::vector<std::vector<std::vector<BigRational>>> c_;   // [d][p][s]
  std::vector<std::vector<std::vector<BigRational>>> ct_;  // [d][P-l][S-l]
};

struct IJSeries {
  std::vector<QSeries> I;  // I_0 .. I_{n-l}
  QSeries J;
};

WLaurent build_F(const CIGeometry& g, int K_w, int K_q);
WLaurent build_F0(const CIGeometry& g, int K_w, int K_q);
IJSeries compute_I_and_J(const CIGeometry& g, int K_q);
CoeffTable compute_coeff_tables(const CIGeometry& g, int K_q);

// Default w-precision sufficient for all extraction needs at q-order K_q.
int default_w_precision(const CIGeometry& g, int K_q);

// All hypergeometric data of one geometry at fixed truncation orders.
class HyperData {
 public:
  HyperData(const CIGeometry& g, int K_q, int K_w = -1);

  const CIGeometry& geometry() const { return geom_; }
  int q_order() const { return K_q_; }
  int w_precision() const { return K_w_; }

  const WLaurent& F() const { return F_; }
  const WLaurent& F0() const { return F0_; }
  // F_p for 0 <= p <= n-1.
  const WLaurent& Fp(int p) const;
  // I_c; equal to 1 for c < 0 or c > n - l.
  QSeries I(int c) const;
  const QSeries& J() const { return J_; }
  // Jt(Q) with q = Q exp(Jt(Q)) (Calabi-Yau case; zero otherwise).
  const QSeries& Jtilde() const { return Jt_; }
  // Q-variable inverse map q(Q) (identity unless Calabi-Yau).
  const QSeries& q_of_Q() const { return q_of_Q_; }
  // Null in the Calabi-Yau case.
  const CoeffTable* coeffs() const { return coeffs_.get(); }
  BigRational ctilde(int P, int S, int d) const;
  // Fhat_p and Fhat_(p) for l <= p <= n-1.
  const WLaurent& Fhat(int p) const;
  const WLaurent& Fhat_paren(int p) const;

 private:
  CIGeometry geom_;
  int K_q_;
  int K_w_;
  WLaurent F_;
  WLaurent F0_;
  std::vector<WLaurent> Fp_;
  std::vector<QSeries> I_;
  QSeries J_;
  QSeries Jt_;
  QSeries q_of_Q_;
  std::shared_ptr<CoeffTable> coeffs_;
  std::vector<WLaurent> Fhat_;
  std::vector<WLaurent> Fhat_paren_;
};

WLaurent build_F0_Fp(const CIGeometry& g, int p, int K_w, int K_q);
std::pair<WLaurent, WLaurent> build_Fhat(const CIGeometry& g, int p, int K_w, int K_q);

}  // namespace mirrorgw
