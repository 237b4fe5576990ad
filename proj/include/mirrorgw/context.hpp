#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "mirrorgw/asym.hpp"
#include "mirrorgw/geometry.hpp"
#include "mirrorgw/hyper.hpp"
#include "mirrorgw/series.hpp"

namespace mirrorgw {

class RecursiveEngine;
class TreeEngine;

// Everything derived from one geometry at a fixed q-truncation order: the
// hypergeometric data, the asymptotic expansion and the derived families,
// plus a few frequently used products. Engines hang off the context and share
// its memo tables.
class MirrorContext {
 public:
  // max_points bounds the number of marked points the engines will be asked about.
  MirrorContext(const CIGeometry& g, int K_q, int max_points);
  ~MirrorContext();

  const CIGeometry& geometry() const { return geom_; }
  int q_order() const { return K_q_; }
  int max_points() const { return max_points_; }

  const HyperData& hyper() const { return *hyper_; }
  const AsymptoticData& asym() const { return *asym_; }
  const PhiFamilies& phi() const { return *phi_; }
  std::shared_ptr<const HyperData> hyper_ptr() const { return hyper_; }

  const QSeries& L() const { return asym_->L; }
  const QSeries& Phi0() const { return asym_->Phi[0]; }
  const QSeries& Phi0_inverse() const { return phi0_inv_; }
  const QSeries& I0_squared() const { return i0_sq_; }
  // L^{k n} if the geometry is Calabi-Yau and 1 otherwise.
  const QSeries& L_pow_n(int k) const;
  // Memoized Phi_{m,c}; c[r-1] holds c_r.
  const QSeries& Phi_m_c(int m, const std::vector<int>& c) const;

  RecursiveEngine& recursive_engine() const;
  TreeEngine& tree_engine() const;

 private:
  CIGeometry geom_;
  int K_q_;
  int max_points_;
  std::shared_ptr<const HyperData> hyper_;
  std::shared_ptr<const AsymptoticData> asym_;
  std::unique_ptr<PhiFamilies> phi_;
  QSeries phi0_inv_;
  QSeries i0_sq_;
  std::vector<QSeries> l_pow_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, std::vector<int>>, QSeries> phi_mc_;
  mutable std::unique_ptr<RecursiveEngine> recursive_;
  mutable std::unique_ptr<TreeEngine> tree_;
};

std::shared_ptr<const MirrorContext> make_context(const CIGeometry& g, int K_q, int max_points);

}  // namespace mirrorgw
