#include "mirrorgw/context.hpp"

#include "mirrorgw/errors.hpp"
#include "mirrorgw/structconst.hpp"

namespace mirrorgw {

MirrorContext::MirrorContext(const CIGeometry& g, int K_q, int max_points)
    : geom_(g), K_q_(K_q), max_points_(max_points) {
  if (K_q < 0) throw PreconditionViolated("truncation order must be nonnegative");
  if (max_points < 3) max_points_ = 3;
  hyper_ = std::make_shared<const HyperData>(g, K_q);
  // Structure constants with N points only involve Phi_b with b <= N.
  asym_ = std::make_shared<const AsymptoticData>(solve_asymptotic_expansion(g, max_points_ + 1, K_q));
  phi_ = std::make_unique<PhiFamilies>(hyper_, asym_);
  phi0_inv_ = inverse(asym_->Phi[0]);
  QSeries I0 = hyper_->I(0).truncated(K_q);
  i0_sq_ = I0 * I0;
  QSeries Ln = g.nu == 0 ? pow(asym_->L, static_cast<long>(g.n)) : QSeries::one(K_q);
  l_pow_.push_back(QSeries::one(K_q));
  for (int k = 1; k <= max_points_ + 2; ++k) l_pow_.push_back(l_pow_.back() * Ln);
}

MirrorContext::~MirrorContext() = default;

const QSeries& MirrorContext::L_pow_n(int k) const {
  if (k < 0 || k >= static_cast<int>(l_pow_.size())) throw PreconditionViolated("L power out of range");
  return l_pow_[k];
}

const QSeries& MirrorContext::Phi_m_c(int m, const std::vector<int>& c) const {
  std::vector<int> key = c;
  while (!key.empty() && key.back() == 0) key.pop_back();
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = phi_mc_.find({m, key});
  if (it != phi_mc_.end()) return it->second;
  return phi_mc_.emplace(std::make_pair(m, key), phi_->Phi_m_c(m, key)).first->second;
}

RecursiveEngine& MirrorContext::recursive_engine() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!recursive_) recursive_ = std::make_unique<RecursiveEngine>(*this);
  return *recursive_;
}

TreeEngine& MirrorContext::tree_engine() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!tree_) tree_ = std::make_unique<TreeEngine>(*this);
  return *tree_;
}

std::shared_ptr<const MirrorContext> make_context(const CIGeometry& g, int K_q, int max_points) {
  return std::make_shared<const MirrorContext>(g, K_q, max_points);
}

}  // namespace mirrorgw
