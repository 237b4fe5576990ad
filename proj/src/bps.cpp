#include "mirrorgw/bps.hpp"

#include "mirrorgw/errors.hpp"

namespace mirrorgw {

namespace {

BigRational weight(int k, int N) {
  BigRational w = 1;
  for (int i = 0; i < N - 3; ++i) w *= k;
  return w;
}

}  // namespace

BPSSeries bps_from_gw(const InvariantSeries& gw, int N) {
  if (N < 3) throw PreconditionViolated("BPS transform needs N >= 3");
  BPSSeries out;
  out.geometry = gw.geometry;
  out.c = gw.c;
  out.num_points = N;
  int D = static_cast<int>(gw.values.size()) - 1;
  out.n_values.assign(gw.values.size(), BigRational(0));
  for (int d = 1; d <= D; ++d) {
    BigRational v = gw.values[d];
    for (int k = 2; k <= d; ++k) {
      if (d % k == 0) v -= weight(k, N) * out.n_values[d / k];
    }
    out.n_values[d] = v;
  }
  return out;
}

std::vector<BigRational> gw_from_bps(const std::vector<BigRational>& n_values, int N) {
  if (N < 3) throw PreconditionViolated("BPS transform needs N >= 3");
  std::vector<BigRational> out(n_values.size(), BigRational(0));
  if (!n_values.empty()) out[0] = n_values[0];
  for (size_t d = 1; d < n_values.size(); ++d) {
    for (size_t k = 1; k <= d; ++k) {
      if (d % k == 0) out[d] += weight(static_cast<int>(k), N) * n_values[d / k];
    }
  }
  return out;
}

IntegralityReport integrality_check(const BPSSeries& bps) {
  IntegralityReport r;
  for (size_t d = 1; d < bps.n_values.size(); ++d) {
    ++r.checked;
    if (bps.n_values[d].get_den() != 1) {
      r.ok = false;
      r.first_failure = static_cast<int>(d);
      r.message = "n_" + std::to_string(d) + " = " + to_string(bps.n_values[d]) + " is not an integer";
      return r;
    }
  }
  r.message = "all " + std::to_string(r.checked) + " BPS numbers are integers";
  return r;
}

}  // namespace mirrorgw
