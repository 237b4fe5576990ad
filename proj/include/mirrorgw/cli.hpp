#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mirrorgw/series.hpp"

namespace mirrorgw {

inline constexpr const char* kVersion = "1.0.0";

// Published BPS numbers n_1, n_2, ... for primary insertions H^{c_s} on X_a.
struct PinnedBps {
  int n = 0;
  std::vector<int> a;
  std::vector<int> c;
  std::vector<std::string> bps;  // bps[d-1]
};
// Published Gromov-Witten invariant <H^{c_1}, ..., H^{c_N}>_{0,d} of the cubic threefold.
struct PinnedInvariant {
  int d = 0;
  std::vector<int> c;
  std::string value;
};
// Published structure constant c_{p,0}^{(d,0)} of the cubic threefold.
struct PinnedConstant {
  std::vector<int> p;
  int d = 0;
  std::string value;
};

// Tables 1-4 by number.
const std::vector<PinnedBps>& pinned_table(int which);
const std::vector<PinnedInvariant>& pinned_cubic_invariants();
const std::vector<PinnedConstant>& pinned_cubic_constants();

// Recomputes one pinned row to degree D and compares the degrees both sides know.
struct TableCheck {
  PinnedBps entry;
  std::vector<BigRational> gw;   // d = 0..D
  std::vector<BigRational> bps;  // d = 1..D at index d-1
  int compared = 0;
  std::vector<std::string> mismatches;
};
TableCheck check_table_entry(const PinnedBps& entry, int D);

// Command-line front end; returns 0 on success, 1 on verification failure and 2 on
// usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mirrorgw
