#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "mirrorgw/context.hpp"
#include "mirrorgw/geometry.hpp"
#include "mirrorgw/series.hpp"

namespace mirrorgw {

// Index of a structure constant c_{p,b}^{(d,t)}.
struct SCKey {
  std::vector<int> p;
  std::vector<int> b;
  int d = 0;
  int t = 0;
};

// Right-hand side (N-1)(n-2) + 2 + l of the support relation
// |p| - |b| + nu d + n t = (N-1)(n-2) + 2 + l.
int support_target(const CIGeometry& g, int N);
// True iff |b| <= N-3, b >= 0 and the support relation holds.
bool satisfies_support(const CIGeometry& g, const SCKey& key);

// Two-point seed c_{(p p'),(b b')}^{(d,t)}.
BigRational two_point_seed(const MirrorContext& ctx, int p, int pp, int b, int bp, int d, int t);

// The unique partner (p_hat, t_p) of p in [0, n).
struct HatPair {
  int p_hat = 0;
  int t_p = 0;
};
HatPair hat_decompose(const CIGeometry& g, int p);
// t_p of a tuple: the number of entries below l.
int hat_twist(const CIGeometry& g, const std::vector<int>& p);

// Degree-shifted residues [[p]]_d, [[p_hat]]_d and their carries tau_d(p), t_d(p).
struct BracketData {
  int p_bracket = 0;
  int p_hat_bracket = 0;
  int tau = 0;
  int t_small = 0;
};
BracketData bracket_decompose(const CIGeometry& g, int p, int d);

// Calls f on every partition of `elements` into exactly k nonempty blocks; blocks keep
// the order of `elements` and are listed by their first element.
void for_each_set_partition(const std::vector<int>& elements, int k,
                            const std::function<void(const std::vector<std::vector<int>>&)>& f);
// All c = (c_1, c_2, ...) with sum r c_r = weight (c[r-1] holds c_r, no trailing zeros).
const std::vector<std::vector<int>>& weighted_partitions(int weight);
// Calls f on every composition of total into `parts` nonnegative integers.
void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& f);

// Memoized evaluation of the recursion over set partitions. Entries are write-once.
class RecursiveEngine {
 public:
  explicit RecursiveEngine(const MirrorContext& ctx);

  // sum_d c_{p,b}^{(d,t)} q^d to the context's truncation order (a monomial if nu > 0).
  QSeries series(const std::vector<int>& p, const std::vector<int>& b, int t);
  BigRational value(const SCKey& key);
  size_t memo_size() const;

 private:
  QSeries compute(const std::vector<int>& p, const std::vector<int>& b, int t);
  QSeries root_factor(int m, std::vector<std::pair<int, int>> pb);

  const MirrorContext& ctx_;
  std::vector<QSeries> seed_;  // by twist t = 0, 1
  std::map<std::vector<int>, QSeries> memo_;
  std::map<std::pair<int, std::vector<std::pair<int, int>>>, QSeries> root_memo_;
  mutable std::mutex mutex_;
};

BigRational sc_recursive(const MirrorContext& ctx, const SCKey& key);

// A trivalent N-marked tree rooted at the vertex carrying the last mark. Vertices are
// numbered in preorder (vertex 0 is the root) so every child has a larger index than
// its parent; the edge towards the root is identified with its upper vertex.
struct MarkedTree {
  int num_marks = 0;
  std::vector<int> parent;                 // -1 for the root
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> marks;     // 0-based marks carried by each vertex
  std::vector<int> eta;                    // mark -> vertex
  std::string canonical;

  int num_vertices() const { return static_cast<int>(parent.size()); }
  int num_edges() const { return num_vertices() - 1; }
  int valence(int v) const;
  int excess(int v) const { return valence(v) - 3; }
  std::vector<std::pair<int, int>> edges() const;  // (parent, child)
};

void for_each_trivalent_tree(int N, const std::function<void(const MarkedTree&)>& f);
std::vector<MarkedTree> enumerate_trivalent_trees(int N);
// prod_v (val(v) - 3)!
BigInt tree_weight(const MarkedTree& tree);

// Evaluation of the tree sum for t = 0.
class TreeEngine {
 public:
  explicit TreeEngine(const MirrorContext& ctx);
  BigRational value(const std::vector<int>& p, const std::vector<int>& b, int d);
  const std::vector<MarkedTree>& trees(int N);

 private:
  BigRational tree_contribution(const MarkedTree& tree, const std::vector<int>& p, const std::vector<int>& b, int d);

  const MirrorContext& ctx_;
  std::map<int, std::vector<MarkedTree>> trees_;
  std::mutex mutex_;
};

BigRational sc_tree(const MirrorContext& ctx, const std::vector<int>& p, const std::vector<int>& b, int d);

// Closed-form specializations, used as oracles for the engines.
enum class ClosedForm { degree_zero, top_b, four_point, projective };
BigRational sc_closed_forms(const MirrorContext& ctx, const SCKey& key, ClosedForm which);

// ctilde_{p_hat}^{(d)}: sum over d in P_N(d) of prod_s ctilde_{p_s, p_s - nu d_s}^{(d_s)}
// for a tuple of already-hatted entries.
BigRational ctilde_tuple(const MirrorContext& ctx, const std::vector<int>& p_hat, int d);
// ctilde_{p,d'}^{(d,t)} from its defining coefficient extraction and from its closed form.
BigRational ctilde_pdt(const MirrorContext& ctx, int p, int dprime, int d, int t);
BigRational ctilde_pdt_closed(const MirrorContext& ctx, int p, int dprime, int d, int t);
// Ctilde_p^{(d)} entering the four-point formula.
BigRational Ctilde(const MirrorContext& ctx, int p, int d);

// Identities satisfied by the ctilde tables; each throws IdentityViolation on failure
// and returns the number of instances checked.
int check_ctilde_support(const MirrorContext& ctx);
int check_ctilde_lemmas(const MirrorContext& ctx, int max_degree);

}  // namespace mirrorgw
