#include <algorithm>
#include <memory>
#include <numeric>

#include "mirrorgw/errors.hpp"
#include "mirrorgw/structconst.hpp"

namespace mirrorgw {

namespace {

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

int floor_mod(int x, int n) {
  int r = x % n;
  return r < 0 ? r + n : r;
}

// A rooted subtree hanging off an edge (or the whole tree for the root).
struct Node {
  std::vector<int> marks;
  std::vector<std::shared_ptr<const Node>> kids;
  std::string canonical;
};
using NodePtr = std::shared_ptr<const Node>;

std::string encode(const std::vector<int>& marks, std::vector<NodePtr>& kids) {
  std::sort(kids.begin(), kids.end(), [](const NodePtr& x, const NodePtr& y) { return x->canonical < y->canonical; });
  std::string s = "(";
  for (size_t i = 0; i < marks.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(marks[i] + 1);
  }
  for (const auto& k : kids) s += k->canonical;
  return s + ")";
}

std::vector<int> members(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; mask >> i; ++i) {
    if ((mask >> i) & 1u) out.push_back(i);
  }
  return out;
}

class TreeBuilder {
 public:
  // Calls f with every vertex-rooted structure on `mask` whose top vertex has
  // `extra` additional incident edges (1 for a subtree, 0 for the whole tree) and
  // carries all marks in `forced`.
  void for_each_node(unsigned mask, unsigned forced, int extra, const std::function<void(const NodePtr&)>& f) {
    unsigned free_marks = mask & ~forced;
    // Enumerate the subset A of free marks placed at this vertex.
    for (unsigned sub = free_marks;; sub = (sub - 1) & free_marks) {
      unsigned at_vertex = sub | forced;
      unsigned rest = mask & ~at_vertex;
      std::vector<int> marks = members(at_vertex);
      std::vector<int> rest_members = members(rest);
      int here = static_cast<int>(marks.size()) + extra;
      for (int k = std::max(0, 3 - here); k <= static_cast<int>(rest_members.size()); ++k) {
        if (k == 0 && !rest_members.empty()) continue;
        if (k == 0) {
          std::vector<NodePtr> none;
          auto node = std::make_shared<Node>();
          node->marks = marks;
          node->canonical = encode(marks, none);
          f(node);
          continue;
        }
        for_each_set_partition(rest_members, k, [&](const std::vector<std::vector<int>>& blocks) {
          std::vector<const std::vector<NodePtr>*> lists;
          for (const auto& block : blocks) {
            unsigned bm = 0;
            for (int x : block) bm |= 1u << x;
            const auto& list = subtrees(bm);
            if (list.empty()) return;
            lists.push_back(&list);
          }
          std::vector<size_t> idx(lists.size(), 0);
          while (true) {
            std::vector<NodePtr> kids;
            for (size_t i = 0; i < lists.size(); ++i) kids.push_back((*lists[i])[idx[i]]);
            auto node = std::make_shared<Node>();
            node->marks = marks;
            node->canonical = encode(marks, kids);
            node->kids = std::move(kids);
            f(node);
            size_t j = 0;
            while (j < idx.size() && ++idx[j] == lists[j]->size()) idx[j++] = 0;
            if (j == idx.size()) break;
          }
        });
      }
      if (sub == 0) break;
    }
  }

  const std::vector<NodePtr>& subtrees(unsigned mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::vector<NodePtr> out;
    for_each_node(mask, 0u, 1, [&](const NodePtr& node) { out.push_back(node); });
    return memo_.emplace(mask, std::move(out)).first->second;
  }

 private:
  std::map<unsigned, std::vector<NodePtr>> memo_;
};

void flatten(const NodePtr& node, int parent, MarkedTree& tree) {
  int v = tree.num_vertices();
  tree.parent.push_back(parent);
  tree.children.emplace_back();
  tree.marks.push_back(node->marks);
  if (parent >= 0) tree.children[parent].push_back(v);
  for (int s : node->marks) tree.eta[s] = v;
  for (const auto& k : node->kids) flatten(k, v, tree);
}

}  // namespace

int MarkedTree::valence(int v) const {
  return static_cast<int>(marks[v].size() + children[v].size()) + (parent[v] >= 0 ? 1 : 0);
}

std::vector<std::pair<int, int>> MarkedTree::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 1; v < num_vertices(); ++v) out.emplace_back(parent[v], v);
  return out;
}

void for_each_trivalent_tree(int N, const std::function<void(const MarkedTree&)>& f) {
  if (N < 3) throw PreconditionViolated("trivalent trees need N >= 3");
  if (N > 30) throw PreconditionViolated("too many marks for tree enumeration");
  TreeBuilder builder;
  unsigned all = (N == 32) ? ~0u : ((1u << N) - 1u);
  builder.for_each_node(all, 1u << (N - 1), 0, [&](const NodePtr& root) {
    MarkedTree tree;
    tree.num_marks = N;
    tree.eta.assign(static_cast<size_t>(N), -1);
    flatten(root, -1, tree);
    tree.canonical = root->canonical;
    f(tree);
  });
}

std::vector<MarkedTree> enumerate_trivalent_trees(int N) {
  std::vector<MarkedTree> out;
  for_each_trivalent_tree(N, [&](const MarkedTree& t) { out.push_back(t); });
  std::sort(out.begin(), out.end(), [](const MarkedTree& x, const MarkedTree& y) { return x.canonical < y.canonical; });
  return out;
}

BigInt tree_weight(const MarkedTree& tree) {
  BigInt w = 1;
  for (int v = 0; v < tree.num_vertices(); ++v) w *= factorial(tree.excess(v));
  return w;
}

TreeEngine::TreeEngine(const MirrorContext& ctx) : ctx_(ctx) {}

const std::vector<MarkedTree>& TreeEngine::trees(int N) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = trees_.find(N);
  if (it != trees_.end()) return it->second;
  return trees_.emplace(N, enumerate_trivalent_trees(N)).first->second;
}

BigRational TreeEngine::value(const std::vector<int>& p, const std::vector<int>& b, int d) {
  const CIGeometry& g = ctx_.geometry();
  int N = static_cast<int>(p.size());
  if (N < 3 || static_cast<int>(b.size()) != N) throw PreconditionViolated("tree sum needs N >= 3 and |p| = |b|");
  for (int x : p) {
    if (x < g.l || x >= g.n) throw HypothesisViolated("tree sum needs l <= p_s < n");
  }
  SCKey key{p, b, d, 0};
  if (d < 0 || !satisfies_support(g, key)) return 0;
  if (d > ctx_.q_order()) throw PrecisionExceeded("degree beyond the context truncation order");
  BigRational sum = 0;
  for (const auto& tree : trees(N)) sum += tree_contribution(tree, p, b, d);
  return sum;
}

BigRational TreeEngine::tree_contribution(const MarkedTree& tree, const std::vector<int>& p, const std::vector<int>& b,
                                          int d) {
  const CIGeometry& g = ctx_.geometry();
  const int n = g.n, l = g.l, nu = g.nu;
  const int K = ctx_.q_order();
  const int V = tree.num_vertices();
  const PhiFamilies& fam = ctx_.phi();
  std::vector<int> excess(static_cast<size_t>(V));
  for (int v = 0; v < V; ++v) excess[v] = tree.excess(v);
  std::vector<int> p_hat(p.size());
  for (size_t s = 0; s < p.size(); ++s) p_hat[s] = hat_decompose(g, p[s]).p_hat;
  int sign_b = total(b) % 2 ? -1 : 1;

  // Per-vertex factor of the tree sum before taking the q-coefficient.
  auto vertex_factor = [&](int v, const std::vector<int>& pe, const std::vector<int>& be) {
    struct Item {
      int p;
      int shift;  // Phi index = budget + shift
      int min_budget;
      int kind;   // 0 mark, 1 child edge, 2 parent edge
      int child;
    };
    std::vector<Item> items;
    for (int s : tree.marks[v]) items.push_back({p_hat[s], -b[s], b[s], 0, -1});
    for (int c : tree.children[v]) items.push_back({hat_decompose(g, pe[c]).p_hat, 1 + be[c], 0, 1, c});
    if (v > 0) items.push_back({pe[v], -be[v], be[v], 2, -1});
    int m = excess[v];
    QSeries sum(K);
    for (int weight = 0; weight <= m; ++weight) {
      for (const auto& c : weighted_partitions(weight)) {
        const QSeries& Pmc = ctx_.Phi_m_c(m, c);
        for_each_composition(m - weight, static_cast<int>(items.size()), [&](const std::vector<int>& budget) {
          QSeries term = Pmc;
          BigRational scalar = 1;
          for (size_t i = 0; i < items.size(); ++i) {
            if (budget[i] < items[i].min_budget) return;
            term *= fam.Phi_pb(items[i].p, budget[i] + items[i].shift);
            scalar /= BigRational(factorial(budget[i]));
          }
          sum += term * scalar;
        });
      }
    }
    if (sum.is_zero()) return sum;
    sum *= pow(ctx_.Phi0_inverse(), static_cast<long>(items.size()));
    for (int c : tree.children[v]) {
      if (hat_decompose(g, pe[c]).t_p) sum *= ctx_.L_pow_n(1);
    }
    if (v > 0) sum *= ctx_.I0_squared() / ctx_.L_pow_n(1);
    return sum;
  };

  BigRational result = 0;
  auto run_degrees = [&](const std::vector<int>& dv) {
    // dv is empty in the Calabi-Yau case, where the constraints do not see the degrees.
    std::vector<int> be(static_cast<size_t>(V), 0);
    std::vector<int> pe(static_cast<size_t>(V), 0);
    std::function<void(int)> choose = [&](int v) {
      if (v < V) {
        for (int x = 0; x <= excess[v]; ++x) {
          be[v] = x;
          choose(v + 1);
        }
        return;
      }
      // Solve the vertex constraints from the leaves towards the root.
      std::vector<int> tv(static_cast<size_t>(V), 0);
      for (int u = V - 1; u >= 0; --u) {
        int S = 0;
        for (int s : tree.marks[u]) S += p_hat[s] + b[s];
        for (int c : tree.children[u]) S += hat_decompose(g, pe[c]).p_hat - 1 - be[c];
        int du = dv.empty() ? 0 : dv[u];
        int rhs = n - 3 + (excess[u] + 2) * (l + 1) + nu * du - S;
        if (u > 0) {
          int x = rhs - be[u];
          pe[u] = floor_mod(x, n);
          tv[u] = (pe[u] - x) / n;
        } else {
          if (floor_mod(rhs, n) != 0) return;
          tv[u] = -rhs / n;
        }
      }
      int twist = 0;
      for (int u = 1; u < V; ++u) twist += hat_decompose(g, pe[u]).t_p;
      for (int u = 0; u < V; ++u) twist += tv[u];
      if (twist != 0) throw IdentityViolation("vertex twists do not cancel in the tree sum");
      int sign = sign_b;
      for (int u = 1; u < V; ++u) {
        if (be[u] % 2) sign = -sign;
      }
      if (dv.empty()) {
        QSeries prod = QSeries::one(K);
        for (int u = 0; u < V; ++u) prod *= vertex_factor(u, pe, be);
        result += sign * prod.coeff(d);
      } else {
        BigRational prod = 1;
        for (int u = 0; u < V && prod != 0; ++u) prod *= vertex_factor(u, pe, be).coeff(dv[u]);
        result += sign * prod;
      }
    };
    choose(1);
  };
  if (nu == 0) {
    run_degrees({});
  } else {
    for_each_composition(d, V, [&](const std::vector<int>& dv) { run_degrees(dv); });
  }
  return result;
}

BigRational sc_tree(const MirrorContext& ctx, const std::vector<int>& p, const std::vector<int>& b, int d) {
  return ctx.tree_engine().value(p, b, d);
}

}  // namespace mirrorgw
