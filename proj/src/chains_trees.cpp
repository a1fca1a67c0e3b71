#include "ordlab/chains_trees.hpp"

#include <algorithm>

#include "ordlab/width.hpp"

namespace ordlab {

FiniteTree::FiniteTree(std::vector<std::vector<std::size_t>> nodes) {
  for (auto& path : nodes) nodes_.insert(std::move(path));
  for (const auto& path : nodes_) {
    if (path.empty()) continue;
    std::vector<std::size_t> parent(path.begin(), path.end() - 1);
    if (!nodes_.count(parent))
      throw ParseError("tree nodes are not prefix-closed");
  }
}

std::vector<std::size_t> FiniteTree::children(
    const std::vector<std::size_t>& path) const {
  std::vector<std::size_t> out;
  // Children are the immediate successors of `path` in the sorted node
  // set; scan from the first extension onward.
  std::vector<std::size_t> probe = path;
  probe.push_back(0);
  for (auto it = nodes_.lower_bound(probe); it != nodes_.end(); ++it) {
    if (it->size() < path.size() + 1 ||
        !std::equal(path.begin(), path.end(), it->begin()))
      break;
    if (it->size() == path.size() + 1) out.push_back(it->back());
  }
  return out;
}

std::size_t FiniteTree::depth() const {
  std::size_t d = 0;
  for (const auto& path : nodes_) d = std::max(d, path.size());
  return d;
}

std::vector<Id> greedy_maximal_chain(const Poset& p, std::size_t N,
                                     ScanMode mode) {
  std::vector<Id> out;
  for (Id e = 0; e < N; ++e) {
    const bool fits = std::all_of(out.begin(), out.end(), [&](Id q) {
      return mode == ScanMode::Chain ? p.comp(e, q) : p.incomp(e, q);
    });
    if (fits) out.push_back(e);
  }
  return out;
}

std::vector<Id> extend_chain_maximal(const Poset& p, const std::vector<Id>& C,
                                     std::size_t N) {
  if (classify_set(p, C) != SetKind::Chain) throw NotAChain();
  for (Id c : C)
    if (c >= N) throw OutOfRange("chain element outside the window");

  std::vector<Id> out;
  for (Id e = 0; e < N; ++e) {
    const bool in_q = std::all_of(C.begin(), C.end(),
                                  [&](Id c) { return p.comp(e, c); });
    if (!in_q) continue;
    // Everything kept so far is comparable with all of C, so the scan
    // keeps every element of C and the result extends it.
    const bool fits = std::all_of(out.begin(), out.end(),
                                  [&](Id q) { return p.comp(e, q); });
    if (fits) out.push_back(e);
  }
  return out;
}

std::vector<std::size_t> ascending_run_lengths(const FinitePoset& w) {
  const std::size_t n = w.n();
  std::vector<std::size_t> up(n, 1);
  for (std::size_t i = n; i-- > 0;)
    for (Id q = i + 1; q < n; ++q)
      if (w.strictly_below(i, q)) up[i] = std::max(up[i], up[q] + 1);
  return up;
}

std::vector<std::size_t> descending_run_lengths(const FinitePoset& w) {
  const std::size_t n = w.n();
  std::vector<std::size_t> down(n, 1);
  for (std::size_t i = n; i-- > 0;)
    for (Id q = i + 1; q < n; ++q)
      if (w.strictly_below(q, i)) down[i] = std::max(down[i], down[q] + 1);
  return down;
}

MaxlessChain maxless_chain(const Poset& p, std::size_t N,
                           std::size_t lookahead) {
  const FinitePoset trunc = p.truncate(N);
  const std::vector<std::size_t> up = ascending_run_lengths(trunc);

  MaxlessChain out;
  out.lookahead = lookahead;
  for (Id e = 0; e < N; ++e) {
    if (up[e] <= lookahead + 1) continue;  // run above e is too short
    const bool fits =
        std::all_of(out.elements.begin(), out.elements.end(),
                    [&](Id q) { return p.comp(e, q); });
    if (fits) out.elements.push_back(e);
  }
  return out;
}

Ordering kb_compare(const TreeNode& s, const TreeNode& t) {
  const std::size_t common = std::min(s.path.size(), t.path.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (t.path[i] < s.path[i]) return Ordering::Below;
    if (s.path[i] < t.path[i]) return Ordering::Above;
  }
  // No disagreement: the longer node properly extends the shorter one.
  if (t.path.size() > s.path.size()) return Ordering::Below;
  if (s.path.size() > t.path.size()) return Ordering::Above;
  return Ordering::Equal;
}

TreeNode leftmost_path(const FiniteTree& t, std::size_t depth) {
  // Mark every node that extends to the target depth.
  std::set<std::vector<std::size_t>> extendable;
  for (const auto& path : t.nodes()) {
    if (path.size() != depth) continue;
    std::vector<std::size_t> prefix = path;
    while (true) {
      if (!extendable.insert(prefix).second) break;
      if (prefix.empty()) break;
      prefix.pop_back();
    }
  }
  if (!extendable.count({})) throw NoDeepPath(depth);

  TreeNode out;
  while (out.path.size() < depth) {
    bool stepped = false;
    for (std::size_t m : t.children(out.path)) {
      out.path.push_back(m);
      if (extendable.count(out.path)) {
        stepped = true;
        break;
      }
      out.path.pop_back();
    }
    if (!stepped) throw NoDeepPath(depth);  // unreachable: root extends
  }
  return out;
}

FiniteTree discrete_descent_tree(const FinitePoset& p, Id root) {
  if (root >= p.n()) throw OutOfRange("root outside the poset");

  FiniteTree tree;
  tree.nodes_.insert(std::vector<std::size_t>{});
  std::vector<std::vector<std::size_t>> frontier{{root}};
  while (!frontier.empty()) {
    const std::vector<std::size_t> node = std::move(frontier.back());
    frontier.pop_back();
    tree.nodes_.insert(node);
    const Id last = node.back();
    for (Id y = 0; y < p.n(); ++y) {
      if (!p.strictly_below(y, last)) continue;
      bool discrete = true;
      for (Id z = 0; z < p.n() && discrete; ++z)
        if (p.strictly_below(y, z) && p.strictly_below(z, last))
          discrete = false;
      if (!discrete) continue;
      std::vector<std::size_t> child = node;
      child.push_back(y);
      frontier.push_back(std::move(child));
    }
  }
  return tree;
}

bool is_ideal(const FinitePoset& p, const std::vector<Id>& S) {
  std::vector<uint8_t> in(p.n(), 0);
  for (Id s : S) {
    if (s >= p.n()) throw OutOfRange("set element outside the poset");
    in[s] = 1;
  }
  for (Id s : S)
    for (Id q = 0; q < p.n(); ++q)
      if (p.strictly_below(q, s) && !in[q]) return false;
  for (Id a : S)
    for (Id b : S) {
      bool bounded = false;
      for (Id r : S)
        if ((a == r || p.below(a, r)) && (b == r || p.below(b, r))) {
          bounded = true;
          break;
        }
      if (!bounded) return false;
    }
  return true;
}

IdealFamily essential_ideal_decomposition(const FinitePoset& p,
                                          std::size_t antichain_bound) {
  const auto widest = max_antichain(p);
  if (widest.size() > antichain_bound)
    throw AntichainBoundExceeded(widest.size(), antichain_bound);

  // One ideal per cofinal (maximal) element: its down-set.
  IdealFamily fam;
  for (Id m = 0; m < p.n(); ++m) {
    bool maximal = true;
    for (Id q = 0; q < p.n() && maximal; ++q)
      if (p.strictly_below(m, q)) maximal = false;
    if (!maximal) continue;
    std::vector<Id> down;
    for (Id q = 0; q < p.n(); ++q)
      if (q == m || p.strictly_below(q, m)) down.push_back(q);
    fam.ideals.push_back(std::move(down));
  }

  // Prune redundant ideals, smallest first, keeping the family a cover.
  std::stable_sort(fam.ideals.begin(), fam.ideals.end(),
                   [](const auto& a, const auto& b) {
                     return a.size() < b.size();
                   });
  for (std::size_t i = 0; i < fam.ideals.size();) {
    std::vector<uint8_t> covered(p.n(), 0);
    for (std::size_t j = 0; j < fam.ideals.size(); ++j) {
      if (j == i) continue;
      for (Id e : fam.ideals[j]) covered[e] = 1;
    }
    const bool redundant =
        std::all_of(covered.begin(), covered.end(), [](uint8_t c) { return c; });
    if (redundant)
      fam.ideals.erase(fam.ideals.begin() + i);
    else
      ++i;
  }
  std::stable_sort(fam.ideals.begin(), fam.ideals.end());

  // Sanity: a cover of ideals where each keeps a private element.
  std::vector<std::size_t> owners(p.n(), 0);
  for (const auto& ideal : fam.ideals) {
    if (!is_ideal(p, ideal))
      throw std::logic_error("decomposition produced a non-ideal");
    for (Id e : ideal) ++owners[e];
  }
  for (Id e = 0; e < p.n(); ++e)
    if (owners[e] == 0) throw std::logic_error("decomposition is not a cover");
  for (const auto& ideal : fam.ideals) {
    const bool priv = std::any_of(ideal.begin(), ideal.end(),
                                  [&](Id e) { return owners[e] == 1; });
    if (!priv) throw std::logic_error("decomposition kept an inessential ideal");
  }
  return fam;
}

}  // namespace ordlab
