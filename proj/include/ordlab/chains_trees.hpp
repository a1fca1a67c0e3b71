#ifndef ORDLAB_CHAINS_TREES_HPP
#define ORDLAB_CHAINS_TREES_HPP

#include <set>

#include "ordlab/homogeneity.hpp"
#include "ordlab/poset.hpp"

namespace ordlab {

struct NoDeepPath : std::runtime_error {
  explicit NoDeepPath(std::size_t depth)
      : std::runtime_error("tree has no node at depth " +
                           std::to_string(depth)) {}
};

struct AntichainBoundExceeded : std::runtime_error {
  AntichainBoundExceeded(std::size_t found, std::size_t bound)
      : std::runtime_error("antichain of size " + std::to_string(found) +
                           " exceeds the configured bound " +
                           std::to_string(bound)) {}
};

// A node is just its path from the root; the parent is the path minus
// its last entry.
struct TreeNode {
  std::vector<std::size_t> path;
};

// Prefix-closed finite set of paths.  Construction rejects inputs whose
// closure is incomplete rather than silently repairing them.
class FiniteTree {
 public:
  FiniteTree() = default;
  explicit FiniteTree(std::vector<std::vector<std::size_t>> nodes);

  bool contains(const std::vector<std::size_t>& path) const {
    return nodes_.count(path) != 0;
  }
  // Child labels of `path` in increasing order.
  std::vector<std::size_t> children(const std::vector<std::size_t>& path) const;
  std::size_t size() const { return nodes_.size(); }
  std::size_t depth() const;  // length of the longest path
  const std::set<std::vector<std::size_t>>& nodes() const { return nodes_; }

 private:
  friend FiniteTree discrete_descent_tree(const FinitePoset&, Id);
  std::set<std::vector<std::size_t>> nodes_;
};

enum class ScanMode { Chain, Antichain };

// One pass over ids 0..N-1, keeping an element when it is comparable
// (resp. incomparable) with everything kept so far.  The result is
// maximal in the window: an element skipped at its turn stays skippable.
std::vector<Id> greedy_maximal_chain(const Poset& p, std::size_t N,
                                     ScanMode mode = ScanMode::Chain);

// Extends the chain C to a chain maximal within the window by running
// the greedy scan inside the set of elements comparable with all of C.
std::vector<Id> extend_chain_maximal(const Poset& p, const std::vector<Id>& C,
                                     std::size_t N);

// Per-element run lengths inside a window order: the number of
// elements in the longest chain that starts at e and moves strictly
// up (resp. down) while only visiting later ids.  Moving forward in id
// order is what lets a window tell an order that keeps going from one
// whose ascents or descents are already spent.
std::vector<std::size_t> ascending_run_lengths(const FinitePoset& window_order);
std::vector<std::size_t> descending_run_lengths(const FinitePoset& window_order);

// "No maximum" is not decidable from a window, so membership uses a
// lookahead surrogate: an element qualifies when some ascending chain
// of more than `lookahead` elements sits strictly above it in the
// window.  The depth used is recorded in the result.
struct MaxlessChain {
  std::vector<Id> elements;
  std::size_t lookahead = 0;
};
MaxlessChain maxless_chain(const Poset& p, std::size_t N,
                           std::size_t lookahead);

// Kleene-Brouwer order: t below s when t properly extends s or t is to
// the left of s at the first disagreement.  Total on any node set.
Ordering kb_compare(const TreeNode& s, const TreeNode& t);

// Lexicographically least path of length `depth`, found by repeatedly
// taking the least child that still extends to full depth.
TreeNode leftmost_path(const FiniteTree& t, std::size_t depth);

// All descending sequences from `root` in which no poset element sits
// strictly between consecutive entries.  Sibling sets are antichains.
FiniteTree discrete_descent_tree(const FinitePoset& p, Id root);

// An ideal is a downward-closed, upward-directed subset.
bool is_ideal(const FinitePoset& p, const std::vector<Id>& S);

struct IdealFamily {
  std::vector<std::vector<Id>> ideals;  // each sorted by id
};

// Covers the poset by ideals (one per cofinal element), then prunes,
// smallest first, any ideal whose removal keeps the cover intact.  In
// the result every ideal owns an element no other ideal contains.
IdealFamily essential_ideal_decomposition(const FinitePoset& p,
                                          std::size_t antichain_bound = 32);

}  // namespace ordlab

#endif
