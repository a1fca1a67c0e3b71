#ifndef ORDLAB_WIDTH_HPP
#define ORDLAB_WIDTH_HPP

#include "ordlab/poset.hpp"

namespace ordlab {

// Minimum chain cover of a finite poset, computed from a maximum
// matching in the bipartite comparability graph (left copy u -- right
// copy v wired when u < v).  Uncovered vertices on both sides name a
// maximum antichain, so the cover size equals the width.
struct ChainCover {
  std::vector<std::vector<Id>> chains;  // each sorted along <_P
  std::vector<Id> antichain;            // maximum antichain witness, id-sorted
};

ChainCover dilworth_offline(const FinitePoset& p);

// Width as |maximum antichain|, with a matching-free exhaustive search
// available as an independent oracle for small instances.
std::size_t width_exact(const FinitePoset& p);
std::size_t width_exhaustive(const FinitePoset& p, std::size_t max_n = 24);

// Largest antichain witness (from the matching construction).
std::vector<Id> max_antichain(const FinitePoset& p);

// Longest chain (height) by DP over a topological order, with witness.
std::vector<Id> longest_chain(const FinitePoset& p);

}  // namespace ordlab

#endif
