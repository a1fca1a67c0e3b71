#ifndef ORDLAB_DECOMPOSITION_HPP
#define ORDLAB_DECOMPOSITION_HPP

#include <optional>

#include "ordlab/poset.hpp"

namespace ordlab {

struct WidthPromiseViolated : std::runtime_error {
  std::vector<Id> antichain;  // k+1 pairwise incomparable elements
  explicit WidthPromiseViolated(std::vector<Id> witness)
      : std::runtime_error("width promise violated: antichain of size " +
                           std::to_string(witness.size())),
        antichain(std::move(witness)) {}
};

struct HeightPromiseViolated : std::runtime_error {
  std::vector<Id> chain;  // k+1 mutually comparable elements
  explicit HeightPromiseViolated(std::vector<Id> witness)
      : std::runtime_error("height promise violated: chain of size " +
                           std::to_string(witness.size())),
        chain(std::move(witness)) {}
};

struct EmptyInput : std::runtime_error {
  EmptyInput() : std::runtime_error("empty input sequence") {}
};

// Online chain partitioner for streams promised to have width <= k.
// The strategy is a recursive width reduction: each level forwards its
// stream downward, diverting any element that completes a maximum-size
// antichain among the elements it has forwarded so far.  The forwarded
// residue at each level then has strictly smaller width, and the bottom
// level is a single chain.  Diverted elements go to a per-level pool of
// chains filled first-fit.  Chain indices are global and allocated in
// first-use order, which makes assignments prefix-stable.
class OnlinePartitioner {
 public:
  OnlinePartitioner(const Poset& p, std::size_t k);

  // Elements must arrive in id order starting from 0.
  void push(Id e);

  ChainFamily assignment() const;
  std::size_t chains_used() const { return next_chain_; }

  // (5^k - 1) / 4, the classical online bound for width k.
  static std::size_t chain_bound(std::size_t k);

 private:
  struct Level {
    std::vector<Id> forwarded;           // residue passed to the next level
    std::vector<std::vector<Id>> pool;   // diverted elements, first-fit
    std::vector<std::size_t> pool_ids;   // global index of each pool chain
  };

  void place(Id e, std::size_t level);
  void divert(Id e, std::size_t level);
  void audit_width(Id upto) const;

  const Poset& p_;
  std::size_t k_;
  std::vector<Level> levels_;
  std::vector<Id> bottom_;           // the final width-1 residue
  std::size_t bottom_id_ = ~std::size_t{0};
  std::size_t next_chain_ = 0;
  std::size_t pushed_ = 0;
  std::vector<std::size_t> chain_of_;  // per element, global chain index
};

// Feeds ids [0, N) through an OnlinePartitioner.
ChainFamily online_partition(const Poset& p, std::size_t k, std::size_t N);

// Minimum chain cover of a finite poset, repackaged as a ChainFamily.
ChainFamily offline_partition(const FinitePoset& p);

// Largest class of the online decomposition; length >= N / chains_used
// by pigeonhole.
std::vector<Id> chain_from_width(const Poset& p, std::size_t k,
                                 std::size_t N);

// For windows promised to have no chain longer than k: colors each
// element by the pair (longest chain strictly below it, longest chain
// strictly above it) among id-smaller elements, and returns the largest
// color class, an antichain of size >= N / k^2.
std::vector<Id> antichain_from_height(const Poset& p, std::size_t k,
                                      std::size_t N);

enum class Direction { Ascending, Descending };

struct MonotoneRun {
  Direction direction = Direction::Ascending;
  std::vector<Id> elements;  // id-increasing and <_P-monotone
};

// Greedy monotone subsequence of a chain given in id order.  The
// ascending pass anchors at the element with the most successors inside
// the window (ties to the lower id) and extends greedily rightward; the
// descending pass mirrors it.  Returns the longer unless a direction
// hint is given.
MonotoneRun monotone_extract(const Poset& p, const std::vector<Id>& chain,
                             std::optional<Direction> hint = std::nullopt);

}  // namespace ordlab

#endif
