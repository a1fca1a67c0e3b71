#ifndef ORDLAB_POSET_HPP
#define ORDLAB_POSET_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordlab {

// Elements are enumeration indices, dense from 0.  The ambient natural
// order on ids doubles as the <_N order that several constructions
// quantify over.
using Id = std::size_t;

enum class Ordering { Below, Above, Incomparable, Equal };

constexpr Ordering mirror(Ordering o) {
  switch (o) {
    case Ordering::Below: return Ordering::Above;
    case Ordering::Above: return Ordering::Below;
    default: return o;
  }
}

inline bool comparable(Ordering o) { return o != Ordering::Incomparable; }

enum class SetKind { Chain, Antichain, Neither };

struct OutOfRange : std::out_of_range {
  explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct OracleLimitExceeded : std::runtime_error {
  explicit OracleLimitExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

struct CycleError : std::runtime_error {
  explicit CycleError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class FinitePoset;

// A poset presented as an element enumeration plus a decidable, pure
// comparability rule.  Finite posets report their size; streamed
// families answer for every pair of ids, forever.
class Poset {
 public:
  virtual ~Poset() = default;

  virtual Ordering compare(Id a, Id b) const = 0;

  // Number of elements for finite posets, nullopt for streamed ones.
  virtual std::optional<std::size_t> size() const { return std::nullopt; }

  bool below(Id a, Id b) const { return compare(a, b) == Ordering::Below; }
  bool above(Id a, Id b) const { return compare(a, b) == Ordering::Above; }
  bool incomp(Id a, Id b) const {
    return compare(a, b) == Ordering::Incomparable;
  }
  bool comp(Id a, Id b) const { return comparable(compare(a, b)); }

  FinitePoset truncate(std::size_t n) const;
};

// Finite strict partial order stored as an n x n relation matrix.
// Always transitively closed and cycle-checked on construction.
class FinitePoset final : public Poset {
 public:
  FinitePoset() = default;

  // `pairs` are arbitrary a < b assertions; the closure is computed and
  // cycles rejected.
  FinitePoset(std::size_t n, const std::vector<std::pair<Id, Id>>& pairs);

  static FinitePoset from_closed_matrix(std::size_t n,
                                        std::vector<uint8_t> strict_below);

  Ordering compare(Id a, Id b) const override;
  std::optional<std::size_t> size() const override { return n_; }
  std::size_t n() const { return n_; }

  bool strictly_below(Id a, Id b) const { return below_[a * n_ + b] != 0; }

  std::vector<std::pair<Id, Id>> cover_pairs() const;

 private:
  void close_and_check();

  std::size_t n_ = 0;
  std::vector<uint8_t> below_;  // below_[a*n+b] == 1  iff  a <_P b
};

// View of a poset with the order relation reversed.  Shares the
// underlying poset by reference; the caller keeps it alive.
class ReversedPoset final : public Poset {
 public:
  explicit ReversedPoset(const Poset& base) : base_(base) {}
  Ordering compare(Id a, Id b) const override {
    return mirror(base_.compare(a, b));
  }
  std::optional<std::size_t> size() const override { return base_.size(); }

 private:
  const Poset& base_;
};

// Chain iff pairwise comparable, Antichain iff pairwise incomparable.
// Empty sets and singletons report Chain (the vacuous reading).
SetKind classify_set(const Poset& p, const std::vector<Id>& elems);

// A disjoint partition of (a prefix of) a poset into chains.
struct ChainFamily {
  std::size_t k = 0;                   // number of chain classes
  std::vector<std::vector<Id>> chains; // each id-sorted

  std::optional<std::size_t> chain_of(Id e) const;
  std::size_t assigned_count() const;
};

}  // namespace ordlab

#endif
