#ifndef ORDLAB_HOMOGENEITY_HPP
#define ORDLAB_HOMOGENEITY_HPP

#include <memory>
#include <optional>

#include "ordlab/poset.hpp"

namespace ordlab {

struct InvalidChainIndex : std::runtime_error {
  explicit InvalidChainIndex(std::size_t i)
      : std::runtime_error("no chain with index " + std::to_string(i)) {}
};

struct NotAChain : std::runtime_error {
  NotAChain() : std::runtime_error("element set is not a chain") {}
};

struct NotAscending : std::runtime_error {
  NotAscending()
      : std::runtime_error("sequence is not ascending in listed order") {}
};

struct NoCounterexamplesInWindow : std::runtime_error {
  NoCounterexamplesInWindow()
      : std::runtime_error("no counterexample found in the window") {}
};

// A finite piece of a chain.  When `ascending` is set the listed order
// is <_P-increasing (not necessarily id-increasing).
struct ChainPrefix {
  std::vector<Id> elements;
  bool ascending = false;
};

// Search programs over a chain decomposition.  Base is an explicit
// sequence; Ladder(t, i) dominates t's outputs from inside chain i,
// each output incomparable with some t-output; LadderW2 additionally
// requires the incomparability witness to come after the current index.
class ProgramTerm {
 public:
  enum class Shape { Base, Ladder, LadderW2 };

  static ProgramTerm base(ChainPrefix prefix);
  static ProgramTerm ladder(ProgramTerm inner, std::size_t chain);
  static ProgramTerm ladder_w2(ProgramTerm inner);

  Shape shape() const { return shape_; }
  const ChainPrefix& prefix() const { return prefix_; }
  const ProgramTerm& inner() const { return *inner_; }
  std::size_t chain() const { return chain_; }

 private:
  ProgramTerm() = default;

  Shape shape_ = Shape::Base;
  ChainPrefix prefix_;
  std::shared_ptr<const ProgramTerm> inner_;
  std::size_t chain_ = 0;
};

// Found(value) or Exhausted(steps): running out of budget or window is
// a result, not an error.  Found values are stable under larger
// budgets because the search order is deterministic.
struct EvalResult {
  std::optional<Id> value;
  std::size_t steps = 0;  // comparisons spent by the whole call

  bool found() const { return value.has_value(); }
};

// Evaluates t at index m, spending at most `budget` order comparisons
// across the whole recursive computation.
EvalResult eval(const Poset& p, const ChainFamily& chains,
                const ProgramTerm& t, std::size_t m, std::size_t budget);

// Default budget schedule for index m.
inline std::size_t default_budget(std::size_t m) { return 1000 * (m + 1); }

enum class Verdict { Zero, AtLeastM, Open, Violating };

// Finite-window reading of "comparable with none or infinitely many":
// each element of the window is comparable with zero, at least m, or
// at least the chain's current end (Open); anything else is Violating.
struct HomogeneityCertificate {
  std::size_t m = 0;
  std::size_t window = 0;
  ChainPrefix chain;
  std::vector<Verdict> verdicts;      // indexed by element id
  std::vector<std::size_t> counts;    // comparability counts

  std::vector<Id> violating() const;
  bool passes() const { return violating().empty(); }
};

HomogeneityCertificate verify_prefix_homogeneity(const Poset& p,
                                                 const ChainPrefix& chain,
                                                 std::size_t m,
                                                 std::size_t window);

// Least-id element above some a_n and incomparable with every listed
// later element; the returned index n is the largest with q >_P a_n.
// nullopt means none in the window, which proves nothing.
struct Counterexample {
  Id element;
  std::size_t tail_index;
};
std::optional<Counterexample> find_counterexample(const Poset& p,
                                                  const ChainPrefix& A,
                                                  std::size_t window);

// The chain receiving the most counterexample witnesses in the window,
// ties to the lowest index.
std::optional<std::size_t> counterexample_target_chain(
    const Poset& p, const ChainFamily& chains, const ChainPrefix& A,
    std::size_t window);

// Ascending sequence of least-id counterexamples to the tails of A,
// restricted to the most-hit chain and thinned to be <_P-increasing.
struct CxSequence {
  ChainPrefix sequence;
  std::size_t chain = 0;
};
CxSequence build_cx_sequence(const Poset& p, const ChainFamily& chains,
                             const ChainPrefix& A, std::size_t window);

}  // namespace ordlab

#endif
