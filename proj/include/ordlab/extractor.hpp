#ifndef ORDLAB_EXTRACTOR_HPP
#define ORDLAB_EXTRACTOR_HPP

#include <optional>
#include <string>

#include "ordlab/homogeneity.hpp"
#include "ordlab/poset.hpp"

namespace ordlab {

struct HypothesisViolated : std::runtime_error {
  explicit HypothesisViolated(const std::string& what)
      : std::runtime_error(what) {}
};

struct SeedNotAscending : std::runtime_error {
  SeedNotAscending()
      : std::runtime_error("seed sequence is not ascending inside one chain") {}
};

struct BudgetTooSmall : std::runtime_error {
  BudgetTooSmall()
      : std::runtime_error("search budget exhausted before a case resolved") {}
};

struct NotTwoChains : std::runtime_error {
  NotTwoChains() : std::runtime_error("expected exactly two chain classes") {}
};

struct WindowTooSmall : std::runtime_error {
  WindowTooSmall() : std::runtime_error("window too small for this strategy") {}
};

struct StabilityViolated : std::runtime_error {
  Id x;
  std::size_t changes;
  StabilityViolated(Id x_, std::size_t changes_)
      : std::runtime_error("row " + std::to_string(x_) + " changes color " +
                           std::to_string(changes_) + " times"),
        x(x_),
        changes(changes_) {}
};

struct NoAscendingSequenceFound : std::runtime_error {
  NoAscendingSequenceFound()
      : std::runtime_error("no chain produced an ascending sequence") {}
};

struct NotLinear : std::runtime_error {
  explicit NotLinear(Id a, Id b)
      : std::runtime_error("elements " + std::to_string(a) + " and " +
                           std::to_string(b) + " are incomparable") {}
};

// A finite labeled tree: vertex 0 is the root, labels live in [0, k).
struct TreeVertex {
  std::size_t parent = ~std::size_t{0};
  std::size_t label = 0;
  std::vector<std::size_t> children;  // vertex indices
};

struct LabeledTree {
  std::size_t k = 0;
  std::vector<TreeVertex> vertices;

  std::size_t level(std::size_t v) const;
  std::size_t height() const;
  // Path of labels from the root down to v (excluding the root label).
  std::vector<std::size_t> label_path(std::size_t v) const;
};

// Finds a non-leaf vertex sigma such that every child has a proper
// descendant carrying sigma's label.  Checks the shape hypotheses
// (uniform leaf depth, child labels distinct and different from the
// parent's) and walks down through failing children, lowest label
// first.
std::size_t tree_helper(const LabeledTree& t);

struct ExtractParams {
  std::size_t window = 500;
  std::size_t budget = 0;     // 0 = per-index default schedule
  std::size_t m = 10;         // homogeneity threshold
  std::size_t lookahead = 32;
};

struct RefutationWitness {
  std::vector<std::size_t> h_map;   // per-chain target of the witness scan
  std::vector<std::size_t> cycle;   // chain indices until the first repeat
};

// Everything needed to replay a run: which strategy, which node of the
// search tree, the intermediate sequences and thresholds, and the
// final chain.
struct ExtractionTranscript {
  std::string strategy;
  std::vector<std::size_t> chain_order;  // relabeling permutation
  std::vector<std::size_t> node_path;    // labels down to the chosen node
  std::vector<Id> x_seq;
  std::vector<Id> y_seq;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t trimmed = 0;               // dropped prefix length
  std::optional<RefutationWitness> refutation;
  std::vector<Id> chain;
};

struct ExtractionResult {
  ChainPrefix chain;
  HomogeneityCertificate certificate;
  ExtractionTranscript transcript;
};

// Tower strategy: grows the ladder tree over the chain decomposition,
// keeps the subtree whose programs stay window-total, and resolves
// either through a shallow leaf (return a trimmed tail of its
// sequence) or through tree_helper (merge the chosen node's sequence
// with the pointwise maximum of its children's witnesses).
ExtractionResult extract_tower(const Poset& p, const ChainFamily& chains,
                               const ChainPrefix& A,
                               const ExtractParams& params = {});

// Width-2 strategy: iterates the whole-order ladder and returns the
// diagonal of the resulting array, or a tail of the last window-total
// row when the iteration goes partial.
ExtractionResult extract_w2_diagonal(const Poset& p, const ChainPrefix& A,
                                     const ExtractParams& params = {});

// Upper-triangular coloring table over [0, N): entry (x, y) for x < y.
class ColoringTable {
 public:
  ColoringTable(std::size_t N, std::size_t colors, std::size_t stability);

  std::size_t n() const { return n_; }
  std::size_t colors() const { return colors_; }
  std::size_t stability() const { return stability_; }
  std::size_t at(std::size_t x, std::size_t y) const;
  void set(std::size_t x, std::size_t y, std::size_t color);

 private:
  std::size_t n_, colors_, stability_;
  std::vector<uint8_t> entries_;
};

struct SsrtResult {
  std::vector<std::size_t> members;
  std::size_t color = 0;
};

// Homogeneous set for a stability-bounded coloring: last-column colors
// stand in for the limit color, and members are spaced past each
// predecessor's last change position.
SsrtResult ssrt_extract(const ColoringTable& c);

// Two-chain strategy: colors (n, m) pairs by how p_n relates to the
// other chain's first m elements, extracts a homogeneous set, and
// follows the branch the color dictates.
ExtractionResult extract_cd2_sads(const Poset& p, const ChainFamily& chains,
                                  const ExtractParams& params = {});

// Splits a window of a linear order into a bottom part W and a top
// part R, where R holds the elements with a descending run below them
// longer than the lookahead.
struct WfSplit {
  std::vector<Id> w;
  std::vector<Id> r;
  std::size_t lookahead = 0;
};
WfSplit wf_split(const Poset& linear, std::size_t window,
                 std::size_t lookahead);

// Per-chain splitting strategy: ascends through each chain's
// well-founded part, scans for counterexample witnesses, and either
// returns a witness-free ascent or reports the cycle in the
// chain-to-chain witness map.
ExtractionResult extract_wfsplit_aca(const Poset& p, const ChainFamily& chains,
                                     const ExtractParams& params = {});

// No-antichain strategy: restricts to elements with long ascents
// above, decomposes that region into essential ideals, and builds a
// cofinal ascending chain through the largest one.
ExtractionResult extract_no_antichain(const Poset& p,
                                      const ExtractParams& params = {},
                                      std::size_t antichain_bound = 32);

}  // namespace ordlab

#endif
