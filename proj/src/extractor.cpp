#include "ordlab/extractor.hpp"

#include <algorithm>
#include <map>

#include "ordlab/chains_trees.hpp"
#include "ordlab/decomposition.hpp"
#include "ordlab/width.hpp"

namespace ordlab {

namespace {

constexpr std::size_t npos = ~std::size_t{0};

// Finite posets cap how far any window scan can reach.
std::size_t clamp_window(const Poset& p, std::size_t window) {
  const auto n = p.size();
  return n ? std::min(window, *n) : window;
}

}  // namespace

std::size_t LabeledTree::level(std::size_t v) const {
  std::size_t d = 0;
  while (vertices[v].parent != npos) {
    v = vertices[v].parent;
    ++d;
  }
  return d;
}

std::size_t LabeledTree::height() const {
  std::size_t h = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    h = std::max(h, level(v));
  return h;
}

std::vector<std::size_t> LabeledTree::label_path(std::size_t v) const {
  std::vector<std::size_t> path;
  while (vertices[v].parent != npos) {
    path.push_back(vertices[v].label);
    v = vertices[v].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

// Does some proper descendant of v (inclusive of v itself when
// `inclusive`) carry the wanted label?
bool subtree_has_label(const LabeledTree& t, std::size_t v,
                       std::size_t wanted, bool inclusive) {
  if (inclusive && t.vertices[v].label == wanted) return true;
  for (std::size_t c : t.vertices[v].children)
    if (subtree_has_label(t, c, wanted, true)) return true;
  return false;
}

void check_tree_hypotheses(const LabeledTree& t) {
  if (t.k < 2 || t.vertices.empty())
    throw HypothesisViolated("tree must use at least two labels");
  const std::size_t h = t.height();
  if (h != t.k)
    throw HypothesisViolated("tree height must equal the label count");
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    const TreeVertex& vx = t.vertices[v];
    if (vx.label >= t.k) throw HypothesisViolated("label out of range");
    if (vx.children.empty() && t.level(v) != h)
      throw HypothesisViolated("leaf above the bottom level");
    std::vector<std::size_t> labels;
    for (std::size_t c : vx.children) {
      if (t.vertices[c].label == vx.label)
        throw HypothesisViolated("child repeats its parent's label");
      labels.push_back(t.vertices[c].label);
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      throw HypothesisViolated("children carry duplicate labels");
  }
}

}  // namespace

std::size_t tree_helper(const LabeledTree& t) {
  check_tree_hypotheses(t);

  std::size_t sigma = 0;  // root
  while (true) {
    const TreeVertex& vx = t.vertices[sigma];
    if (vx.children.empty())
      throw HypothesisViolated("descended to a leaf without a witness");

    // A failing child has no proper descendant with sigma's label; its
    // whole subtree then avoids that label, so the recursion applies
    // with one label fewer.  Lowest label first keeps this
    // deterministic.
    std::size_t failing = npos;
    for (std::size_t c : vx.children) {
      if (subtree_has_label(t, c, vx.label, false)) continue;
      if (failing == npos ||
          t.vertices[c].label < t.vertices[failing].label)
        failing = c;
    }
    if (failing == npos) return sigma;
    sigma = failing;
  }
}

namespace {

// Materializes a term's output sequence index by index, spending the
// per-index budget schedule, and stops at the first missing value.
std::vector<Id> term_sequence(const Poset& p, const ChainFamily& fam,
                              const ProgramTerm& t, std::size_t max_len,
                              const ExtractParams& params) {
  std::vector<Id> out;
  for (std::size_t m = 0; m < max_len; ++m) {
    // Nested ladders recompute their inner sequence on every call, so
    // the default schedule gets a window-scaled floor on top.
    const std::size_t budget =
        params.budget ? params.budget
                      : default_budget(m) + params.window * params.window;
    EvalResult r = eval(p, fam, t, m, budget);
    if (!r.found()) break;
    out.push_back(*r.value);
  }
  return out;
}

void require_ascending_seed(const Poset& p, const ChainPrefix& A) {
  if (A.elements.empty()) throw SeedNotAscending();
  for (std::size_t i = 0; i + 1 < A.elements.size(); ++i)
    if (!p.below(A.elements[i], A.elements[i + 1])) throw SeedNotAscending();
}

// Drops elements off the front until the homogeneity certificate has
// no violating entries, or the chain becomes too short to trim.
void trim_until_pass(const Poset& p, ExtractionResult& res,
                     const ExtractParams& params) {
  while (true) {
    res.certificate = verify_prefix_homogeneity(p, res.chain, params.m,
                                                params.window);
    if (res.certificate.passes() || res.chain.elements.size() <= 1) return;
    res.chain.elements.erase(res.chain.elements.begin());
    ++res.transcript.trimmed;
  }
}

struct TowerNode {
  std::size_t label = 0;
  std::size_t parent = npos;
  ProgramTerm term = ProgramTerm::base({});
  bool alive = false;
  std::vector<std::size_t> children;
};

}  // namespace

ExtractionResult extract_tower(const Poset& p, const ChainFamily& chains,
                               const ChainPrefix& A,
                               const ExtractParams& params_in) {
  ExtractParams params = params_in;
  params.window = clamp_window(p, params.window);
  require_ascending_seed(p, A);
  const std::size_t k = chains.chains.size();

  ExtractionResult res;
  res.transcript.strategy = "tower";

  if (k <= 1) {
    // The whole order is one chain; the seed is already the answer.
    res.chain = A;
    res.chain.ascending = true;
    res.transcript.chain = A.elements;
    trim_until_pass(p, res, params);
    return res;
  }

  // Relabel the chains so the seed's chain has index 0.
  const auto seed_chain = chains.chain_of(A.elements.front());
  if (!seed_chain) throw SeedNotAscending();
  for (Id e : A.elements)
    if (chains.chain_of(e) != seed_chain) throw SeedNotAscending();
  ChainFamily fam;
  fam.k = k;
  fam.chains.push_back(chains.chains[*seed_chain]);
  res.transcript.chain_order.push_back(*seed_chain);
  for (std::size_t c = 0; c < k; ++c)
    if (c != *seed_chain) {
      fam.chains.push_back(chains.chains[c]);
      res.transcript.chain_order.push_back(c);
    }

  // Build the complete (k-1)-ary ladder tree of height k.  A node is
  // alive while its program still answers within the window; children
  // of dead nodes are never expanded.  The probe depth has to exceed
  // what a chain that stops answering can fake from its finite stock
  // of elements, so it scales past the homogeneity threshold.
  const std::size_t probe =
      std::min(A.elements.size(), std::max(2 * params.m, std::size_t{40}));
  std::vector<TowerNode> tree(1);
  ChainPrefix seed = A;
  seed.ascending = true;
  tree[0].term = ProgramTerm::base(seed);
  tree[0].alive = true;  // the seed itself is the root's sequence
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (!tree[v].alive) continue;
    std::size_t depth = 0;
    for (std::size_t a = v; tree[a].parent != npos; a = tree[a].parent)
      ++depth;
    if (depth == k) continue;  // bottom level
    for (std::size_t i = 0; i < k; ++i) {
      if (i == tree[v].label) continue;
      TowerNode child;
      child.label = i;
      child.parent = v;
      child.term = ProgramTerm::ladder(tree[v].term, i);
      child.alive =
          term_sequence(p, fam, child.term, probe, params).size() >= probe;
      tree[v].children.push_back(tree.size());
      tree.push_back(std::move(child));
    }
  }

  const std::size_t max_len = std::max<std::size_t>(4 * params.m, 48);

  // First case: a live node above the bottom level with no live child.
  // Scan level by level, lowest label first (construction order is
  // already breadth-first).
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (!tree[v].alive) continue;
    std::size_t depth = 0;
    for (std::size_t a = v; tree[a].parent != npos; a = tree[a].parent)
      ++depth;
    if (depth == k) continue;
    const bool any_live_child =
        std::any_of(tree[v].children.begin(), tree[v].children.end(),
                    [&](std::size_t c) { return tree[c].alive; });
    if (any_live_child) continue;

    res.transcript.x_seq = term_sequence(p, fam, tree[v].term, max_len, params);
    for (std::size_t a = v; tree[a].parent != npos; a = tree[a].parent)
      res.transcript.node_path.push_back(tree[a].label);
    std::reverse(res.transcript.node_path.begin(),
                 res.transcript.node_path.end());
    res.chain.elements = res.transcript.x_seq;
    res.chain.ascending = true;
    trim_until_pass(p, res, params);
    res.transcript.chain = res.chain.elements;
    return res;
  }

  // Second case: the live subtree is full, so pick its pivot node and
  // merge its sequence with its children's witnesses.
  LabeledTree lt;
  lt.k = k;
  std::vector<std::size_t> live_index(tree.size(), npos);
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (!tree[v].alive) continue;
    TreeVertex vx;
    vx.label = tree[v].label;
    vx.parent = tree[v].parent == npos ? npos : live_index[tree[v].parent];
    live_index[v] = lt.vertices.size();
    if (vx.parent != npos)
      lt.vertices[vx.parent].children.push_back(lt.vertices.size());
    lt.vertices.push_back(vx);
  }
  const std::size_t sigma_live = tree_helper(lt);
  std::size_t sigma = npos;
  for (std::size_t v = 0; v < tree.size(); ++v)
    if (live_index[v] == sigma_live) sigma = v;
  res.transcript.node_path = lt.label_path(sigma_live);

  const std::vector<Id> X =
      term_sequence(p, fam, tree[sigma].term, max_len, params);
  res.transcript.x_seq = X;
  if (X.empty()) throw BudgetTooSmall();

  // For each live child, its witness node: the first descendant (depth
  // first, lowest label first) that carries sigma's label again.
  std::vector<std::vector<Id>> witness_seqs;
  for (std::size_t c : tree[sigma].children) {
    if (!tree[c].alive) continue;
    std::size_t eta = npos;
    std::vector<std::size_t> stack{c};
    while (!stack.empty() && eta == npos) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (v != c && tree[v].label == tree[sigma].label) {
        eta = v;
        break;
      }
      for (auto it = tree[v].children.rbegin(); it != tree[v].children.rend();
           ++it)
        if (tree[*it].alive) stack.push_back(*it);
    }
    if (eta != npos)
      witness_seqs.push_back(
          term_sequence(p, fam, tree[eta].term, max_len, params));
  }

  // y_n = pointwise maximum of the witness sequences.
  std::vector<Id> Y;
  if (!witness_seqs.empty()) {
    std::size_t len = max_len;
    for (const auto& s : witness_seqs) len = std::min(len, s.size());
    for (std::size_t n = 0; n < len; ++n) {
      Id best = witness_seqs[0][n];
      for (const auto& s : witness_seqs)
        if (p.below(best, s[n])) best = s[n];
      Y.push_back(best);
    }
  }
  res.transcript.y_seq = Y;

  // The cut m: beyond it, anything in an excluded chain that reaches
  // above x_m is comparable with the whole tail.
  std::vector<uint8_t> excluded(k, 1);
  excluded[tree[sigma].label] = 0;
  for (std::size_t c : tree[sigma].children)
    if (tree[c].alive) excluded[tree[c].label] = 0;
  std::size_t cut = X.size() - 1;
  for (std::size_t m_try = 0; m_try < X.size(); ++m_try) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (!excluded[i]) continue;
      for (Id q : fam.chains[i]) {
        if (!p.above(q, X[m_try]) && q != X[m_try]) continue;
        for (std::size_t n = m_try; n < X.size(); ++n)
          if (p.incomp(q, X[n])) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
    }
    if (ok) {
      cut = m_try;
      break;
    }
  }
  res.transcript.m = cut;

  std::vector<Id> B(X.begin() + cut, X.end());

  // Keep just the tail of Y when some y_n tops the whole of X;
  // otherwise Y adds nothing to the tail of X.
  bool y_dominated = true;
  for (Id y : Y) {
    const bool below_some =
        std::any_of(B.begin(), B.end(), [&](Id x) { return p.below(y, x); });
    if (!below_some) y_dominated = false;
  }
  if (!y_dominated) {
    std::size_t n_cut = npos;
    for (std::size_t n = 0; n < Y.size(); ++n) {
      const bool tops = std::all_of(X.begin(), X.end(), [&](Id x) {
        return p.above(Y[n], x) || Y[n] == x;
      });
      if (tops) {
        n_cut = n;
        break;
      }
    }
    if (n_cut != npos) {
      res.transcript.n = n_cut;
      for (std::size_t n = n_cut; n < Y.size(); ++n)
        if (std::find(B.begin(), B.end(), Y[n]) == B.end())
          B.push_back(Y[n]);
      std::sort(B.begin(), B.end(), [&](Id a, Id b) { return p.below(a, b); });
    }
  }

  res.chain.elements = std::move(B);
  res.chain.ascending = true;
  trim_until_pass(p, res, params);
  res.transcript.chain = res.chain.elements;
  return res;
}

ExtractionResult extract_w2_diagonal(const Poset& p, const ChainPrefix& A,
                                     const ExtractParams& params_in) {
  ExtractParams params = params_in;
  params.window = clamp_window(p, params.window);
  require_ascending_seed(p, A);
  const ChainFamily fam = online_partition(p, 2, params.window);

  ExtractionResult res;
  res.transcript.strategy = "w2-diagonal";

  const std::size_t target = std::max<std::size_t>(2 * params.m, 4);
  ChainPrefix seed = A;
  seed.ascending = true;

  std::vector<ProgramTerm> levels{ProgramTerm::base(seed)};
  std::vector<std::vector<Id>> rows{
      term_sequence(p, fam, levels[0], target, params)};
  if (rows[0].empty()) throw BudgetTooSmall();

  // Row i only has to reach past index i to contribute its diagonal
  // entry; the first level that cannot marks the iteration partial.
  bool partial = false;
  while (!partial && rows.size() < target) {
    levels.push_back(ProgramTerm::ladder_w2(levels.back()));
    std::vector<Id> row = term_sequence(p, fam, levels.back(), target, params);
    if (row.size() <= rows.size())
      partial = true;
    else
      rows.push_back(std::move(row));
  }

  if (partial) {
    // Some level went window-partial: fall back to the last total row.
    res.transcript.m = rows.size() - 1;
    res.transcript.x_seq = rows.back();
    res.chain.elements = rows.back();
  } else {
    // Every level answered: take the diagonal.
    std::vector<Id> diag;
    for (std::size_t i = 0; i < target; ++i) diag.push_back(rows[i][i]);
    res.transcript.x_seq = diag;
    res.chain.elements = std::move(diag);
  }
  res.chain.ascending = true;
  trim_until_pass(p, res, params);
  res.transcript.chain = res.chain.elements;
  return res;
}

ColoringTable::ColoringTable(std::size_t N, std::size_t colors,
                             std::size_t stability)
    : n_(N), colors_(colors), stability_(stability),
      entries_(N * N, 0) {}

std::size_t ColoringTable::at(std::size_t x, std::size_t y) const {
  if (x >= y || y >= n_) throw OutOfRange("coloring index out of range");
  return entries_[x * n_ + y];
}

void ColoringTable::set(std::size_t x, std::size_t y, std::size_t color) {
  if (x >= y || y >= n_) throw OutOfRange("coloring index out of range");
  if (color >= colors_) throw OutOfRange("color out of range");
  entries_[x * n_ + y] = static_cast<uint8_t>(color);
}

SsrtResult ssrt_extract(const ColoringTable& c) {
  const std::size_t N = c.n();
  if (N < 2) throw WindowTooSmall();

  // Last change position per row; also enforces the declared stability.
  std::vector<std::size_t> settle(N, 0);
  for (std::size_t x = 0; x + 1 < N; ++x) {
    std::size_t changes = 0;
    settle[x] = x;
    for (std::size_t y = x + 1; y + 1 < N; ++y)
      if (c.at(x, y) != c.at(x, y + 1)) {
        ++changes;
        settle[x] = y;
      }
    if (changes > c.stability()) throw StabilityViolated(x, changes);
  }

  // The row's last color stands in for its limit; majority class wins,
  // ties to the lowest color.
  std::vector<std::size_t> tally(c.colors(), 0);
  for (std::size_t x = 0; x + 1 < N; ++x) ++tally[c.at(x, N - 1)];
  std::size_t color = 0;
  for (std::size_t l = 0; l < tally.size(); ++l)
    if (tally[l] > tally[color]) color = l;

  SsrtResult out;
  out.color = color;
  std::size_t floor = 0;
  for (std::size_t x = 0; x + 1 < N; ++x) {
    if (c.at(x, N - 1) != color || x < floor) continue;
    out.members.push_back(x);
    floor = std::max(floor, settle[x] + 1);
  }
  return out;
}

namespace {

// Claim path shared by the 1- and 2-homogeneous branches: from pairs
// (n, i) with p_n comparable to q_i, build a chain through both
// enumerations or an outright monotone sequence.
ExtractionResult inj_to_chain(const Poset& p, const std::vector<Id>& ps,
                              const std::vector<Id>& qs,
                              const std::vector<std::pair<std::size_t,
                                                          std::size_t>>& pairs,
                              const ExtractParams& params,
                              ExtractionTranscript transcript) {
  ExtractionResult res;
  res.transcript = std::move(transcript);

  std::vector<std::pair<std::size_t, std::size_t>> lower, upper;
  for (const auto& [n, i] : pairs)
    (p.below(ps[n], qs[i]) ? lower : upper).push_back({n, i});
  const bool use_lower = lower.size() >= upper.size();
  const auto& side = use_lower ? lower : upper;
  if (side.empty()) throw NoAscendingSequenceFound();

  std::vector<Id> L;
  for (const auto& [n, i] : side) L.push_back(ps[n]);

  // Unstable witness: an element with plenty of the suborder both
  // below and above it.
  std::size_t pivot = npos;
  for (std::size_t a = 0; a < side.size() && pivot == npos; ++a) {
    std::size_t lo = 0, hi = 0;
    for (Id other : L) {
      if (p.below(other, L[a])) ++lo;
      if (p.above(other, L[a])) ++hi;
    }
    if (lo >= params.lookahead && hi >= params.lookahead) pivot = a;
  }

  if (pivot == npos) {
    // The suborder looks stable; extract a monotone sequence and run
    // the width-2 machinery on it (reversing the order for descents).
    const MonotoneRun run = monotone_extract(p, L);
    ChainPrefix seed;
    seed.elements = run.elements;
    seed.ascending = true;
    if (run.direction == Direction::Ascending)
      return extract_w2_diagonal(p, seed, params);
    ReversedPoset rev(p);
    std::reverse(seed.elements.begin(), seed.elements.end());
    ExtractionResult flipped = extract_w2_diagonal(rev, seed, params);
    flipped.certificate =
        verify_prefix_homogeneity(rev, flipped.chain, params.m, params.window);
    return flipped;
  }

  const Id pn = L[pivot];
  // A partner above the pivot whose q-side has plenty above it.
  for (const auto& [n, i] : side) {
    if (!(ps[n] == pn || p.above(ps[n], pn))) continue;
    if (!use_lower) continue;  // partner path needs p_m < q_{f(m)}
    std::vector<Id> q_up;
    for (Id q : qs)
      if (q == qs[i] || p.above(q, qs[i])) q_up.push_back(q);
    if (q_up.size() < params.lookahead) continue;

    std::vector<Id> B;
    for (Id x : ps)
      if (x == pn || p.below(x, pn)) B.push_back(x);
    B.insert(B.end(), q_up.begin(), q_up.end());
    std::sort(B.begin(), B.end(), [&](Id a, Id b) { return p.below(a, b); });
    res.chain.elements = std::move(B);
    res.chain.ascending = true;
    trim_until_pass(p, res, params);
    res.transcript.chain = res.chain.elements;
    return res;
  }

  // No partner: the q-values over the pivot's up-set form a chain with
  // no bottom; return it listed downward.
  std::vector<Id> down;
  for (const auto& [n, i] : side)
    if (ps[n] == pn || p.above(ps[n], pn)) down.push_back(qs[i]);
  std::sort(down.begin(), down.end(), [&](Id a, Id b) { return p.above(a, b); });
  res.chain.elements = std::move(down);
  res.chain.ascending = false;
  res.certificate =
      verify_prefix_homogeneity(p, res.chain, params.m, params.window);
  res.transcript.chain = res.chain.elements;
  return res;
}

}  // namespace

ExtractionResult extract_cd2_sads(const Poset& p, const ChainFamily& chains,
                                  const ExtractParams& params_in) {
  ExtractParams params = params_in;
  params.window = clamp_window(p, params.window);
  if (chains.chains.size() != 2) throw NotTwoChains();

  ExtractionResult res;
  res.transcript.strategy = "cd2-sads";

  // Enumerate the larger chain as the p-side.
  const bool swap = chains.chains[1].size() > chains.chains[0].size();
  const std::vector<Id>& ps = chains.chains[swap ? 1 : 0];
  const std::vector<Id>& qs = chains.chains[swap ? 0 : 1];
  res.transcript.chain_order = swap ? std::vector<std::size_t>{1, 0}
                                    : std::vector<std::size_t>{0, 1};

  if (qs.empty()) {
    res.chain.elements = ps;
    res.chain.ascending = false;
    res.certificate =
        verify_prefix_homogeneity(p, res.chain, params.m, params.window);
    res.transcript.chain = res.chain.elements;
    return res;
  }

  const std::size_t N = std::min(ps.size(), qs.size());
  if (N < params.m + 2) throw WindowTooSmall();

  // c(n, m) records how p_n has interacted with q_0..q_m so far:
  // never comparable (0), comparable to some later-indexed q (1), or
  // comparable only to earlier-indexed q's (2).
  ColoringTable table(N, 3, 2);
  for (std::size_t n = 0; n < N; ++n) {
    std::size_t last_comp = npos;
    for (std::size_t m = 0; m < N; ++m) {
      if (p.comp(ps[n], qs[m])) last_comp = m;
      if (m > n) {
        std::size_t color = 2;
        if (last_comp == npos)
          color = 0;
        else if (last_comp > n)
          color = 1;
        table.set(n, m, color);
      }
    }
  }

  const SsrtResult H = ssrt_extract(table);
  res.transcript.m = H.color;

  if (H.color == 0) {
    std::vector<Id> B;
    for (std::size_t n : H.members) B.push_back(ps[n]);
    res.chain.elements = std::move(B);
    res.chain.ascending = false;
    res.certificate =
        verify_prefix_homogeneity(p, res.chain, params.m, params.window);
    res.transcript.chain = res.chain.elements;
    return res;
  }

  if (H.color == 1) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t n : H.members)
      for (std::size_t i = n + 1; i < qs.size(); ++i)
        if (p.comp(ps[n], qs[i])) {
          pairs.push_back({n, i});
          break;
        }
    return inj_to_chain(p, ps, qs, pairs, params, std::move(res.transcript));
  }

  // 2-homogeneous: check whether the comparabilities are bounded.
  std::size_t bound = 0;
  for (std::size_t n : H.members)
    for (std::size_t i = 0; i < qs.size(); ++i)
      if (p.comp(ps[n], qs[i])) bound = std::max(bound, i + 1);

  if (bound <= params.lookahead) {
    // Finitely many troublesome q's: group the homogeneous rows by
    // their comparability pattern against them and keep the largest
    // class.
    std::map<std::vector<uint8_t>, std::vector<Id>> classes;
    for (std::size_t n : H.members) {
      std::vector<uint8_t> pattern(bound, 0);
      for (std::size_t i = 0; i < bound; ++i)
        pattern[i] = p.comp(ps[n], qs[i]) ? 1 : 0;
      classes[pattern].push_back(ps[n]);
    }
    std::vector<Id> best;
    for (const auto& [pattern, elems] : classes)
      if (elems.size() > best.size()) best = elems;
    res.chain.elements = std::move(best);
    res.chain.ascending = false;
    res.certificate =
        verify_prefix_homogeneity(p, res.chain, params.m, params.window);
    res.transcript.chain = res.chain.elements;
    return res;
  }

  // Unbounded: harvest comparable pairs with ever-larger indices.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t floor = 0;
  while (true) {
    bool found = false;
    for (std::size_t n : H.members) {
      if (n < floor) continue;
      for (std::size_t i = floor; i < qs.size() && !found; ++i)
        if (p.comp(ps[n], qs[i])) {
          pairs.push_back({n, i});
          floor = std::max(n, i) + 1;
          found = true;
        }
      if (found) break;
    }
    if (!found) break;
  }
  return inj_to_chain(p, ps, qs, pairs, params, std::move(res.transcript));
}

WfSplit wf_split(const Poset& linear, std::size_t window,
                 std::size_t lookahead) {
  const FinitePoset trunc = linear.truncate(window);
  for (Id a = 0; a < window; ++a)
    for (Id b = a + 1; b < window; ++b)
      if (trunc.compare(a, b) == Ordering::Incomparable) throw NotLinear(a, b);

  const std::vector<std::size_t> down = descending_run_lengths(trunc);
  WfSplit out;
  out.lookahead = lookahead;
  for (Id e = 0; e < window; ++e)
    (down[e] > lookahead + 1 ? out.r : out.w).push_back(e);
  return out;
}

ExtractionResult extract_wfsplit_aca(const Poset& p, const ChainFamily& chains,
                                     const ExtractParams& params_in) {
  ExtractParams params = params_in;
  params.window = clamp_window(p, params.window);
  ExtractionResult res;
  res.transcript.strategy = "wf-split";

  const std::size_t k = chains.chains.size();
  std::vector<ChainPrefix> ascents(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::vector<Id>& chain = chains.chains[i];
    if (chain.empty()) continue;

    // Split this chain's window into bottom (well-founded-looking) and
    // top parts, keeping only bottom elements that still have plenty
    // of chain successors above them.
    std::vector<uint8_t> mat(chain.size() * chain.size(), 0);
    for (std::size_t a = 0; a < chain.size(); ++a)
      for (std::size_t b = 0; b < chain.size(); ++b)
        if (a != b && p.below(chain[a], chain[b]))
          mat[a * chain.size() + b] = 1;
    const FinitePoset sub =
        FinitePoset::from_closed_matrix(chain.size(), std::move(mat));
    const std::vector<std::size_t> down = descending_run_lengths(sub);

    std::vector<Id> w;
    for (std::size_t a = 0; a < chain.size(); ++a)
      if (down[a] <= params.lookahead + 1) w.push_back(chain[a]);

    std::vector<Id> core;  // w-elements with many successors in w
    for (Id e : w) {
      std::size_t succ = 0;
      for (Id q : w)
        if (p.below(e, q)) ++succ;
      if (succ >= params.lookahead) core.push_back(e);
    }
    if (core.size() < 2) continue;
    const MonotoneRun run = monotone_extract(p, core, Direction::Ascending);
    ascents[i].elements = run.elements;
    ascents[i].ascending = true;
  }

  std::vector<std::size_t> h(k, npos);
  std::size_t start = npos;
  for (std::size_t i = 0; i < k; ++i) {
    if (ascents[i].elements.size() < 2) continue;
    if (start == npos) start = i;
    const auto cx = find_counterexample(p, ascents[i], params.window);
    if (!cx) {
      res.chain = ascents[i];
      res.certificate =
          verify_prefix_homogeneity(p, res.chain, params.m, params.window);
      res.transcript.chain = res.chain.elements;
      res.transcript.m = i;
      return res;
    }
    const auto target =
        counterexample_target_chain(p, chains, ascents[i], params.window);
    h[i] = target ? *target : i;
  }
  if (start == npos) throw NoAscendingSequenceFound();

  // Every candidate has witnesses against it: follow the witness map
  // from the first candidate until a chain index repeats.
  RefutationWitness wit;
  wit.h_map = h;
  std::vector<uint8_t> seen(k, 0);
  std::size_t i = start;
  while (i != npos && !seen[i]) {
    seen[i] = 1;
    wit.cycle.push_back(i);
    i = h[i];
  }
  if (i != npos) wit.cycle.push_back(i);  // the repeated index
  res.transcript.refutation = std::move(wit);
  res.certificate =
      verify_prefix_homogeneity(p, res.chain, params.m, params.window);
  return res;
}

ExtractionResult extract_no_antichain(const Poset& p,
                                      const ExtractParams& params_in,
                                      std::size_t antichain_bound) {
  ExtractParams params = params_in;
  params.window = clamp_window(p, params.window);
  const FinitePoset trunc = p.truncate(params.window);
  if (max_antichain(trunc).size() > antichain_bound)
    throw AntichainBoundExceeded(max_antichain(trunc).size(), antichain_bound);

  ExtractionResult res;
  res.transcript.strategy = "ideal";

  // Q: elements that still have long ascents above them in-window.
  const std::vector<std::size_t> up = ascending_run_lengths(trunc);
  std::vector<Id> q_set;
  for (Id e = 0; e < trunc.n(); ++e)
    if (up[e] > params.lookahead + 1) q_set.push_back(e);
  if (q_set.size() < 2) throw NoAscendingSequenceFound();

  std::vector<uint8_t> mat(q_set.size() * q_set.size(), 0);
  for (std::size_t a = 0; a < q_set.size(); ++a)
    for (std::size_t b = 0; b < q_set.size(); ++b)
      if (a != b && trunc.strictly_below(q_set[a], q_set[b]))
        mat[a * q_set.size() + b] = 1;
  const FinitePoset sub =
      FinitePoset::from_closed_matrix(q_set.size(), std::move(mat));
  const IdealFamily ideals = essential_ideal_decomposition(sub, antichain_bound);

  std::size_t pick = 0;
  for (std::size_t i = 0; i < ideals.ideals.size(); ++i)
    if (ideals.ideals[i].size() > ideals.ideals[pick].size()) pick = i;
  res.transcript.m = pick;
  std::vector<Id> ideal;  // back to original ids
  for (Id local : ideals.ideals[pick]) ideal.push_back(q_set[local]);

  // Cofinal ascent: each step clears the next enumerated element too.
  std::vector<Id> c{ideal.front()};
  for (std::size_t n = 1; n < ideal.size(); ++n) {
    if (trunc.strictly_below(ideal[n], c.back()) || ideal[n] == c.back())
      continue;  // already cleared
    std::optional<Id> next;
    for (Id cand : ideal)
      if (trunc.strictly_below(c.back(), cand) &&
          (cand == ideal[n] || trunc.strictly_below(ideal[n], cand))) {
        next = cand;
        break;
      }
    if (!next) break;
    c.push_back(*next);
  }

  res.chain.elements = std::move(c);
  res.chain.ascending = true;
  trim_until_pass(p, res, params);
  res.transcript.chain = res.chain.elements;
  return res;
}

}  // namespace ordlab
