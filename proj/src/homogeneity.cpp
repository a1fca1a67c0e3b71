#include "ordlab/homogeneity.hpp"

#include <algorithm>

namespace ordlab {

ProgramTerm ProgramTerm::base(ChainPrefix prefix) {
  ProgramTerm t;
  t.shape_ = Shape::Base;
  t.prefix_ = std::move(prefix);
  return t;
}

ProgramTerm ProgramTerm::ladder(ProgramTerm inner, std::size_t chain) {
  ProgramTerm t;
  t.shape_ = Shape::Ladder;
  t.inner_ = std::make_shared<ProgramTerm>(std::move(inner));
  t.chain_ = chain;
  return t;
}

ProgramTerm ProgramTerm::ladder_w2(ProgramTerm inner) {
  ProgramTerm t;
  t.shape_ = Shape::LadderW2;
  t.inner_ = std::make_shared<ProgramTerm>(std::move(inner));
  return t;
}

namespace {

struct Budget {
  std::size_t limit;
  std::size_t spent = 0;
  bool charge() {
    if (spent >= limit) return false;
    ++spent;
    return true;
  }
};

// Produces the term's output sequence up to index `upto`, stopping
// early when the window offers no continuation or the budget runs out.
// The search order is fixed (chain elements by id, witnesses by index),
// so a prefix computed under a small budget is a prefix of the one
// computed under any larger budget.
std::vector<Id> compute_seq(const Poset& p, const ChainFamily& fam,
                            const ProgramTerm& t, std::size_t upto,
                            Budget& budget) {
  if (t.shape() == ProgramTerm::Shape::Base) {
    const auto& elems = t.prefix().elements;
    const std::size_t len =
        std::min(elems.size(), upto == ~std::size_t{0} ? elems.size()
                                                       : upto + 1);
    return std::vector<Id>(elems.begin(), elems.begin() + len);
  }

  // Ladder candidates come from the named chain; the width-2 variant
  // searches the whole window in id order.
  const bool w2 = t.shape() == ProgramTerm::Shape::LadderW2;
  std::vector<Id> candidates;
  if (w2) {
    candidates.resize(fam.assigned_count());
    for (Id e = 0; e < candidates.size(); ++e) candidates[e] = e;
  } else {
    if (t.chain() >= fam.chains.size()) throw InvalidChainIndex(t.chain());
    candidates = fam.chains[t.chain()];
  }
  const std::vector<Id>& chain = candidates;

  const std::vector<Id> inner =
      compute_seq(p, fam, t.inner(), ~std::size_t{0}, budget);

  std::vector<Id> out;
  // Each output is strictly above the previous one inside a finite
  // chain, so the loop ends on its own even with upto unbounded.
  while (out.size() <= upto) {
    const std::size_t m = out.size();
    if (m >= inner.size()) break;  // nothing to dominate
    std::optional<Id> next;
    for (Id cand : chain) {
      if (!out.empty()) {
        if (!budget.charge()) return out;
        if (!p.below(out.back(), cand)) continue;
      }
      if (!budget.charge()) return out;
      const Ordering vs = p.compare(inner[m], cand);
      if (vs != Ordering::Below && vs != Ordering::Equal) continue;
      const std::size_t n_start = w2 ? m + 1 : 0;
      bool witnessed = false;
      for (std::size_t n = n_start; n < inner.size(); ++n) {
        if (!budget.charge()) return out;
        if (p.incomp(cand, inner[n])) {
          witnessed = true;
          break;
        }
      }
      if (witnessed) {
        next = cand;
        break;
      }
    }
    if (!next) break;
    out.push_back(*next);
  }
  return out;
}

}  // namespace

EvalResult eval(const Poset& p, const ChainFamily& chains,
                const ProgramTerm& t, std::size_t m, std::size_t budget) {
  Budget b{budget};
  const std::vector<Id> seq = compute_seq(p, chains, t, m, b);
  EvalResult r;
  r.steps = b.spent;
  if (seq.size() > m) r.value = seq[m];
  return r;
}

std::vector<Id> HomogeneityCertificate::violating() const {
  std::vector<Id> out;
  for (Id e = 0; e < verdicts.size(); ++e)
    if (verdicts[e] == Verdict::Violating) out.push_back(e);
  return out;
}

HomogeneityCertificate verify_prefix_homogeneity(const Poset& p,
                                                 const ChainPrefix& chain,
                                                 std::size_t m,
                                                 std::size_t window) {
  if (classify_set(p, chain.elements) != SetKind::Chain) throw NotAChain();

  HomogeneityCertificate cert;
  cert.m = m;
  cert.window = window;
  cert.chain = chain;
  cert.verdicts.resize(window, Verdict::Zero);
  cert.counts.resize(window, 0);
  for (Id e = 0; e < window; ++e) {
    std::size_t count = 0;
    for (Id c : chain.elements)
      if (p.comp(e, c)) ++count;
    cert.counts[e] = count;
    if (count == 0)
      cert.verdicts[e] = Verdict::Zero;
    else if (count >= m)
      cert.verdicts[e] = Verdict::AtLeastM;
    else if (p.comp(e, chain.elements.back()))
      cert.verdicts[e] = Verdict::Open;
    else
      cert.verdicts[e] = Verdict::Violating;
  }
  return cert;
}

namespace {

void require_ascending(const Poset& p, const ChainPrefix& A) {
  if (!A.ascending) throw NotAscending();
  for (std::size_t i = 0; i + 1 < A.elements.size(); ++i)
    if (!p.below(A.elements[i], A.elements[i + 1])) throw NotAscending();
}

// Largest n with q >_P a_n such that q is incomparable with every
// listed later element.  Requires at least one later element, so an
// element above the entire listed sequence does not count: the paper's
// notion quantifies over an infinite tail.
std::optional<std::size_t> cx_tail_index(const Poset& p, const ChainPrefix& A,
                                         Id q) {
  const auto& a = A.elements;
  std::optional<std::size_t> top;
  for (std::size_t n = 0; n < a.size(); ++n)
    if (p.above(q, a[n])) top = n;
  if (!top || *top + 1 >= a.size()) return std::nullopt;
  for (std::size_t j = *top + 1; j < a.size(); ++j)
    if (!p.incomp(q, a[j])) return std::nullopt;
  return top;
}

}  // namespace

std::optional<Counterexample> find_counterexample(const Poset& p,
                                                  const ChainPrefix& A,
                                                  std::size_t window) {
  require_ascending(p, A);
  for (Id q = 0; q < window; ++q)
    if (auto n = cx_tail_index(p, A, q)) return Counterexample{q, *n};
  return std::nullopt;
}

std::optional<std::size_t> counterexample_target_chain(
    const Poset& p, const ChainFamily& chains, const ChainPrefix& A,
    std::size_t window) {
  require_ascending(p, A);
  std::vector<std::size_t> hits(chains.chains.size(), 0);
  for (Id q = 0; q < window; ++q)
    if (cx_tail_index(p, A, q))
      if (auto c = chains.chain_of(q)) ++hits[*c];
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < hits.size(); ++c)
    if (hits[c] > 0 && (!best || hits[c] > hits[*best])) best = c;
  return best;
}

CxSequence build_cx_sequence(const Poset& p, const ChainFamily& chains,
                             const ChainPrefix& A, std::size_t window) {
  require_ascending(p, A);

  // tail_of[q] = the tail index of q when q is a counterexample.
  std::vector<std::optional<std::size_t>> tail_of(window);
  for (Id q = 0; q < window; ++q) tail_of[q] = cx_tail_index(p, A, q);

  // Least counterexample to each tail; a counterexample serves tail n
  // whenever its own tail index is >= n.
  std::vector<std::optional<Id>> least(A.elements.size());
  bool any = false;
  for (std::size_t n = 0; n < A.elements.size(); ++n)
    for (Id q = 0; q < window; ++q)
      if (tail_of[q] && *tail_of[q] >= n) {
        least[n] = q;
        any = true;
        break;
      }
  if (!any) throw NoCounterexamplesInWindow();

  // Pigeonhole onto the most frequent chain, ties to the lowest index.
  std::vector<std::size_t> hits(chains.chains.size(), 0);
  for (const auto& q : least)
    if (q)
      if (auto c = chains.chain_of(*q)) ++hits[*c];
  std::size_t j = 0;
  for (std::size_t c = 0; c < hits.size(); ++c)
    if (hits[c] > hits[j]) j = c;

  CxSequence out;
  out.chain = j;
  out.sequence.ascending = true;
  std::optional<Id> prev;
  for (std::size_t n = 0; n < least.size(); ++n) {
    if (!least[n]) continue;
    const Id q = *least[n];
    if (chains.chain_of(q) != std::optional<std::size_t>{j}) continue;
    if (prev && !p.below(*prev, q)) continue;  // thinning
    if (prev && q == *prev) continue;
    out.sequence.elements.push_back(q);
    prev = q;
  }
  return out;
}

}  // namespace ordlab
