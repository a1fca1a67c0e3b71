#include "ordlab/decomposition.hpp"

#include <algorithm>
#include <map>

#include "ordlab/width.hpp"

namespace ordlab {

std::size_t OnlinePartitioner::chain_bound(std::size_t k) {
  std::size_t b = 0;
  for (std::size_t i = 0; i < k; ++i) b = 5 * b + 1;
  return b;
}

OnlinePartitioner::OnlinePartitioner(const Poset& p, std::size_t k)
    : p_(p), k_(k) {
  if (k_ == 0) throw std::invalid_argument("width bound must be >= 1");
  levels_.resize(k_ - 1);
}

void OnlinePartitioner::push(Id e) {
  if (e != pushed_)
    throw std::invalid_argument("elements must be pushed in id order");
  chain_of_.push_back(~std::size_t{0});
  place(e, 0);
  ++pushed_;
}

void OnlinePartitioner::place(Id e, std::size_t level) {
  if (level == levels_.size()) {
    // Residue of the last reduction step: a single chain, provided the
    // width promise holds.  An incomparable pair here means it did not.
    for (Id q : bottom_)
      if (p_.incomp(q, e)) audit_width(pushed_ + 1);
    if (bottom_id_ == ~std::size_t{0}) bottom_id_ = next_chain_++;
    bottom_.push_back(e);
    chain_of_[e] = bottom_id_;
    return;
  }

  Level& lv = levels_[level];
  const std::size_t w = k_ - level;  // width promise at this depth

  // Does e complete an antichain of size w among the forwarded residue?
  std::vector<Id> incs;
  for (Id q : lv.forwarded)
    if (p_.incomp(q, e)) incs.push_back(q);

  std::vector<Id> witness;  // antichain of size w - 1 inside incs
  if (w == 2) {
    if (!incs.empty()) witness.push_back(incs.front());
  } else if (w == 3) {
    for (std::size_t i = 0; i < incs.size() && witness.empty(); ++i)
      for (std::size_t j = i + 1; j < incs.size(); ++j)
        if (p_.incomp(incs[i], incs[j])) {
          witness = {incs[i], incs[j]};
          break;
        }
  } else if (!incs.empty()) {
    // General case: exact maximum antichain of the induced subposet.
    std::vector<uint8_t> mat(incs.size() * incs.size(), 0);
    for (std::size_t i = 0; i < incs.size(); ++i)
      for (std::size_t j = 0; j < incs.size(); ++j)
        if (i != j && p_.below(incs[i], incs[j]))
          mat[i * incs.size() + j] = 1;
    const FinitePoset sub =
        FinitePoset::from_closed_matrix(incs.size(), std::move(mat));
    const auto anti = max_antichain(sub);
    if (anti.size() >= w - 1)
      for (std::size_t i = 0; i < w - 1; ++i) witness.push_back(incs[anti[i]]);
  }

  if (witness.size() + 1 == w) {
    if (level == 0) {
      // Best-effort promise check: can the size-k antichain grow?
      std::vector<Id> anti = witness;
      anti.push_back(e);
      for (Id f = 0; f < pushed_; ++f) {
        bool ext = std::all_of(anti.begin(), anti.end(), [&](Id a) {
          return f != a && p_.incomp(f, a);
        });
        if (ext) {
          anti.push_back(f);
          std::sort(anti.begin(), anti.end());
          throw WidthPromiseViolated(std::move(anti));
        }
      }
    }
    divert(e, level);
  } else {
    lv.forwarded.push_back(e);
    place(e, level + 1);
  }
}

void OnlinePartitioner::divert(Id e, std::size_t level) {
  Level& lv = levels_[level];
  for (std::size_t c = 0; c < lv.pool.size(); ++c) {
    bool fits = std::all_of(lv.pool[c].begin(), lv.pool[c].end(),
                            [&](Id q) { return p_.comp(q, e); });
    if (fits) {
      lv.pool[c].push_back(e);
      chain_of_[e] = lv.pool_ids[c];
      return;
    }
  }
  if (next_chain_ == chain_bound(k_)) audit_width(pushed_ + 1);
  lv.pool.emplace_back(std::vector<Id>{e});
  lv.pool_ids.push_back(next_chain_);
  chain_of_[e] = next_chain_++;
}

// Opening chain number chain_bound(k) means either the promise was
// broken somewhere we did not catch directly, or the strategy failed
// its bound; tell them apart with an exact width check of the prefix.
void OnlinePartitioner::audit_width(Id upto) const {
  const FinitePoset seen = p_.truncate(upto);
  const auto anti = max_antichain(seen);
  if (anti.size() > k_) throw WidthPromiseViolated(anti);
  throw std::runtime_error(
      "online partition exceeded its chain bound on a width-" +
      std::to_string(anti.size()) + " prefix");
}

ChainFamily OnlinePartitioner::assignment() const {
  ChainFamily fam;
  fam.k = next_chain_;
  fam.chains.resize(next_chain_);
  for (Id e = 0; e < chain_of_.size(); ++e)
    fam.chains[chain_of_[e]].push_back(e);
  return fam;
}

ChainFamily online_partition(const Poset& p, std::size_t k, std::size_t N) {
  OnlinePartitioner part(p, k);
  for (Id e = 0; e < N; ++e) part.push(e);
  return part.assignment();
}

ChainFamily offline_partition(const FinitePoset& p) {
  if (p.n() > 4096)
    throw OracleLimitExceeded("offline partition limited to n <= 4096");
  ChainCover cover = dilworth_offline(p);
  for (auto& chain : cover.chains) std::sort(chain.begin(), chain.end());
  std::sort(cover.chains.begin(), cover.chains.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  ChainFamily fam;
  fam.k = cover.chains.size();
  fam.chains = std::move(cover.chains);
  return fam;
}

std::vector<Id> chain_from_width(const Poset& p, std::size_t k,
                                 std::size_t N) {
  const ChainFamily fam = online_partition(p, k, N);
  std::size_t best = 0;
  for (std::size_t c = 1; c < fam.chains.size(); ++c)
    if (fam.chains[c].size() > fam.chains[best].size()) best = c;
  return fam.chains.empty() ? std::vector<Id>{} : fam.chains[best];
}

namespace {

// Longest chain inside an induced subset, by DP over a linear extension
// of the restriction.
std::size_t longest_in_subset(const FinitePoset& p, const std::vector<Id>& s) {
  std::vector<std::size_t> preds(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (Id q : s)
      if (p.strictly_below(q, s[i])) ++preds[i];
  std::vector<std::size_t> idx(s.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) {
                     return preds[a] < preds[b];
                   });
  std::vector<Id> order;
  for (std::size_t i : idx) order.push_back(s[i]);
  std::vector<std::size_t> f(order.size(), 1);
  std::size_t best = s.empty() ? 0 : 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (p.strictly_below(order[j], order[i]))
        f[i] = std::max(f[i], f[j] + 1);
    best = std::max(best, f[i]);
  }
  return best;
}

}  // namespace

std::vector<Id> antichain_from_height(const Poset& p, std::size_t k,
                                      std::size_t N) {
  const FinitePoset trunc = p.truncate(N);
  const auto tallest = longest_chain(trunc);
  if (tallest.size() > k)
    throw HeightPromiseViolated(
        std::vector<Id>(tallest.begin(), tallest.begin() + k + 1));

  // Color by (longest chain strictly below, longest chain strictly
  // above) among id-smaller elements.  Two comparable elements always
  // differ in a coordinate, so every class is an antichain, and there
  // are at most k^2 classes.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Id>> classes;
  for (Id e = 0; e < N; ++e) {
    std::vector<Id> lo, hi;
    for (Id q = 0; q < e; ++q) {
      if (trunc.strictly_below(q, e)) lo.push_back(q);
      if (trunc.strictly_below(e, q)) hi.push_back(q);
    }
    classes[{longest_in_subset(trunc, lo), longest_in_subset(trunc, hi)}]
        .push_back(e);
  }
  std::vector<Id> best;
  for (const auto& [key, elems] : classes)
    if (elems.size() > best.size()) best = elems;
  return best;
}

MonotoneRun monotone_extract(const Poset& p, const std::vector<Id>& chain,
                             std::optional<Direction> hint) {
  if (chain.empty()) throw EmptyInput();

  auto run_from = [&](bool ascending) {
    // Anchor at the element with the most strict successors (ascending)
    // or predecessors (descending) inside the window, ties lower id.
    std::size_t anchor = 0, anchor_count = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      std::size_t count = 0;
      for (std::size_t j = 0; j < chain.size(); ++j) {
        const bool hit = ascending ? p.below(chain[i], chain[j])
                                   : p.above(chain[i], chain[j]);
        if (hit) ++count;
      }
      if (count > anchor_count) {
        anchor = i;
        anchor_count = count;
      }
    }
    std::vector<Id> out{chain[anchor]};
    for (std::size_t j = anchor + 1; j < chain.size(); ++j) {
      const bool extends = ascending ? p.below(out.back(), chain[j])
                                     : p.above(out.back(), chain[j]);
      if (extends) out.push_back(chain[j]);
    }
    return out;
  };

  MonotoneRun result;
  if (hint) {
    result.direction = *hint;
    result.elements = run_from(*hint == Direction::Ascending);
    return result;
  }
  std::vector<Id> up = run_from(true);
  std::vector<Id> down = run_from(false);
  if (down.size() > up.size()) {
    result.direction = Direction::Descending;
    result.elements = std::move(down);
  } else {
    result.direction = Direction::Ascending;
    result.elements = std::move(up);
  }
  return result;
}

}  // namespace ordlab
