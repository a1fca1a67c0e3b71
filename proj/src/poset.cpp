#include "ordlab/poset.hpp"

#include <algorithm>

namespace ordlab {

FinitePoset Poset::truncate(std::size_t n) const {
  if (auto sz = size(); sz && n > *sz)
    throw OutOfRange("truncate: window exceeds poset size");
  std::vector<uint8_t> below(n * n, 0);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      if (a != b && compare(a, b) == Ordering::Below) below[a * n + b] = 1;
  // The rule is already transitive; from_closed_matrix re-checks.
  return FinitePoset::from_closed_matrix(n, std::move(below));
}

FinitePoset::FinitePoset(std::size_t n,
                         const std::vector<std::pair<Id, Id>>& pairs)
    : n_(n), below_(n * n, 0) {
  for (auto& [a, b] : pairs) {
    if (a >= n || b >= n) throw OutOfRange("relation pair out of range");
    if (a == b) throw CycleError("reflexive pair in strict order");
    below_[a * n_ + b] = 1;
  }
  close_and_check();
}

FinitePoset FinitePoset::from_closed_matrix(std::size_t n,
                                            std::vector<uint8_t> strict_below) {
  FinitePoset p;
  p.n_ = n;
  p.below_ = std::move(strict_below);
  p.close_and_check();
  return p;
}

void FinitePoset::close_and_check() {
  // Warshall closure over the strict relation.
  for (Id k = 0; k < n_; ++k)
    for (Id a = 0; a < n_; ++a) {
      if (!below_[a * n_ + k]) continue;
      const uint8_t* row_k = &below_[k * n_];
      uint8_t* row_a = &below_[a * n_];
      for (Id b = 0; b < n_; ++b) row_a[b] |= row_k[b];
    }
  for (Id a = 0; a < n_; ++a) {
    if (below_[a * n_ + a]) throw CycleError("order relation contains a cycle");
    for (Id b = a + 1; b < n_; ++b)
      if (below_[a * n_ + b] && below_[b * n_ + a])
        throw CycleError("order relation contains a cycle");
  }
}

Ordering FinitePoset::compare(Id a, Id b) const {
  if (a >= n_ || b >= n_) throw OutOfRange("compare: id out of range");
  if (a == b) return Ordering::Equal;
  if (below_[a * n_ + b]) return Ordering::Below;
  if (below_[b * n_ + a]) return Ordering::Above;
  return Ordering::Incomparable;
}

std::vector<std::pair<Id, Id>> FinitePoset::cover_pairs() const {
  std::vector<std::pair<Id, Id>> covers;
  for (Id a = 0; a < n_; ++a)
    for (Id b = 0; b < n_; ++b) {
      if (!below_[a * n_ + b]) continue;
      bool is_cover = true;
      for (Id c = 0; c < n_ && is_cover; ++c)
        if (below_[a * n_ + c] && below_[c * n_ + b]) is_cover = false;
      if (is_cover) covers.emplace_back(a, b);
    }
  return covers;
}

SetKind classify_set(const Poset& p, const std::vector<Id>& elems) {
  bool all_comp = true, all_incomp = true;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (elems[i] == elems[j]) continue;
      if (p.comp(elems[i], elems[j]))
        all_incomp = false;
      else
        all_comp = false;
    }
  if (all_comp) return SetKind::Chain;  // covers empty and singleton sets
  if (all_incomp) return SetKind::Antichain;
  return SetKind::Neither;
}

std::optional<std::size_t> ChainFamily::chain_of(Id e) const {
  for (std::size_t i = 0; i < chains.size(); ++i)
    if (std::binary_search(chains[i].begin(), chains[i].end(), e)) return i;
  return std::nullopt;
}

std::size_t ChainFamily::assigned_count() const {
  std::size_t total = 0;
  for (auto& c : chains) total += c.size();
  return total;
}

}  // namespace ordlab
