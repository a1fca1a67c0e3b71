#include "ordlab/adversaries.hpp"

#include <algorithm>
#include <unordered_map>

#include "ordlab/rng.hpp"

namespace ordlab {

Injection Injection::from_values(std::vector<uint64_t> values) {
  std::unordered_map<uint64_t, std::size_t> seen;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto [it, fresh] = seen.emplace(values[i], i);
    if (!fresh) throw NotInjective(it->second, i);
  }
  Injection f;
  f.values_ = std::move(values);
  for (uint64_t v : f.values_) f.max_value_ = std::max(f.max_value_, v);
  return f;
}

Injection Injection::seeded(uint64_t seed, std::size_t domain) {
  // Fisher-Yates over [0, 2*domain); keep the first `domain` entries.
  std::vector<uint64_t> pool(2 * domain);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  Rng rng(seed);
  for (std::size_t i = pool.size(); i > 1; --i)
    std::swap(pool[i - 1], pool[rng.below(i)]);
  pool.resize(domain);
  return from_values(std::move(pool));
}

uint64_t Injection::operator()(std::size_t i) const {
  if (i < values_.size()) return values_[i];
  // Fresh values above everything: injective, never falsifying.
  return max_value_ + 1 + (i - values_.size());
}

bool Injection::true_at(std::size_t n, std::size_t m) const {
  const uint64_t fn = (*this)(n);
  for (std::size_t k = n + 1; k <= m; ++k)
    if ((*this)(k) < fn) return false;
  return true;
}

std::optional<std::size_t> Injection::false_witness(std::size_t n) const {
  const uint64_t fn = (*this)(n);
  for (std::size_t k = n + 1; k < values_.size(); ++k)
    if ((*this)(k) < fn) return k;
  return std::nullopt;
}

std::vector<std::size_t> Injection::true_numbers_up_to(
    std::size_t bound) const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < bound; ++n)
    if (true_number(n)) out.push_back(n);
  return out;
}

std::vector<uint8_t> Injection::range_table(uint64_t bound) const {
  std::vector<uint8_t> table(bound, 0);
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] < bound) table[values_[i]] = 1;
  return table;
}

Ordering TfLinearPoset::compare(Id a, Id b) const {
  if (a == b) return Ordering::Equal;
  const std::size_t n = std::min(a, b), m = std::max(a, b);
  // n false at stage m: l_n <_L l_m; true at stage m: l_m <_L l_n.
  const bool n_below_m = !f_.true_at(n, m);
  if (a < b) return n_below_m ? Ordering::Below : Ordering::Above;
  return n_below_m ? Ordering::Above : Ordering::Below;
}

ProductLqPoset::ProductLqPoset(std::shared_ptr<const Poset> linear,
                               LqVariant v)
    : linear_(std::move(linear)), variant_(v) {}

Ordering ProductLqPoset::compare(Id a, Id b) const {
  if (a == b) return Ordering::Equal;
  const std::size_t qa = leg_of(a), qb = leg_of(b);
  // Q order: legs below z, distinct legs incomparable.
  Ordering q_ord;
  if (qa == qb)
    q_ord = Ordering::Equal;
  else if (qa == z_leg())
    q_ord = Ordering::Above;
  else if (qb == z_leg())
    q_ord = Ordering::Below;
  else
    return Ordering::Incomparable;  // legs a | b
  const Ordering l_ord = linear_->compare(line_of(a), line_of(b));
  if (l_ord == Ordering::Incomparable) return Ordering::Incomparable;
  // Componentwise: <= in both coordinates, strict in at least one.
  auto leq = [](Ordering o) {
    return o == Ordering::Below || o == Ordering::Equal;
  };
  auto geq = [](Ordering o) {
    return o == Ordering::Above || o == Ordering::Equal;
  };
  if (leq(l_ord) && leq(q_ord)) return Ordering::Below;
  if (geq(l_ord) && geq(q_ord)) return Ordering::Above;
  return Ordering::Incomparable;
}

Pi02Poset::Pi02Poset(std::vector<Pi02Entry> profile)
    : profile_(std::move(profile)) {
  if (profile_.empty())
    throw OutOfRange("pi02 profile must name at least one index");
  auto it = std::find_if(profile_.begin(), profile_.end(),
                         [](const Pi02Entry& e) { return e.total; });
  if (it == profile_.end())
    throw OutOfRange("pi02 profile has no total index");
  least_total_ = static_cast<std::size_t>(it - profile_.begin());
  for (auto& e : profile_)
    if (e.rate == 0)
      throw OutOfRange("pi02 rates must be positive");
}

void Pi02Poset::extend_to(Id e) const {
  // Enumerate by increasing s, then increasing i among live indices.
  while (enumeration_.size() <= e) {
    for (std::size_t i = 0; i < profile_.size(); ++i) {
      const Pi02Entry& ent = profile_[i];
      if (!ent.total && next_s_ >= ent.fails_at) continue;  // no witness t
      enumeration_.push_back(
          Triple{i, next_s_, ent.rate * (uint64_t{next_s_} + 1)});
    }
    ++next_s_;
  }
}

Pi02Poset::Triple Pi02Poset::triple_of(Id e) const {
  extend_to(e);
  return enumeration_[e];
}

Ordering Pi02Poset::compare(Id a, Id b) const {
  if (a == b) return Ordering::Equal;
  const Triple ta = triple_of(a), tb = triple_of(b);
  if (ta.i == tb.i && ta.s == tb.s) return Ordering::Equal;
  // <i0,s0,t0> <= <i1,s1,t1>  iff  i1 <= i0 and s1 >= s0.
  if (tb.i <= ta.i && tb.s >= ta.s) return Ordering::Below;
  if (ta.i <= tb.i && ta.s >= tb.s) return Ordering::Above;
  return Ordering::Incomparable;
}

Ordering ChainExtPoset::compare(Id a, Id b) const {
  if (a == b) return Ordering::Equal;
  const bool ca = is_c(a), cb = is_c(b);
  const std::size_t ia = index_of(a), ib = index_of(b);
  if (ca && cb) {
    if (ia == ib) return Ordering::Equal;
    return ia < ib ? Ordering::Below : Ordering::Above;
  }
  if (!ca && !cb) return line_.compare(ia, ib);
  // Mixed: c_m vs l_n; l's are never below c's.
  const std::size_t m = ca ? ia : ib;  // the c index
  const std::size_t n = ca ? ib : ia;  // the l index
  Ordering c_vs_l;
  if (m <= n)
    c_vs_l = Ordering::Below;  // c_n <_P l_m for n <= m, relabeled
  else
    c_vs_l = f_.true_at(n, m) ? Ordering::Below : Ordering::Incomparable;
  return ca ? c_vs_l : mirror(c_vs_l);
}

XiPoset::XiPoset(Injection f, FinitePoset pattern, Id x)
    : f_(std::move(f)), pattern_(std::move(pattern)), x_(x) {
  if (pattern_.n() == 0) throw OutOfRange("xi pattern must be non-empty");
  if (x_ >= pattern_.n()) throw OutOfRange("xi distinguished element invalid");
}

void XiPoset::build_to_block(std::size_t s) const {
  if (built_blocks_ > s) return;
  const std::size_t bs = pattern_.n();
  const std::size_t n_new = (s + 1) * bs;
  std::vector<uint8_t> grown(n_new * n_new, 0);
  const std::size_t n_old = built_blocks_ * bs;
  for (std::size_t a = 0; a < n_old; ++a)
    for (std::size_t b = 0; b < n_old; ++b)
      grown[a * n_new + b] = below_[a * n_old + b];
  below_ = std::move(grown);

  auto rel = [&](Id a, Id b) -> uint8_t& { return below_[a * n_new + b]; };
  auto true_set = [&](std::size_t stage) {
    std::vector<std::size_t> t;
    for (std::size_t n = 0; n < stage; ++n)
      if (f_.true_at(n, stage)) t.push_back(n);
    return t;
  };

  for (std::size_t stage = built_blocks_; stage <= s; ++stage) {
    const std::size_t base = stage * bs;
    // Internal copy of the pattern order.
    for (Id y = 0; y < bs; ++y)
      for (Id z = 0; z < bs; ++z)
        if (y != z && pattern_.strictly_below(y, z)) rel(base + y, base + z) = 1;
    if (stage == 0) continue;

    // Pivot selection: does some index lose truth at this stage?
    const std::vector<std::size_t> t_prev = true_set(stage - 1);
    const std::vector<std::size_t> t_now = true_set(stage);
    std::vector<std::size_t> prev_plus(t_prev);
    prev_plus.push_back(stage - 1);  // T_{s} ∪ {s} with s = stage-1
    std::vector<std::size_t> lost;
    for (std::size_t n : prev_plus)
      if (!std::binary_search(t_now.begin(), t_now.end(), n)) lost.push_back(n);

    bool place_above;
    Id pivot;
    if (!lost.empty()) {
      place_above = true;
      pivot = x_element(*std::min_element(lost.begin(), lost.end()));
    } else {
      place_above = false;
      pivot = x_element(stage - 1);
    }

    for (Id y = 0; y < base; ++y) {
      const bool y_below_pivot = rel(y, pivot) != 0;
      const bool y_above_pivot = rel(pivot, y) != 0;
      for (Id inner = 0; inner < bs; ++inner) {
        const Id e = base + inner;
        if (place_above) {
          // Immediately above the pivot: above all y <= pivot,
          // below all y > pivot.
          if (y_below_pivot || y == pivot)
            rel(y, e) = 1;
          else if (y_above_pivot)
            rel(e, y) = 1;
        } else {
          // Immediately below the pivot: above all y < pivot,
          // below all y >= pivot.
          if (y_below_pivot)
            rel(y, e) = 1;
          else if (y_above_pivot || y == pivot)
            rel(e, y) = 1;
        }
      }
    }
  }
  built_blocks_ = s + 1;
}

Ordering XiPoset::compare(Id a, Id b) const {
  if (a == b) return Ordering::Equal;
  const std::size_t top = std::max(block_of(a), block_of(b));
  build_to_block(top);
  const std::size_t n = built_blocks_ * pattern_.n();
  if (below_[a * n + b]) return Ordering::Below;
  if (below_[b * n + a]) return Ordering::Above;
  return Ordering::Incomparable;
}

std::vector<uint8_t> decode_range_from_true(
    const Injection& f, const std::vector<std::size_t>& S) {
  if (S.empty()) return {};
  std::size_t max_s = 0;
  for (std::size_t n : S) {
    max_s = std::max(max_s, n);
    // Verify against stage truth up to max(S) and beyond the explicit
    // domain (the extension cannot falsify, so this is decisive).
    const std::size_t final_stage =
        std::max(n, f.domain() == 0 ? 0 : f.domain() - 1);
    if (!f.true_at(n, final_stage)) {
      // Locate a concrete witness stage for the error report.
      std::size_t w = n + 1;
      while (f.true_at(n, w)) ++w;
      throw NotTrueNumber(n, w);
    }
  }
  // n true: every range value below f(n) already appears in f[{0..n}],
  // so evaluating f up to max(S) settles membership below f(max S).
  const uint64_t bound = f(max_s);
  std::vector<uint8_t> table(bound, 0);
  for (std::size_t i = 0; i <= max_s; ++i)
    if (f(i) < bound) table[f(i)] = 1;
  return table;
}

namespace {

std::optional<std::vector<Id>> greedy_bad(
    const Poset& p, const std::vector<Id>& candidates,
    std::size_t target_len) {
  std::vector<Id> out;
  for (Id c : candidates) {
    bool ok = true;
    for (Id b : out) {
      const Ordering o = p.compare(b, c);
      if (o == Ordering::Below || o == Ordering::Equal) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.push_back(c);
      if (out.size() >= target_len) return out;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Id>> find_bad_sequence(const Poset& p,
                                                 std::size_t window,
                                                 std::size_t target_len) {
  if (target_len == 0) return std::vector<Id>{};
  if (auto sz = p.size()) window = std::min(window, *sz);
  // Guided pass for Xi posets: restrict to elements incomparable with
  // their block's pivot (the y-elements of the reversal's analysis).
  if (auto* xi = dynamic_cast<const XiPoset*>(&p)) {
    std::vector<Id> ys;
    for (Id e = 0; e < window; ++e) {
      const Id xv = xi->x_element(xi->block_of(e));
      if (e != xv && p.incomp(e, xv)) ys.push_back(e);
    }
    if (auto found = greedy_bad(p, ys, target_len)) return found;
  }
  std::vector<Id> all(window);
  for (Id e = 0; e < window; ++e) all[e] = e;
  return greedy_bad(p, all, target_len);
}

std::vector<uint8_t> decode_range_from_bad_sequence(const XiPoset& q,
                                                    const std::vector<Id>& B) {
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      const Ordering o = q.compare(B[i], B[j]);
      if (o == Ordering::Below || o == Ordering::Equal)
        throw NotBadSequence(B[i], B[j]);
    }
  if (B.empty()) return {};
  std::size_t horizon = 0;
  for (Id b : B) horizon = std::max(horizon, q.block_of(b));
  const Injection& f = q.injection();
  // The reversal's search: n is true when some element of a later
  // block sits below x_n.  A finite window can catch an index before
  // it falsifies, so candidates are checked against stage truth on the
  // explicit domain (available here, as the decoder runs relative to
  // f joined with the bad sequence).
  std::vector<std::size_t> trues;
  for (std::size_t n = 0; n < horizon; ++n) {
    bool witnessed = false;
    for (Id b : B)
      if (q.block_of(b) > n && q.below(b, q.x_element(n))) {
        witnessed = true;
        break;
      }
    if (witnessed && f.true_number(n)) trues.push_back(n);
  }
  return decode_range_from_true(f, trues);
}

}  // namespace ordlab
