#ifndef ORDLAB_ADVERSARIES_HPP
#define ORDLAB_ADVERSARIES_HPP

#include <memory>

#include "ordlab/poset.hpp"

namespace ordlab {

struct NotInjective : std::runtime_error {
  Id a, b;
  NotInjective(Id a_, Id b_)
      : std::runtime_error("injection repeats a value at indices " +
                           std::to_string(a_) + ", " + std::to_string(b_)),
        a(a_), b(b_) {}
};

struct NotTrueNumber : std::runtime_error {
  std::size_t n, witness_stage;
  NotTrueNumber(std::size_t n_, std::size_t w)
      : std::runtime_error("index " + std::to_string(n_) +
                           " is false at stage " + std::to_string(w)),
        n(n_), witness_stage(w) {}
};

struct NotBadSequence : std::runtime_error {
  Id earlier, later;
  NotBadSequence(Id e, Id l)
      : std::runtime_error("sequence not bad: element " + std::to_string(e) +
                           " <= later element " + std::to_string(l)),
        earlier(e), later(l) {}
};

// An injection f : N -> N, explicit on [0, domain) and extended beyond
// by fresh increasing values above everything seen.  The extension
// keeps f injective and never falsifies an index below the domain, so
// "true at the final explicit stage" agrees with "true" outright.
class Injection {
 public:
  static Injection from_values(std::vector<uint64_t> values);
  // Prefix of a pseudo-random permutation of [0, 2*domain).
  static Injection seeded(uint64_t seed, std::size_t domain);

  uint64_t operator()(std::size_t i) const;
  std::size_t domain() const { return values_.size(); }

  // true iff f(n) < f(k) for all k with n < k <= m.
  bool true_at(std::size_t n, std::size_t m) const;
  // True at the final explicit stage (= absolutely, by the extension).
  bool true_number(std::size_t n) const {
    return true_at(n, values_.empty() ? 0 : values_.size() - 1);
  }
  // Least stage witnessing falseness, if any.
  std::optional<std::size_t> false_witness(std::size_t n) const;

  std::vector<std::size_t> true_numbers_up_to(std::size_t bound) const;
  // Membership table for ran(f) on [0, bound), by direct evaluation.
  std::vector<uint8_t> range_table(uint64_t bound) const;

 private:
  std::vector<uint64_t> values_;
  uint64_t max_value_ = 0;
};

// Construction on stages: linear order L = {l_n} where, for n < m,
// l_n <_L l_m iff n is false at stage m, and l_m <_L l_n iff n is true
// at stage m.  Type omega + omega* (false part ascending below the
// descending true part).
class TfLinearPoset final : public Poset {
 public:
  explicit TfLinearPoset(Injection f) : f_(std::move(f)) {}
  Ordering compare(Id a, Id b) const override;
  const Injection& injection() const { return f_; }

 private:
  Injection f_;
};

// Product L x Q for Q2 = {a < z} and Q3 = {a, b < z, a | b}.  Element
// layout is leg-minor: id = q_count * l + q with legs a=0 (,b=1) and z
// last, so the chain classes are the residues mod q_count.
enum class LqVariant { Q2, Q3 };

class ProductLqPoset final : public Poset {
 public:
  ProductLqPoset(std::shared_ptr<const Poset> linear, LqVariant v);
  Ordering compare(Id a, Id b) const override;

  std::size_t legs() const { return variant_ == LqVariant::Q2 ? 2 : 3; }
  std::size_t leg_of(Id e) const { return e % legs(); }
  Id line_of(Id e) const { return e / legs(); }
  std::size_t z_leg() const { return legs() - 1; }
  const Poset& line() const { return *linear_; }

 private:
  std::shared_ptr<const Poset> linear_;
  LqVariant variant_;
};

// Triples <i, s, t> with i <= n and t the least witness bound making
// phi(i, x, y) hold below s; ordered by i1 <= i0 and s1 >= s0.  The
// predicate is fixed per index by a profile entry: Total(rate) has
// phi(i,x,y) iff y >= rate*(x+1); FailsAt(x0, rate) additionally
// refuses x = x0, so the chain C_i dies at s = x0.
struct Pi02Entry {
  bool total = true;
  uint64_t rate = 1;   // witness growth rate, >= 1
  std::size_t fails_at = 0;  // meaningful when !total
};

class Pi02Poset final : public Poset {
 public:
  explicit Pi02Poset(std::vector<Pi02Entry> profile);
  Ordering compare(Id a, Id b) const override;

  std::size_t least_total_index() const { return least_total_; }
  // Decoded triple for an enumeration id.
  struct Triple {
    std::size_t i, s;
    uint64_t t;
  };
  Triple triple_of(Id e) const;
  std::size_t chain_of(Id e) const { return triple_of(e).i; }
  std::size_t index_count() const { return profile_.size(); }

 private:
  void extend_to(Id e) const;

  std::vector<Pi02Entry> profile_;
  std::size_t least_total_ = 0;
  mutable std::vector<Triple> enumeration_;
  mutable std::size_t next_s_ = 0;
};

// The maximal-chain-extension order: P = {c_n, l_n}, c's linear by
// index, l's ordered as tf_linear, c_m <_P l_n iff n true at stage m
// (n <= m), and c_n <_P l_m whenever n <= m.  Even ids are c's, odd
// ids are l's.  l_n ends up comparable with every c_m iff n is true.
class ChainExtPoset final : public Poset {
 public:
  explicit ChainExtPoset(Injection f) : f_(std::move(f)), line_(f_) {}
  Ordering compare(Id a, Id b) const override;

  static bool is_c(Id e) { return e % 2 == 0; }
  static std::size_t index_of(Id e) { return e / 2; }
  static Id c_id(std::size_t n) { return 2 * n; }
  static Id l_id(std::size_t n) { return 2 * n + 1; }
  const Injection& injection() const { return f_; }

 private:
  Injection f_;
  TfLinearPoset line_;
};

// Staged construction Xi_f(P, x): countably many copies P_s of a
// finite poset, each placed immediately above or below a pivot copy of
// x according to which indices lose truth at stage s.  Element layout
// is block-major: id = s * |P| + inner.
class XiPoset final : public Poset {
 public:
  XiPoset(Injection f, FinitePoset pattern, Id x);
  Ordering compare(Id a, Id b) const override;

  std::size_t block_size() const { return pattern_.n(); }
  std::size_t block_of(Id e) const { return e / pattern_.n(); }
  Id inner_of(Id e) const { return e % pattern_.n(); }
  Id x_element(std::size_t block) const {
    return block * pattern_.n() + x_;
  }
  Id distinguished() const { return x_; }
  const Injection& injection() const { return f_; }
  const FinitePoset& pattern() const { return pattern_; }

 private:
  void build_to_block(std::size_t s) const;

  Injection f_;
  FinitePoset pattern_;
  Id x_;
  // Cache of the staged relation over all blocks built so far.
  mutable std::size_t built_blocks_ = 0;
  mutable std::vector<uint8_t> below_;  // n x n with n = built elements
};

// Decoders (the executable content of the reversals).

// For n in S true: ran(f) up to f(n) is f[{0..n}].  Returns the
// membership table on [0, f(max S)); errors if S has a false member.
std::vector<uint8_t> decode_range_from_true(const Injection& f,
                                            const std::vector<std::size_t>& S);

// Greedy id-order search for an id-increasing sequence with
// b_m \nleq b_n for m < n.  For Xi posets the search is guided through
// the non-distinguished elements first (the lemma's y-elements).
std::optional<std::vector<Id>> find_bad_sequence(const Poset& p,
                                                 std::size_t window,
                                                 std::size_t target_len);

// Verifies B is bad in q, then decodes the true numbers below B's last
// block by the lemma's search (an element of a later block sitting
// below x_n), and the range table from those.
std::vector<uint8_t> decode_range_from_bad_sequence(const XiPoset& q,
                                                    const std::vector<Id>& B);

}  // namespace ordlab

#endif
