#ifndef ORDLAB_FAMILIES_HPP
#define ORDLAB_FAMILIES_HPP

#include <functional>
#include <memory>

#include <nlohmann/json.hpp>

#include "ordlab/poset.hpp"

namespace ordlab {

struct InvalidFamilyParams : std::runtime_error {
  explicit InvalidFamilyParams(const std::string& what)
      : std::runtime_error(what) {}
};

// A replayable recipe: family name + params + seed fully determine the
// poset.  Params are kept as JSON so specs round-trip through files
// without a per-family schema type.
struct FamilySpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  uint64_t seed = 0;
};

struct GeneratedPoset {
  std::shared_ptr<const Poset> poset;
  // Catalog-declared chain decomposition, when the family has one
  // (product legs, shifted residues, pi02 indices, chain_ext c/l).
  std::size_t natural_k = 1;
  std::function<std::size_t(Id)> chain_class;  // null when natural_k == 1
  // pi02 only: the hidden least total index.
  std::optional<std::size_t> hidden_answer;
};

// ω, ω*, ζ as streamed linear orders on ids.
class OmegaPoset final : public Poset {
 public:
  Ordering compare(Id a, Id b) const override {
    if (a == b) return Ordering::Equal;
    return a < b ? Ordering::Below : Ordering::Above;
  }
};

class OmegaStarPoset final : public Poset {
 public:
  Ordering compare(Id a, Id b) const override {
    if (a == b) return Ordering::Equal;
    return a < b ? Ordering::Above : Ordering::Below;
  }
};

// ζ enumerated 0, -1, 1, -2, 2, ...
class ZetaPoset final : public Poset {
 public:
  static long long value(Id e) {
    return e % 2 == 0 ? static_cast<long long>(e / 2)
                      : -static_cast<long long>(e / 2) - 1;
  }
  Ordering compare(Id a, Id b) const override {
    if (a == b) return Ordering::Equal;
    return value(a) < value(b) ? Ordering::Below : Ordering::Above;
  }
};

// k interleaved chains with shift offsets: element e sits at position
// e div k on chain e mod k; (i,m) < (j,n) iff same chain and m < n, or
// different chains and m + s(i,j) <= n.  Shift matrix obligations:
// s(i,i)=0, triangle s(i,l) <= s(i,j)+s(j,l) (infinity allowed), and
// s(i,j)+s(j,i) >= 1 off-diagonal, which together give a transitive
// antisymmetric rule of width <= k.
class ShiftedChainsPoset final : public Poset {
 public:
  static constexpr uint64_t kInf = ~uint64_t{0};

  ShiftedChainsPoset(std::size_t k, std::vector<uint64_t> shifts);
  Ordering compare(Id a, Id b) const override;

  std::size_t k() const { return k_; }
  std::size_t chain_of(Id e) const { return e % k_; }
  uint64_t shift(std::size_t i, std::size_t j) const {
    return shifts_[i * k_ + j];
  }

 private:
  std::size_t k_;
  std::vector<uint64_t> shifts_;  // row-major k x k
};

GeneratedPoset generate(const FamilySpec& spec);

FamilySpec family_spec_from_json(const nlohmann::json& j);
nlohmann::json family_spec_to_json(const FamilySpec& spec);

}  // namespace ordlab

#endif
