#include "ordlab/families.hpp"

#include <algorithm>

#include "ordlab/adversaries.hpp"
#include "ordlab/rng.hpp"

namespace ordlab {

ShiftedChainsPoset::ShiftedChainsPoset(std::size_t k,
                                       std::vector<uint64_t> shifts)
    : k_(k), shifts_(std::move(shifts)) {
  if (k_ == 0) throw InvalidFamilyParams("shifted_chains: k must be >= 1");
  if (shifts_.size() != k_ * k_)
    throw InvalidFamilyParams("shifted_chains: shift matrix must be k x k");
  for (std::size_t i = 0; i < k_; ++i)
    if (shift(i, i) != 0)
      throw InvalidFamilyParams("shifted_chains: diagonal shifts must be 0");
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = 0; j < k_; ++j) {
      if (i != j && shift(i, j) != kInf && shift(j, i) != kInf &&
          shift(i, j) + shift(j, i) < 1)
        throw InvalidFamilyParams(
            "shifted_chains: antisymmetry needs s(i,j)+s(j,i) >= 1");
      for (std::size_t l = 0; l < k_; ++l) {
        if (shift(i, j) == kInf || shift(j, l) == kInf) continue;
        if (shift(i, l) > shift(i, j) + shift(j, l))
          throw InvalidFamilyParams(
              "shifted_chains: triangle inequality violated");
      }
    }
}

Ordering ShiftedChainsPoset::compare(Id a, Id b) const {
  if (a == b) return Ordering::Equal;
  const std::size_t i = chain_of(a), j = chain_of(b);
  const uint64_t m = a / k_, n = b / k_;
  auto strictly_below = [&](std::size_t ci, uint64_t pm, std::size_t cj,
                            uint64_t pn) {
    if (ci == cj) return pm < pn;
    const uint64_t s = shift(ci, cj);
    return s != kInf && pm + s <= pn;
  };
  if (strictly_below(i, m, j, n)) return Ordering::Below;
  if (strictly_below(j, n, i, m)) return Ordering::Above;
  return Ordering::Incomparable;
}

namespace {

Injection injection_from_json(const nlohmann::json& j, uint64_t fallback_seed) {
  if (!j.is_object()) throw InvalidFamilyParams("injection spec must be an object");
  const std::string kind = j.value("kind", "seeded");
  if (kind == "list") {
    if (!j.contains("values"))
      throw InvalidFamilyParams("list injection needs \"values\"");
    return Injection::from_values(
        j.at("values").get<std::vector<uint64_t>>());
  }
  if (kind == "seeded") {
    const uint64_t seed = j.value("seed", fallback_seed);
    const std::size_t domain = j.value("domain", std::size_t{200});
    if (domain == 0)
      throw InvalidFamilyParams("seeded injection needs domain >= 1");
    return Injection::seeded(seed, domain);
  }
  throw InvalidFamilyParams("unknown injection kind: " + kind);
}

Injection injection_from_params(const FamilySpec& spec) {
  if (spec.params.contains("injection"))
    return injection_from_json(spec.params.at("injection"), spec.seed);
  return Injection::seeded(spec.seed, spec.params.value("domain", std::size_t{200}));
}

std::vector<uint64_t> sample_shift_matrix(std::size_t k, uint64_t seed) {
  constexpr uint64_t kInf = ShiftedChainsPoset::kInf;
  Rng rng(seed);
  for (int attempt = 0; attempt < 128; ++attempt) {
    std::vector<uint64_t> s(k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        const uint64_t draw = rng.below(6);
        s[i * k + j] = draw == 5 ? kInf : draw;
      }
    // Min-plus closure restores the triangle inequality.
    for (std::size_t mid = 0; mid < k; ++mid)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          if (s[i * k + mid] == kInf || s[mid * k + j] == kInf) continue;
          s[i * k + j] =
              std::min(s[i * k + j], s[i * k + mid] + s[mid * k + j]);
        }
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (s[i * k + i] != 0) ok = false;  // negative-cycle analog
      for (std::size_t j = 0; j < k && ok; ++j)
        if (i != j && s[i * k + j] != kInf && s[j * k + i] != kInf &&
            s[i * k + j] + s[j * k + i] < 1)
          ok = false;
    }
    if (ok) return s;
  }
  throw InvalidFamilyParams("shifted_chains: could not sample a valid matrix");
}

std::vector<uint64_t> shift_matrix_from_params(const FamilySpec& spec,
                                               std::size_t k) {
  if (!spec.params.contains("shifts")) return sample_shift_matrix(k, spec.seed);
  const auto& rows = spec.params.at("shifts");
  if (!rows.is_array() || rows.size() != k)
    throw InvalidFamilyParams("shifted_chains: shifts must be a k x k matrix");
  std::vector<uint64_t> s;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != k)
      throw InvalidFamilyParams("shifted_chains: shifts must be a k x k matrix");
    for (const auto& cell : row) {
      const int64_t v = cell.get<int64_t>();
      s.push_back(v < 0 ? ShiftedChainsPoset::kInf
                        : static_cast<uint64_t>(v));
    }
  }
  return s;
}

GeneratedPoset wrap_linear(std::shared_ptr<const Poset> p) {
  GeneratedPoset g;
  g.poset = std::move(p);
  g.natural_k = 1;
  return g;
}

}  // namespace

GeneratedPoset generate(const FamilySpec& raw) {
  FamilySpec spec = raw;
  if (!spec.params.is_object()) spec.params = nlohmann::json::object();
  if (spec.name == "omega") return wrap_linear(std::make_shared<OmegaPoset>());
  if (spec.name == "omega_star")
    return wrap_linear(std::make_shared<OmegaStarPoset>());
  if (spec.name == "zeta") return wrap_linear(std::make_shared<ZetaPoset>());

  if (spec.name == "shifted_chains") {
    if (!spec.params.contains("k"))
      throw InvalidFamilyParams("shifted_chains: missing k");
    const std::size_t k = spec.params.at("k").get<std::size_t>();
    auto p = std::make_shared<ShiftedChainsPoset>(
        k, shift_matrix_from_params(spec, k));
    GeneratedPoset g;
    g.poset = p;
    g.natural_k = k;
    g.chain_class = [p](Id e) { return p->chain_of(e); };
    return g;
  }

  if (spec.name == "random_finite") {
    if (!spec.params.contains("n"))
      throw InvalidFamilyParams("random_finite: missing n");
    const std::size_t n = spec.params.at("n").get<std::size_t>();
    const uint64_t num = spec.params.value("p_num", uint64_t{1});
    const uint64_t den = spec.params.value("p_den", uint64_t{3});
    if (den == 0 || num > den)
      throw InvalidFamilyParams("random_finite: edge probability invalid");
    Rng rng(spec.seed);
    std::vector<std::pair<Id, Id>> pairs;
    for (Id a = 0; a < n; ++a)
      for (Id b = a + 1; b < n; ++b)
        if (rng.chance(num, den)) pairs.emplace_back(a, b);
    GeneratedPoset g;
    g.poset = std::make_shared<FinitePoset>(n, pairs);
    g.natural_k = 0;
    return g;
  }

  if (spec.name == "tf_linear")
    return wrap_linear(
        std::make_shared<TfLinearPoset>(injection_from_params(spec)));

  if (spec.name == "xi") {
    FinitePoset pattern;
    Id x = spec.params.value("x", Id{0});
    if (spec.params.contains("pattern_n")) {
      const std::size_t pn = spec.params.at("pattern_n").get<std::size_t>();
      std::vector<std::pair<Id, Id>> pairs;
      for (const auto& pr :
           spec.params.value("pattern_pairs", nlohmann::json::array()))
        pairs.emplace_back(pr.at(0).get<Id>(), pr.at(1).get<Id>());
      pattern = FinitePoset(pn, pairs);
    } else {
      pattern = FinitePoset(2, {});  // two incomparable points {x, y}
    }
    GeneratedPoset g;
    g.poset = std::make_shared<XiPoset>(injection_from_params(spec),
                                        std::move(pattern), x);
    g.natural_k = 0;
    return g;
  }

  if (spec.name == "product_lq2" || spec.name == "product_lq3") {
    FamilySpec base;
    if (spec.params.contains("base")) {
      const auto& b = spec.params.at("base");
      base.name = b.value("name", "omega");
      base.params = b.value("params", nlohmann::json::object());
      base.seed = b.value("seed", spec.seed);
    } else {
      base.name = "omega";
      base.seed = spec.seed;
    }
    GeneratedPoset inner = generate(base);
    if (inner.natural_k > 1)
      throw InvalidFamilyParams("product base must be a linear family");
    const LqVariant v =
        spec.name == "product_lq2" ? LqVariant::Q2 : LqVariant::Q3;
    auto p = std::make_shared<ProductLqPoset>(inner.poset, v);
    GeneratedPoset g;
    g.poset = p;
    g.natural_k = p->legs();
    g.chain_class = [p](Id e) { return p->leg_of(e); };
    return g;
  }

  if (spec.name == "pi02") {
    std::vector<Pi02Entry> profile;
    if (spec.params.contains("profile")) {
      for (const auto& e : spec.params.at("profile")) {
        Pi02Entry ent;
        const std::string kind = e.value("kind", "total");
        ent.total = kind == "total";
        ent.rate = e.value("rate", uint64_t{1});
        if (!ent.total) {
          if (kind != "fails")
            throw InvalidFamilyParams("pi02: entry kind must be total|fails");
          ent.fails_at = e.value("x", std::size_t{1});
        }
        profile.push_back(ent);
      }
    } else {
      const std::size_t count = spec.params.value("indices", std::size_t{3});
      Rng rng(spec.seed);
      for (std::size_t i = 0; i < count; ++i) {
        Pi02Entry ent;
        ent.total = rng.chance(1, 2);
        ent.rate = 1 + rng.below(3);
        if (!ent.total) ent.fails_at = 2 + rng.below(20);
        profile.push_back(ent);
      }
      if (std::none_of(profile.begin(), profile.end(),
                       [](const Pi02Entry& e) { return e.total; }))
        profile.back().total = true;
    }
    std::shared_ptr<Pi02Poset> p;
    try {
      p = std::make_shared<Pi02Poset>(std::move(profile));
    } catch (const OutOfRange& e) {
      throw InvalidFamilyParams(std::string("pi02: ") + e.what());
    }
    GeneratedPoset g;
    g.poset = p;
    g.natural_k = p->index_count();
    g.chain_class = [p](Id e) { return p->chain_of(e); };
    g.hidden_answer = p->least_total_index();
    return g;
  }

  if (spec.name == "chain_ext") {
    auto p = std::make_shared<ChainExtPoset>(injection_from_params(spec));
    GeneratedPoset g;
    g.poset = p;
    g.natural_k = 2;
    g.chain_class = [](Id e) { return ChainExtPoset::is_c(e) ? 0u : 1u; };
    return g;
  }

  throw InvalidFamilyParams("unknown family: " + spec.name);
}

FamilySpec family_spec_from_json(const nlohmann::json& j) {
  FamilySpec spec;
  if (!j.contains("name")) throw ParseError("family spec missing name");
  spec.name = j.at("name").get<std::string>();
  spec.params = j.value("params", nlohmann::json::object());
  spec.seed = j.value("seed", uint64_t{0});
  return spec;
}

nlohmann::json family_spec_to_json(const FamilySpec& spec) {
  return nlohmann::json{{"kind", "family"},
                        {"name", spec.name},
                        {"params", spec.params},
                        {"seed", spec.seed}};
}

}  // namespace ordlab
