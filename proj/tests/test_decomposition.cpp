#include <doctest.h>

#include <numeric>

#include "ordlab/adversaries.hpp"
#include "ordlab/decomposition.hpp"
#include "ordlab/families.hpp"
#include "ordlab/width.hpp"

using namespace ordlab;

namespace {

FinitePoset disjoint_chains(std::size_t count, std::size_t len) {
  std::vector<std::pair<Id, Id>> pairs;
  for (std::size_t c = 0; c < count; ++c)
    for (std::size_t i = 0; i + 1 < len; ++i)
      pairs.emplace_back(c * len + i, c * len + i + 1);
  return FinitePoset(count * len, pairs);
}

void check_partition(const Poset& p, const ChainFamily& fam, std::size_t n) {
  std::vector<uint8_t> seen(n, 0);
  for (const auto& chain : fam.chains) {
    CHECK(classify_set(p, chain) == SetKind::Chain);
    for (Id e : chain) {
      REQUIRE(e < n);
      CHECK(seen[e] == 0);
      seen[e] = 1;
    }
  }
  for (Id e = 0; e < n; ++e) CHECK(seen[e] == 1);
}

}  // namespace

TEST_CASE("chain bound values") {
  CHECK(OnlinePartitioner::chain_bound(1) == 1);
  CHECK(OnlinePartitioner::chain_bound(2) == 6);
  CHECK(OnlinePartitioner::chain_bound(3) == 31);
}

TEST_CASE("online partition of a chain uses one chain") {
  OmegaPoset omega;
  const ChainFamily fam = online_partition(omega, 1, 50);
  CHECK(fam.k == 1);
  check_partition(omega, fam, 50);
}

TEST_CASE("online partition respects the classical bound on catalogs") {
  for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      auto g = generate({"shifted_chains", {{"k", k}}, seed});
      const ChainFamily fam = online_partition(*g.poset, k, 300);
      CHECK(fam.k <= OnlinePartitioner::chain_bound(k));
      check_partition(*g.poset, fam, 300);

      // Prefix stability against a longer run.
      const ChainFamily longer = online_partition(*g.poset, k, 600);
      for (Id e = 0; e < 300; ++e)
        CHECK(fam.chain_of(e) == longer.chain_of(e));
    }
  }
}

TEST_CASE("width promise violations carry an antichain witness") {
  const FinitePoset anti3(3, {});
  CHECK_THROWS_AS(online_partition(anti3, 2, 3), WidthPromiseViolated);
  try {
    online_partition(anti3, 2, 3);
  } catch (const WidthPromiseViolated& e) {
    CHECK(e.antichain.size() == 3);
    CHECK(classify_set(anti3, e.antichain) == SetKind::Antichain);
  }

  // A width-4 stream against k=3.
  const FinitePoset anti4(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}});
  CHECK_THROWS_AS(online_partition(anti4, 3, 8), WidthPromiseViolated);

  // k = 1 skips the reduction entirely, so the residue check has to
  // catch an incomparable pair on its own.
  const FinitePoset anti2(2, {});
  CHECK_THROWS_AS(online_partition(anti2, 1, 2), WidthPromiseViolated);
}

TEST_CASE("offline partition is optimal") {
  CHECK(offline_partition(disjoint_chains(3, 2)).k == 3);
  CHECK(offline_partition(disjoint_chains(1, 9)).k == 1);
  CHECK(offline_partition(FinitePoset(7, {})).k == 7);

  for (uint64_t seed = 0; seed < 100; ++seed) {
    auto g = generate({"random_finite", {{"n", 12}}, seed});
    const auto* fp = dynamic_cast<const FinitePoset*>(g.poset.get());
    const ChainFamily fam = offline_partition(*fp);
    CHECK(fam.k == width_exact(*fp));
    check_partition(*fp, fam, fp->n());
  }
}

TEST_CASE("chain_from_width meets the pigeonhole bound") {
  OmegaPoset omega;
  std::vector<Id> expect(50);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(chain_from_width(omega, 1, 50) == expect);

  auto two = generate({"shifted_chains", {{"k", 2}}, 4});
  const auto c2 = chain_from_width(*two.poset, 2, 300);
  CHECK(classify_set(*two.poset, c2) == SetKind::Chain);
  CHECK(c2.size() >= 50);  // 300 / 6

  auto three = generate({"shifted_chains", {{"k", 3}}, 4});
  const auto c3 = chain_from_width(*three.poset, 3, 310);
  CHECK(classify_set(*three.poset, c3) == SetKind::Chain);
  CHECK(c3.size() >= 10);  // 310 / 31
}

TEST_CASE("antichain_from_height finds a large color class") {
  const FinitePoset pure(20, {});
  CHECK(antichain_from_height(pure, 1, 20).size() == 20);

  const FinitePoset pairs = disjoint_chains(50, 2);
  const auto anti = antichain_from_height(pairs, 2, 100);
  CHECK(anti.size() >= 25);
  CHECK(classify_set(pairs, anti) == SetKind::Antichain);

  OmegaPoset omega;
  CHECK_THROWS_AS(antichain_from_height(omega, 2, 10), HeightPromiseViolated);
  try {
    antichain_from_height(omega, 2, 10);
  } catch (const HeightPromiseViolated& e) {
    CHECK(e.chain.size() == 3);
    CHECK(classify_set(omega, e.chain) == SetKind::Chain);
  }
}

TEST_CASE("height coloring never pairs comparable elements") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    // Random bipartite-ish posets of height <= 3.
    auto g = generate({"random_finite", {{"n", 18}, {"p_den", 6}}, seed});
    const auto* fp = dynamic_cast<const FinitePoset*>(g.poset.get());
    const std::size_t h = longest_chain(*fp).size();
    const auto anti = antichain_from_height(*fp, h, fp->n());
    CHECK(classify_set(*fp, anti) == SetKind::Antichain);
    CHECK(anti.size() * h * h >= fp->n());
  }
}

TEST_CASE("monotone_extract on the stock linear orders") {
  OmegaPoset omega;
  std::vector<Id> window(60);
  std::iota(window.begin(), window.end(), 0);

  const MonotoneRun up = monotone_extract(omega, window);
  CHECK(up.direction == Direction::Ascending);
  CHECK(up.elements == window);

  OmegaStarPoset omega_star;
  const MonotoneRun down = monotone_extract(omega_star, window);
  CHECK(down.direction == Direction::Descending);
  CHECK(down.elements == window);

  CHECK_THROWS_AS(monotone_extract(omega, {}), EmptyInput);
}

TEST_CASE("monotone_extract ascends through the false part of tf_linear") {
  for (uint64_t seed : {3u, 9u, 27u}) {
    auto g = generate({"tf_linear", {}, seed});
    std::vector<Id> window(200);
    std::iota(window.begin(), window.end(), 0);
    const MonotoneRun run = monotone_extract(*g.poset, window);
    CHECK(run.direction == Direction::Ascending);
    CHECK(run.elements.size() >= 3);
    for (std::size_t i = 0; i + 1 < run.elements.size(); ++i) {
      CHECK(run.elements[i] < run.elements[i + 1]);
      CHECK(g.poset->below(run.elements[i], run.elements[i + 1]));
    }
    // The ascending part of this order is the false numbers; the greedy
    // walk stays inside it until it possibly tops out on a true number.
    const auto* tf = dynamic_cast<const TfLinearPoset*>(g.poset.get());
    REQUIRE(tf != nullptr);
    for (std::size_t i = 0; i + 1 < run.elements.size(); ++i)
      CHECK_FALSE(tf->injection().true_number(run.elements[i]));
  }
}

TEST_CASE("monotone_extract honors the direction hint") {
  OmegaPoset omega;
  std::vector<Id> window(10);
  std::iota(window.begin(), window.end(), 0);
  const MonotoneRun down =
      monotone_extract(omega, window, Direction::Descending);
  CHECK(down.direction == Direction::Descending);
  CHECK(down.elements.size() == 1);
}
