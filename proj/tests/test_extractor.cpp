#include "ordlab/extractor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <doctest.h>

#include "ordlab/adversaries.hpp"
#include "ordlab/chains_trees.hpp"
#include "ordlab/families.hpp"
#include "ordlab/rng.hpp"

using namespace ordlab;

namespace {

ChainFamily window_family(const GeneratedPoset& g, std::size_t window) {
  ChainFamily fam;
  fam.k = g.natural_k;
  fam.chains.resize(g.natural_k);
  for (Id e = 0; e < window; ++e) fam.chains[g.chain_class(e)].push_back(e);
  return fam;
}

ChainPrefix prefix_of(const std::vector<Id>& chain, std::size_t len) {
  ChainPrefix A;
  for (std::size_t j = 0; j < len && j < chain.size(); ++j)
    A.elements.push_back(chain[j]);
  A.ascending = true;
  return A;
}

// Independent reading of "certificate passes": no window element is
// comparable with some-but-few listed elements while missing the
// chain's end.
bool brute_pass(const Poset& p, const ChainPrefix& chain, std::size_t m,
                std::size_t window) {
  if (chain.elements.empty()) return true;
  const Id end = chain.elements.back();
  for (Id e = 0; e < window; ++e) {
    std::size_t count = 0;
    for (Id c : chain.elements)
      if (e == c || p.comp(e, c)) ++count;
    if (count > 0 && count < m && e != end && !p.comp(e, end)) return false;
  }
  return true;
}

bool listed_ascending(const Poset& p, const std::vector<Id>& elems) {
  for (std::size_t i = 0; i + 1 < elems.size(); ++i)
    if (!p.below(elems[i], elems[i + 1])) return false;
  return true;
}

// --- labeled tree scaffolding ---

std::size_t add_vertex(LabeledTree& t, std::size_t parent, std::size_t label) {
  TreeVertex v;
  v.parent = parent;
  v.label = label;
  t.vertices.push_back(v);
  if (parent != ~std::size_t{0})
    t.vertices[parent].children.push_back(t.vertices.size() - 1);
  return t.vertices.size() - 1;
}

bool vertex_qualifies(const LabeledTree& t, std::size_t v) {
  if (t.vertices[v].children.empty()) return false;
  for (std::size_t c : t.vertices[v].children) {
    // some proper descendant of c must carry v's label
    std::vector<std::size_t> stack{c};
    bool found = false;
    while (!stack.empty() && !found) {
      const std::size_t u = stack.back();
      stack.pop_back();
      if (u != c && t.vertices[u].label == t.vertices[v].label) found = true;
      for (std::size_t w : t.vertices[u].children) stack.push_back(w);
    }
    if (!found) return false;
  }
  return true;
}

// Enumerates every labeling of the complete (k-1)-ary tree of height k
// where each internal vertex assigns its children distinct labels
// different from its own, and calls `visit` on each.
void enumerate_labelings(std::size_t k,
                         const std::function<void(const LabeledTree&)>& visit) {
  // Skeleton: complete (k-1)-ary tree of height k, vertices in BFS order.
  struct Skel {
    std::size_t parent;
    std::size_t depth;
  };
  std::vector<Skel> skel{{~std::size_t{0}, 0}};
  for (std::size_t v = 0; v < skel.size(); ++v)
    if (skel[v].depth < k)
      for (std::size_t c = 0; c + 1 < k; ++c)
        skel.push_back({v, skel[v].depth + 1});

  std::vector<std::size_t> labels(skel.size(), 0);
  // Recursive assignment: vertex order is BFS, so parents come first.
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == skel.size()) {
      LabeledTree t;
      t.k = k;
      for (std::size_t u = 0; u < skel.size(); ++u)
        add_vertex(t, skel[u].parent, labels[u]);
      visit(t);
      return;
    }
    if (v == 0) {
      for (std::size_t l = 0; l < k; ++l) {
        labels[0] = l;
        rec(1);
      }
      return;
    }
    const std::size_t parent = skel[v].parent;
    for (std::size_t l = 0; l < k; ++l) {
      if (l == labels[parent]) continue;
      bool taken = false;  // distinct among earlier siblings
      for (std::size_t u = v; u-- > 0;) {
        if (skel[u].parent != parent) continue;
        if (labels[u] == l) taken = true;
      }
      if (taken) continue;
      labels[v] = l;
      rec(v + 1);
    }
  };
  rec(0);
}

// Random tree with uniform leaf depth k over k labels: every internal
// vertex keeps a random nonempty set of validly labeled children.
LabeledTree random_labeled_tree(std::size_t k, Rng& rng) {
  LabeledTree t;
  t.k = k;
  std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t v,
                                                           std::size_t depth) {
    if (depth == k) return;
    std::vector<std::size_t> options;
    for (std::size_t l = 0; l < k; ++l)
      if (l != t.vertices[v].label) options.push_back(l);
    bool any = false;
    while (!any)
      for (std::size_t l : options)
        if (rng.chance(1, 2)) {
          any = true;
          grow(add_vertex(t, v, l), depth + 1);
        }
  };
  add_vertex(t, ~std::size_t{0}, rng.below(k));
  grow(0, 0);
  return t;
}

}  // namespace

TEST_CASE("label walk on a two-label path returns the root") {
  LabeledTree t;
  t.k = 2;
  add_vertex(t, ~std::size_t{0}, 0);
  add_vertex(t, 0, 1);
  add_vertex(t, 1, 0);
  CHECK(tree_helper(t) == 0);
  CHECK(vertex_qualifies(t, 0));
}

TEST_CASE("label walk satisfies its conclusion on every small tree") {
  for (std::size_t k : {2u, 3u}) {
    std::size_t seen = 0;
    enumerate_labelings(k, [&](const LabeledTree& t) {
      ++seen;
      const std::size_t sigma = tree_helper(t);
      CHECK(vertex_qualifies(t, sigma));
      bool exists = false;  // brute force over all vertices
      for (std::size_t v = 0; v < t.vertices.size(); ++v)
        if (vertex_qualifies(t, v)) exists = true;
      CHECK(exists);
    });
    CHECK(seen == (k == 2 ? 2 : 384));
  }
}

TEST_CASE("label walk descends when the root lacks a witness") {
  // Root 0 with subtrees that avoid label 0 entirely; the walk must
  // move into the lowest-labeled child and settle there.
  LabeledTree t;
  t.k = 3;
  add_vertex(t, ~std::size_t{0}, 0);
  const std::size_t c1 = add_vertex(t, 0, 1);
  const std::size_t d = add_vertex(t, c1, 2);
  add_vertex(t, d, 1);
  const std::size_t c2 = add_vertex(t, 0, 2);
  const std::size_t e = add_vertex(t, c2, 1);
  add_vertex(t, e, 2);
  CHECK_FALSE(vertex_qualifies(t, 0));
  CHECK(tree_helper(t) == c1);
  CHECK(vertex_qualifies(t, c1));
}

TEST_CASE("label walk rejects malformed trees") {
  LabeledTree shallow;  // leaf above the bottom level
  shallow.k = 2;
  add_vertex(shallow, ~std::size_t{0}, 0);
  add_vertex(shallow, 0, 1);
  CHECK_THROWS_AS(tree_helper(shallow), HypothesisViolated);

  LabeledTree echo;  // child repeats the parent's label
  echo.k = 2;
  add_vertex(echo, ~std::size_t{0}, 0);
  add_vertex(echo, 0, 0);
  add_vertex(echo, 1, 1);
  CHECK_THROWS_AS(tree_helper(echo), HypothesisViolated);

  LabeledTree twins;  // duplicate labels among siblings
  twins.k = 3;
  add_vertex(twins, ~std::size_t{0}, 0);
  const std::size_t a = add_vertex(twins, 0, 1);
  const std::size_t b = add_vertex(twins, 0, 1);
  const std::size_t a2 = add_vertex(twins, a, 2);
  const std::size_t b2 = add_vertex(twins, b, 2);
  add_vertex(twins, a2, 0);
  add_vertex(twins, b2, 0);
  CHECK_THROWS_AS(tree_helper(twins), HypothesisViolated);
}

TEST_CASE("label walk handles a thousand random four-label trees") {
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(Rng::derive(9100, seed));
    const LabeledTree t = random_labeled_tree(4, rng);
    const std::size_t sigma = tree_helper(t);
    CHECK(vertex_qualifies(t, sigma));
    bool exists = false;
    for (std::size_t v = 0; v < t.vertices.size(); ++v)
      if (vertex_qualifies(t, v)) exists = true;
    CHECK(exists);
  }
}

TEST_CASE("tower extraction on a single chain returns its seed") {
  GeneratedPoset g = generate({"omega", {}, 0});
  ChainFamily fam;
  fam.k = 1;
  fam.chains.resize(1);
  for (Id e = 0; e < 500; ++e) fam.chains[0].push_back(e);
  const ChainPrefix A = prefix_of(fam.chains[0], 24);
  const ExtractionResult r = extract_tower(*g.poset, fam, A, {});
  CHECK(r.chain.elements == A.elements);
  CHECK(r.certificate.passes());
  CHECK(r.transcript.strategy == "tower");
}

TEST_CASE("tower extraction stays in the top leg of the products") {
  for (const char* name : {"product_lq2", "product_lq3"}) {
    CAPTURE(name);
    GeneratedPoset g = generate({name, {}, 0});
    const ChainFamily fam = window_family(g, 500);
    const ChainPrefix A = prefix_of(fam.chains[g.natural_k - 1], 24);
    const ExtractionResult r = extract_tower(*g.poset, fam, A, {});
    CHECK(r.chain.elements.size() >= 20);
    for (Id e : r.chain.elements) CHECK(g.chain_class(e) == g.natural_k - 1);
    CHECK(r.certificate.passes());
    CHECK(brute_pass(*g.poset, r.chain, 10, 500));
    CHECK(listed_ascending(*g.poset, r.chain.elements));
  }
}

TEST_CASE("tower extraction merges witness sequences on shifted chains") {
  const nlohmann::json s2 = {{"k", 2}, {"shifts", {{0, 3}, {3, 0}}}};
  const nlohmann::json s3 = {
      {"k", 3}, {"shifts", {{0, 3, 3}, {3, 0, 3}, {3, 3, 0}}}};
  for (const auto& params : {s2, s3}) {
    GeneratedPoset g = generate({"shifted_chains", params, 0});
    const ChainFamily fam = window_family(g, 500);
    const ChainPrefix A = prefix_of(fam.chains[0], 48);
    const ExtractionResult r = extract_tower(*g.poset, fam, A, {});
    CHECK(r.chain.elements.size() >= 20);
    CHECK(r.certificate.passes());
    CHECK(brute_pass(*g.poset, r.chain, 10, 500));
    CHECK(listed_ascending(*g.poset, r.chain.elements));
    // Mutual domination keeps the whole ladder tree answering, so the
    // run goes through the witness merge and records the y-sequence.
    CHECK_FALSE(r.transcript.y_seq.empty());
    // Every recorded y dominates the x-entry at its own index.
    for (std::size_t n = 0; n < r.transcript.y_seq.size(); ++n)
      CHECK(g.poset->comp(r.transcript.y_seq[n], r.transcript.x_seq[n]));
  }
}

TEST_CASE("tower extraction lands in the surviving chain of staged families") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    GeneratedPoset g = generate({"pi02", {{"indices", 3}}, seed});
    const ChainFamily fam = window_family(g, 500);
    std::size_t pick = fam.chains.size();
    for (std::size_t i = fam.chains.size(); i-- > 0;)
      if (fam.chains[i].size() >= 48) {
        pick = i;
        break;
      }
    REQUIRE(pick < fam.chains.size());
    const ChainPrefix A = prefix_of(fam.chains[pick], 48);
    const ExtractionResult r = extract_tower(*g.poset, fam, A, {});
    CHECK(r.chain.elements.size() >= 20);
    CHECK(r.certificate.passes());
    REQUIRE(g.hidden_answer.has_value());
    for (Id e : r.chain.elements) CHECK(g.chain_class(e) == *g.hidden_answer);
  }
}

TEST_CASE("tower extraction replays identically") {
  GeneratedPoset g = generate({"product_lq3", {}, 0});
  const ChainFamily fam = window_family(g, 500);
  const ChainPrefix A = prefix_of(fam.chains[2], 24);
  const ExtractionResult a = extract_tower(*g.poset, fam, A, {});
  const ExtractionResult b = extract_tower(*g.poset, fam, A, {});
  CHECK(a.chain.elements == b.chain.elements);
  CHECK(a.transcript.node_path == b.transcript.node_path);
  CHECK(a.transcript.x_seq == b.transcript.x_seq);
  CHECK(a.transcript.trimmed == b.transcript.trimmed);
}

TEST_CASE("tower extraction rejects bad seeds") {
  GeneratedPoset g = generate({"product_lq3", {}, 0});
  const ChainFamily fam = window_family(g, 500);
  ChainPrefix empty;
  CHECK_THROWS_AS(extract_tower(*g.poset, fam, empty, {}), SeedNotAscending);
  ChainPrefix mixed;  // crosses legs, so it is not ascending in one chain
  mixed.elements = {0, 1};
  CHECK_THROWS_AS(extract_tower(*g.poset, fam, mixed, {}), SeedNotAscending);
}

TEST_CASE("width-two diagonal degenerates to the seed on a chain") {
  GeneratedPoset g = generate({"omega", {}, 0});
  ChainPrefix A;
  for (Id e = 0; e < 10; ++e) A.elements.push_back(e);
  A.ascending = true;
  ExtractParams pr;
  pr.window = 400;
  const ExtractionResult r = extract_w2_diagonal(*g.poset, A, pr);
  CHECK(r.chain.elements == A.elements);
  CHECK(r.certificate.passes());
  CHECK(r.transcript.strategy == "w2-diagonal");
}

TEST_CASE("width-two diagonal on the two-legged product") {
  GeneratedPoset g = generate({"product_lq2", {}, 0});
  const ChainFamily fam = window_family(g, 400);
  const ChainPrefix A = prefix_of(fam.chains[0], 10);
  ExtractParams pr;
  pr.window = 400;
  const ExtractionResult r = extract_w2_diagonal(*g.poset, A, pr);
  CHECK_FALSE(r.chain.elements.empty());
  CHECK(listed_ascending(*g.poset, r.chain.elements));
  CHECK(r.certificate.passes());
  CHECK(brute_pass(*g.poset, r.chain, 10, 400));
}

TEST_CASE("width-two diagonal on the chain-extension order") {
  for (uint64_t seed : {7ull, 19ull, 40ull}) {
    CAPTURE(seed);
    GeneratedPoset g = generate({"chain_ext", {}, seed});
    ChainPrefix A;
    for (std::size_t n = 0; n < 10; ++n)
      A.elements.push_back(ChainExtPoset::c_id(n));
    A.ascending = true;
    ExtractParams pr;
    pr.window = 400;
    const ExtractionResult r = extract_w2_diagonal(*g.poset, A, pr);
    CHECK_FALSE(r.chain.elements.empty());
    CHECK(listed_ascending(*g.poset, r.chain.elements));
    CHECK(r.certificate.passes());
    CHECK(brute_pass(*g.poset, r.chain, 10, 400));
  }
}

TEST_CASE("coloring table enforces its shape") {
  ColoringTable c(6, 3, 2);
  c.set(0, 1, 2);
  CHECK(c.at(0, 1) == 2);
  CHECK(c.at(0, 2) == 0);
  CHECK_THROWS_AS(c.at(3, 3), OutOfRange);
  CHECK_THROWS_AS(c.set(4, 2, 0), OutOfRange);
  CHECK_THROWS_AS(c.set(0, 1, 3), OutOfRange);
}

TEST_CASE("stable coloring extraction keeps everything on a constant table") {
  ColoringTable c(40, 3, 0);
  for (std::size_t x = 0; x < 40; ++x)
    for (std::size_t y = x + 1; y < 40; ++y) c.set(x, y, 1);
  const SsrtResult r = ssrt_extract(c);
  CHECK(r.color == 1);
  CHECK(r.members.size() == 39);  // every row that has colors at all
}

TEST_CASE("stable coloring extraction recovers a color class of f") {
  Rng rng(4242);
  std::vector<std::size_t> f(60);
  for (auto& v : f) v = rng.below(2);
  ColoringTable c(60, 2, 0);
  for (std::size_t x = 0; x < 60; ++x)
    for (std::size_t y = x + 1; y < 60; ++y) c.set(x, y, f[x]);
  const SsrtResult r = ssrt_extract(c);
  CHECK(r.members.size() >= 20);
  for (std::size_t x : r.members) CHECK(f[x] == r.color);
  for (std::size_t i = 0; i < r.members.size(); ++i)
    for (std::size_t j = i + 1; j < r.members.size(); ++j)
      CHECK(c.at(r.members[i], r.members[j]) == r.color);
}

TEST_CASE("stable coloring extraction is homogeneous on seeded tables") {
  const std::size_t N = 500;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    CAPTURE(seed);
    Rng rng(Rng::derive(7700, seed));
    ColoringTable c(N, 3, 2);
    for (std::size_t x = 0; x + 1 < N; ++x) {
      // Up to two color changes, settling within a short horizon.
      std::size_t c0 = rng.below(3), c1 = rng.below(3), c2 = rng.below(3);
      std::size_t p1 = x + 1 + rng.below(40), p2 = p1 + 1 + rng.below(40);
      for (std::size_t y = x + 1; y < N; ++y)
        c.set(x, y, y < p1 ? c0 : (y < p2 ? c1 : c2));
    }
    const SsrtResult r = ssrt_extract(c);
    CHECK(r.members.size() >= 10);
    for (std::size_t i = 0; i < r.members.size(); ++i)
      for (std::size_t j = i + 1; j < r.members.size(); ++j)
        CHECK(c.at(r.members[i], r.members[j]) == r.color);
  }
}

TEST_CASE("stable coloring extraction rejects unstable rows") {
  ColoringTable c(12, 2, 2);
  for (std::size_t y = 1; y < 12; ++y) c.set(0, y, y % 2);  // flips every step
  CHECK_THROWS_AS(ssrt_extract(c), StabilityViolated);
}

TEST_CASE("two-chain extraction returns the lone chain when one is empty") {
  GeneratedPoset g = generate({"omega", {}, 0});
  ChainFamily fam;
  fam.k = 2;
  fam.chains.resize(2);
  for (Id e = 0; e < 400; ++e) fam.chains[0].push_back(e);
  ExtractParams pr;
  pr.window = 400;
  const ExtractionResult r = extract_cd2_sads(*g.poset, fam, pr);
  CHECK(r.chain.elements == fam.chains[0]);
  CHECK(r.certificate.passes());
}

TEST_CASE("two-chain extraction takes the incomparable branch") {
  // Two chains with no comparabilities across: the coloring is
  // constantly zero and the whole homogeneous set survives.
  const nlohmann::json params = {{"k", 2}, {"shifts", {{0, -1}, {-1, 0}}}};
  GeneratedPoset g = generate({"shifted_chains", params, 0});
  const ChainFamily fam = window_family(g, 400);
  ExtractParams pr;
  pr.window = 400;
  const ExtractionResult r = extract_cd2_sads(*g.poset, fam, pr);
  CHECK(r.transcript.m == 0);  // homogeneous color
  CHECK(r.chain.elements.size() >= 20);
  for (Id e : r.chain.elements) CHECK(g.chain_class(e) == 0);
  CHECK(r.certificate.passes());
}

TEST_CASE("two-chain extraction on the two-legged product") {
  GeneratedPoset g = generate({"product_lq2", {}, 0});
  const ChainFamily fam = window_family(g, 400);
  ExtractParams pr;
  pr.window = 400;
  const ExtractionResult r = extract_cd2_sads(*g.poset, fam, pr);
  CHECK(r.chain.elements.size() >= 20);
  CHECK(r.certificate.passes());
  CHECK(brute_pass(*g.poset, r.chain, 10, 400));
  ChainFamily one;
  one.k = 1;
  one.chains.resize(1);
  CHECK_THROWS_AS(extract_cd2_sads(*g.poset, one, pr), NotTwoChains);
  CHECK_THROWS_AS(extract_cd2_sads(*g.poset, window_family(g, 3), pr),
                  WindowTooSmall);
}

TEST_CASE("well-founded split on plain linear orders") {
  GeneratedPoset up = generate({"omega", {}, 0});
  const WfSplit s_up = wf_split(*up.poset, 200, 16);
  CHECK(s_up.w.size() == 200);
  CHECK(s_up.r.empty());

  GeneratedPoset down = generate({"omega_star", {}, 0});
  const WfSplit s_down = wf_split(*down.poset, 200, 16);
  CHECK(s_down.w.size() <= 17);  // end-of-window artifacts only
  CHECK(s_down.r.size() >= 183);

  GeneratedPoset wide = generate({"product_lq2", {}, 0});
  CHECK_THROWS_AS(wf_split(*wide.poset, 50, 8), NotLinear);
}

TEST_CASE("well-founded split recovers the true numbers of a stage order") {
  // Injection with a dense, known true set: spiked values fall within
  // one step, everything else keeps ascending.
  std::vector<uint64_t> vals;
  for (uint64_t n = 0; n < 200; ++n)
    vals.push_back(n % 7 == 0 ? 3 * n + 50 : 3 * n);
  const Injection f = Injection::from_values(vals);
  const TfLinearPoset tf(f);
  const WfSplit s = wf_split(tf, 200, 16);
  std::vector<uint8_t> in_r(200, 0);
  for (Id e : s.r) in_r[e] = 1;
  for (std::size_t n = 0; n < 50; ++n) {
    CAPTURE(n);
    CHECK(in_r[n] == (f.true_number(n) ? 1 : 0));
  }
  // The split is an order cut: everything in W sits below all of R.
  for (Id w : s.w)
    for (Id r : s.r) CHECK(tf.below(w, r));
}

TEST_CASE("per-chain splitting returns the ascent of a linear order") {
  GeneratedPoset g = generate({"omega", {}, 0});
  ChainFamily fam;
  fam.k = 1;
  fam.chains.resize(1);
  for (Id e = 0; e < 500; ++e) fam.chains[0].push_back(e);
  const ExtractionResult r = extract_wfsplit_aca(*g.poset, fam, {});
  CHECK_FALSE(r.transcript.refutation.has_value());
  CHECK(r.chain.elements.size() >= 100);
  CHECK(listed_ascending(*g.poset, r.chain.elements));
  CHECK(r.certificate.passes());
}

TEST_CASE("per-chain splitting finds the uncontested leg of the product") {
  GeneratedPoset g = generate({"product_lq3", {}, 0});
  const ChainFamily fam = window_family(g, 500);
  const ExtractionResult r = extract_wfsplit_aca(*g.poset, fam, {});
  CHECK_FALSE(r.transcript.refutation.has_value());
  CHECK(r.chain.elements.size() >= 20);
  for (Id e : r.chain.elements) CHECK(g.chain_class(e) == 2);
  CHECK_FALSE(find_counterexample(*g.poset, r.chain, 500).has_value());
  CHECK(r.certificate.passes());
}

TEST_CASE("per-chain splitting reports a witness cycle when every ascent fails") {
  // Two 20-element chains, each with one top element sitting above the
  // other chain's bottom and incomparable with the rest of it: every
  // ascent has a counterexample in the opposite chain.
  std::vector<std::pair<Id, Id>> pairs;
  for (std::size_t i = 0; i + 1 < 20; ++i) {
    pairs.push_back({2 * i, 2 * (i + 1)});          // x_i < x_{i+1}
    pairs.push_back({2 * i + 1, 2 * (i + 1) + 1});  // y_i < y_{i+1}
  }
  pairs.push_back({0, 39});  // x_0 < y_19
  pairs.push_back({1, 38});  // y_0 < x_19
  const FinitePoset p(40, pairs);
  ChainFamily fam;
  fam.k = 2;
  fam.chains.resize(2);
  for (std::size_t i = 0; i < 20; ++i) {
    fam.chains[0].push_back(2 * i);
    fam.chains[1].push_back(2 * i + 1);
  }
  ExtractParams pr;
  pr.window = 40;
  pr.lookahead = 3;
  const ExtractionResult r = extract_wfsplit_aca(p, fam, pr);
  REQUIRE(r.transcript.refutation.has_value());
  const RefutationWitness& w = *r.transcript.refutation;
  CHECK(w.cycle == std::vector<std::size_t>{0, 1, 0});
  CHECK(w.h_map == std::vector<std::size_t>{1, 0});
  CHECK(r.chain.elements.empty());
}

TEST_CASE("ideal extension walks a plain chain to its top") {
  GeneratedPoset g = generate({"omega", {}, 0});
  const FinitePoset t = g.poset->truncate(120);
  ExtractParams pr;
  pr.window = 120;
  pr.lookahead = 8;
  const ExtractionResult r = extract_no_antichain(t, pr);
  CHECK(r.chain.elements.size() >= 100);
  CHECK(listed_ascending(t, r.chain.elements));
  CHECK(r.certificate.passes());
  CHECK(r.transcript.strategy == "ideal");
}

TEST_CASE("ideal extension finds a cofinal chain in the product") {
  GeneratedPoset g = generate({"product_lq2", {}, 0});
  const FinitePoset t = g.poset->truncate(300);
  ExtractParams pr;
  pr.window = 300;
  pr.lookahead = 8;
  const ExtractionResult r = extract_no_antichain(t, pr);
  CHECK(r.chain.elements.size() >= 50);
  CHECK(listed_ascending(t, r.chain.elements));
  CHECK(r.certificate.passes());
  CHECK(brute_pass(t, r.chain, 10, 300));
}

TEST_CASE("ideal extension refuses wide posets and replays on staged ones") {
  std::vector<std::pair<Id, Id>> none;
  const FinitePoset wide(40, none);  // a 40-antichain
  ExtractParams pr;
  pr.window = 40;
  CHECK_THROWS_AS(extract_no_antichain(wide, pr), AntichainBoundExceeded);

  GeneratedPoset g = generate({"xi", {}, 3});
  const FinitePoset t = g.poset->truncate(200);
  ExtractParams px;
  px.window = 200;
  px.lookahead = 8;
  const ExtractionResult a = extract_no_antichain(t, px, 64);
  const ExtractionResult b = extract_no_antichain(t, px, 64);
  CHECK(a.chain.elements == b.chain.elements);
  CHECK(listed_ascending(t, a.chain.elements));
}
