#include "ordlab/width.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ordlab {

namespace {

// Hopcroft-Karp on the split comparability graph.  adj[u] lists v with
// u <_P v.  Returns pair_u / pair_v with n sentinel for unmatched.
struct Matching {
  std::vector<std::size_t> pair_u, pair_v;
  std::size_t size = 0;
};

Matching max_matching(std::size_t n,
                      const std::vector<std::vector<Id>>& adj) {
  constexpr std::size_t NIL = static_cast<std::size_t>(-1);
  Matching m;
  m.pair_u.assign(n, NIL);
  m.pair_v.assign(n, NIL);
  std::vector<std::size_t> dist(n);

  auto bfs = [&]() {
    std::vector<Id> queue;
    std::size_t found = NIL;
    for (Id u = 0; u < n; ++u) {
      if (m.pair_u[u] == NIL) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = NIL;
      }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Id u = queue[qi];
      for (Id v : adj[u]) {
        std::size_t w = m.pair_v[v];
        if (w == NIL) {
          found = 0;
        } else if (dist[w] == NIL) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found != NIL;
  };

  std::function<bool(Id)> dfs = [&](Id u) {
    for (Id v : adj[u]) {
      std::size_t w = m.pair_v[v];
      if (w == NIL || (dist[w] == dist[u] + 1 && dfs(w))) {
        m.pair_u[u] = v;
        m.pair_v[v] = u;
        return true;
      }
    }
    dist[u] = NIL;
    return false;
  };

  while (bfs())
    for (Id u = 0; u < n; ++u)
      if (m.pair_u[u] == static_cast<std::size_t>(-1) && dfs(u)) ++m.size;
  return m;
}

}  // namespace

ChainCover dilworth_offline(const FinitePoset& p) {
  const std::size_t n = p.n();
  constexpr std::size_t NIL = static_cast<std::size_t>(-1);
  std::vector<std::vector<Id>> adj(n);
  for (Id u = 0; u < n; ++u)
    for (Id v = 0; v < n; ++v)
      if (u != v && p.strictly_below(u, v)) adj[u].push_back(v);

  Matching m = max_matching(n, adj);

  ChainCover cover;
  // Chains: follow matched edges from elements that are not anybody's
  // successor in the matching.
  std::vector<uint8_t> is_successor(n, 0);
  for (Id u = 0; u < n; ++u)
    if (m.pair_u[u] != NIL) is_successor[m.pair_u[u]] = 1;
  for (Id start = 0; start < n; ++start) {
    if (is_successor[start]) continue;
    std::vector<Id> chain;
    for (std::size_t cur = start; cur != NIL; cur = m.pair_u[cur])
      chain.push_back(cur);
    cover.chains.push_back(std::move(chain));
  }

  // Koenig: alternating reachability from unmatched left vertices gives
  // a minimum vertex cover; elements untouched on both sides form a
  // maximum antichain.
  std::vector<uint8_t> zl(n, 0), zr(n, 0);
  std::vector<Id> queue;
  for (Id u = 0; u < n; ++u)
    if (m.pair_u[u] == NIL) {
      zl[u] = 1;
      queue.push_back(u);
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Id u = queue[qi];
    for (Id v : adj[u]) {
      if (zr[v]) continue;
      zr[v] = 1;
      std::size_t w = m.pair_v[v];
      if (w != NIL && !zl[w]) {
        zl[w] = 1;
        queue.push_back(w);
      }
    }
  }
  for (Id x = 0; x < n; ++x)
    if (zl[x] && !zr[x]) cover.antichain.push_back(x);

  return cover;
}

std::size_t width_exact(const FinitePoset& p) {
  return dilworth_offline(p).chains.size();
}

namespace {

// Branch and bound for the largest pairwise-incomparable subset.
void antichain_search(const FinitePoset& p, std::vector<Id>& cand,
                      std::size_t depth, std::vector<Id>& current,
                      std::vector<Id>& best) {
  if (current.size() + (cand.size() - depth) <= best.size()) return;
  if (depth == cand.size()) {
    if (current.size() > best.size()) best = current;
    return;
  }
  Id x = cand[depth];
  bool ok = true;
  for (Id y : current)
    if (p.comp(x, y)) {
      ok = false;
      break;
    }
  if (ok) {
    current.push_back(x);
    antichain_search(p, cand, depth + 1, current, best);
    current.pop_back();
  }
  antichain_search(p, cand, depth + 1, current, best);
}

}  // namespace

std::size_t width_exhaustive(const FinitePoset& p, std::size_t max_n) {
  if (p.n() > max_n)
    throw OracleLimitExceeded("width_exhaustive: instance too large");
  std::vector<Id> cand(p.n());
  std::iota(cand.begin(), cand.end(), 0);
  std::vector<Id> current, best;
  antichain_search(p, cand, 0, current, best);
  return best.size();
}

std::vector<Id> max_antichain(const FinitePoset& p) {
  return dilworth_offline(p).antichain;
}

std::vector<Id> longest_chain(const FinitePoset& p) {
  const std::size_t n = p.n();
  // Topological order: sort ids by number of strict predecessors.
  std::vector<Id> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> preds(n, 0);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      if (a != b && p.strictly_below(b, a)) ++preds[a];
  std::stable_sort(order.begin(), order.end(),
                   [&](Id a, Id b) { return preds[a] < preds[b]; });

  std::vector<std::size_t> len(n, 1), prev(n, static_cast<std::size_t>(-1));
  for (Id b : order)
    for (Id a : order) {
      if (a == b || !p.strictly_below(a, b)) continue;
      if (len[a] + 1 > len[b]) {
        len[b] = len[a] + 1;
        prev[b] = a;
      }
    }
  Id best = 0;
  for (Id x = 0; x < n; ++x)
    if (len[x] > len[best]) best = x;
  std::vector<Id> chain;
  for (std::size_t cur = best; cur != static_cast<std::size_t>(-1);
       cur = prev[cur])
    chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());
  if (chain.empty() && n > 0) chain.push_back(0);
  return chain;
}

}  // namespace ordlab
