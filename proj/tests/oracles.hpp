#pragma once

// Brute-force reference implementations used as test oracles. They share no
// code with the library: sets are std::set<int>, formulas are clause lists.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "keyhorn/horn.hpp"
#include "keyhorn/varset.hpp"

namespace oracle {

using Set = std::set<int>;

struct Clause {
  Set body;
  int head;
};

inline Set to_set(const keyhorn::VarSet& v) {
  Set s;
  for (int x : v.elements()) s.insert(x);
  return s;
}

inline keyhorn::VarSet to_varset(int n, const Set& s) {
  keyhorn::VarSet v(n);
  for (int x : s) v.insert(x);
  return v;
}

inline bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline int minus_count(const Set& a, const Set& b) {
  int c = 0;
  for (int x : a) c += b.count(x) ? 0 : 1;
  return c;
}

inline Set closure(const std::vector<Clause>& phi, Set z) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : phi) {
      if (!z.count(c.head) && subset(c.body, z)) {
        z.insert(c.head);
        changed = true;
      }
    }
  }
  return z;
}

inline std::vector<Clause> clauses_of(const keyhorn::HornCNF& phi) {
  std::vector<Clause> out;
  for (const auto& g : phi.groups())
    for (int h : g.heads.elements()) out.push_back({to_set(g.body), h});
  return out;
}

// Measure of a clause set, grouping clauses with equal bodies.
inline std::int64_t measure(const std::vector<Clause>& phi, keyhorn::Measure mu) {
  std::map<Set, int> heads;
  for (const auto& c : phi) heads[c.body]++;
  std::int64_t total = 0;
  for (const auto& [body, h] : heads) {
    const std::int64_t b = static_cast<std::int64_t>(body.size());
    switch (mu) {
      case keyhorn::Measure::B: total += 1; break;
      case keyhorn::Measure::BA: total += b; break;
      case keyhorn::Measure::TA: total += b + h; break;
      case keyhorn::Measure::C: total += h; break;
      case keyhorn::Measure::BC: total += 1 + h; break;
      case keyhorn::Measure::L: total += (b + 1) * h; break;
    }
  }
  return total;
}

// Minimum measure over all clause subsets with bodies from the family whose
// chaining from every body reaches all n variables.
inline std::int64_t brute_opt(int n, const std::vector<Set>& bodies, keyhorn::Measure mu) {
  std::vector<Clause> cands;
  for (const auto& b : bodies)
    for (int v = 1; v <= n; ++v)
      if (!b.count(v)) cands.push_back({b, v});
  Set full;
  for (int v = 1; v <= n; ++v) full.insert(v);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const std::uint32_t total = 1u << cands.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::vector<Clause> phi;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (mask >> i & 1) phi.push_back(cands[i]);
    std::int64_t size = measure(phi, mu);
    if (size >= best) continue;
    bool ok = std::all_of(bodies.begin(), bodies.end(), [&](const Set& b) { return closure(phi, b) == full; });
    if (ok) best = size;
  }
  return best;
}

// Minimum L-size of a clause set with bodies from the family reaching s2 from s.
inline std::int64_t brute_price_l(int n, const std::vector<Set>& bodies, const Set& s, const Set& s2) {
  std::vector<Clause> cands;
  for (const auto& b : bodies)
    for (int v = 1; v <= n; ++v)
      if (!b.count(v) && !s.count(v)) cands.push_back({b, v});
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const std::uint64_t total = std::uint64_t{1} << cands.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Clause> phi;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (mask >> i & 1) phi.push_back(cands[i]);
    std::int64_t size = measure(phi, keyhorn::Measure::L);
    if (size >= best) continue;
    if (subset(s2, closure(phi, s))) best = size;
  }
  return best;
}

using Matrix = std::vector<std::vector<std::int64_t>>;

// Minimum spanning in-arborescence weight by enumerating successor maps.
// root < 0 minimizes over all roots.
inline std::int64_t brute_arborescence(const Matrix& w, int root) {
  const int n = static_cast<int>(w.size());
  if (n == 1) return 0;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (int r = 0; r < n; ++r) {
    if (root >= 0 && r != root) continue;
    std::vector<int> succ(static_cast<std::size_t>(n), 0);
    std::function<void(int)> rec = [&](int v) {
      if (v == n) {
        for (int s = 0; s < n; ++s) {
          int x = s, steps = 0;
          while (x != r && steps <= n) {
            x = succ[static_cast<std::size_t>(x)];
            ++steps;
          }
          if (x != r) return;
        }
        std::int64_t total = 0;
        for (int u = 0; u < n; ++u)
          if (u != r) total += w[static_cast<std::size_t>(u)][static_cast<std::size_t>(succ[static_cast<std::size_t>(u)])];
        best = std::min(best, total);
        return;
      }
      if (v == r) {
        rec(v + 1);
        return;
      }
      for (int t = 0; t < n; ++t) {
        if (t == v) continue;
        succ[static_cast<std::size_t>(v)] = t;
        rec(v + 1);
      }
    };
    rec(0);
  }
  return best;
}

inline bool strongly_connected(int n, const std::vector<std::pair<int, int>>& arcs) {
  auto reach = [&](bool forward) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [a, b] : arcs) {
        int from = forward ? a : b, to = forward ? b : a;
        if (from == u && !seen[static_cast<std::size_t>(to)]) {
          seen[static_cast<std::size_t>(to)] = 1;
          stack.push_back(to);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reach(true) && reach(false);
}

// Exhaustive MWSCS: an inclusion-minimal strongly connected spanning
// subgraph has at most 2(n-1) arcs, and weights are nonnegative.
inline std::int64_t brute_mwscs(const Matrix& w) {
  const int n = static_cast<int>(w.size());
  if (n == 1) return 0;
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) all.emplace_back(u, v);
  const int arcs = static_cast<int>(all.size());
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::pair<int, int>> chosen;
  std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t cost) {
    if (cost >= best) return;
    if (static_cast<int>(chosen.size()) >= n && strongly_connected(n, chosen)) {
      best = cost;
      return;
    }
    if (i == arcs || static_cast<int>(chosen.size()) == 2 * (n - 1)) return;
    auto [u, v] = all[static_cast<std::size_t>(i)];
    chosen.emplace_back(u, v);
    rec(i + 1, cost + w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
    chosen.pop_back();
    rec(i + 1, cost);
  };
  rec(0, 0);
  return best;
}

// Random Sperner family over {1..n} with m bodies of size 1..k (not normalized).
inline std::vector<Set> random_sperner(std::mt19937_64& rng, int n, int m, int k) {
  std::vector<Set> out;
  for (int tries = 0; tries < 500 && static_cast<int>(out.size()) < m; ++tries) {
    int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    Set b;
    while (static_cast<int>(b.size()) < size) b.insert(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
    if (static_cast<int>(b.size()) == n) continue;
    bool clash = std::any_of(out.begin(), out.end(), [&](const Set& o) { return subset(o, b) || subset(b, o); });
    if (!clash) out.push_back(b);
  }
  return out;
}

}  // namespace oracle
