#include "keyhorn/graph.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "keyhorn/error.hpp"
#include "keyhorn/parallel.hpp"

namespace keyhorn {

BodyGraph::BodyGraph(std::vector<VarSet> nodes)
    : size_(static_cast<int>(nodes.size())),
      nodes_(std::move(nodes)),
      weights_(static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_), 0) {}

BodyGraph::BodyGraph(int node_count)
    : size_(node_count), weights_(static_cast<std::size_t>(node_count) * static_cast<std::size_t>(node_count), 0) {
  if (node_count < 0) throw Error(ErrorCode::InvalidArgument, "negative node count");
}

void BodyGraph::set_weight(int from, int to, std::int64_t w) {
  if (from < 0 || to < 0 || from >= size_ || to >= size_ || from == to) {
    throw Error(ErrorCode::InvalidArgument, "arc endpoints out of range");
  }
  if (w < 0) throw Error(ErrorCode::InvalidArgument, "negative arc weight");
  weights_[static_cast<std::size_t>(from) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(to)] = w;
}

BodyGraph BodyGraph::transposed() const {
  BodyGraph t = *this;
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j)
      if (i != j) t.set_weight(j, i, weight(i, j));
  return t;
}

std::vector<std::pair<int, int>> InArborescence::arcs() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < static_cast<int>(succ.size()); ++v)
    if (succ[static_cast<std::size_t>(v)] >= 0) out.emplace_back(v, succ[static_cast<std::size_t>(v)]);
  return out;
}

bool is_spanning_in_arborescence(const BodyGraph& g, const InArborescence& t) {
  const int n = g.size();
  if (static_cast<int>(t.succ.size()) != n || t.root < 0 || t.root >= n) return false;
  if (t.succ[static_cast<std::size_t>(t.root)] != -1) return false;
  std::int64_t w = 0;
  for (int v = 0; v < n; ++v) {
    if (v == t.root) continue;
    int s = t.succ[static_cast<std::size_t>(v)];
    if (s < 0 || s >= n || s == v) return false;
    w += g.weight(v, s);
    int cur = v;
    for (int steps = 0; cur != t.root; ++steps) {
      if (steps > n) return false;
      cur = t.succ[static_cast<std::size_t>(cur)];
    }
  }
  return w == t.weight;
}

std::int64_t price_c(const VarSet& b, const VarSet& b2) { return b2.count_minus(b); }

BodyGraph body_graph_c(const KeyHornInstance& inst) {
  BodyGraph g(std::vector<VarSet>(inst.bodies().begin(), inst.bodies().end()));
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (i != j) g.set_weight(i, j, price_c(inst.body(i), inst.body(j)));
  return g;
}

namespace {

/// Lexicographic (weight, arcs) path cost.
struct Cost {
  std::int64_t weight = std::numeric_limits<std::int64_t>::max();
  std::int64_t hops = 0;

  friend bool operator==(const Cost&, const Cost&) = default;
  friend auto operator<=>(const Cost&, const Cost&) = default;
};

/// Cost from every node to dst.
std::vector<Cost> costs_to(const BodyGraph& g, int dst) {
  const int n = g.size();
  std::vector<Cost> dist(static_cast<std::size_t>(n));
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  dist[static_cast<std::size_t>(dst)] = Cost{0, 0};
  for (int round = 0; round < n; ++round) {
    int v = -1;
    for (int u = 0; u < n; ++u)
      if (!done[static_cast<std::size_t>(u)] && (v < 0 || dist[static_cast<std::size_t>(u)] < dist[static_cast<std::size_t>(v)]))
        v = u;
    done[static_cast<std::size_t>(v)] = 1;
    const Cost dv = dist[static_cast<std::size_t>(v)];
    for (int u = 0; u < n; ++u) {
      if (done[static_cast<std::size_t>(u)]) continue;
      Cost cand{checked_add(dv.weight, g.weight(u, v)), dv.hops + 1};
      if (cand < dist[static_cast<std::size_t>(u)]) dist[static_cast<std::size_t>(u)] = cand;
    }
  }
  return dist;
}

}  // namespace

Path shortest_path(const BodyGraph& g, int src, int dst) {
  if (src < 0 || dst < 0 || src >= g.size() || dst >= g.size()) {
    throw Error(ErrorCode::InvalidArgument, "path endpoints out of range");
  }
  Path p;
  p.nodes.push_back(src);
  if (src == dst) return p;
  auto to_dst = costs_to(g, dst);
  p.weight = to_dst[static_cast<std::size_t>(src)].weight;
  int cur = src;
  while (cur != dst) {
    const Cost need = to_dst[static_cast<std::size_t>(cur)];
    int next = -1;
    for (int v = 0; v < g.size() && next < 0; ++v) {
      if (v == cur) continue;
      const Cost rest = to_dst[static_cast<std::size_t>(v)];
      if (rest.weight == std::numeric_limits<std::int64_t>::max()) continue;
      if (Cost{rest.weight + g.weight(cur, v), rest.hops + 1} == need) next = v;
    }
    cur = next;
    p.nodes.push_back(cur);
  }
  return p;
}

LambdaFormula lambda(const KeyHornInstance& inst, const VarSet& s, const VarSet& s2) {
  const int m = inst.m();
  if (s.universe() != inst.n() || s2.universe() != inst.n()) {
    throw Error(ErrorCode::UniverseMismatch, "source/target over a different universe");
  }
  int b0 = -1;
  for (int i = 0; i < m; ++i) {
    if (inst.body(i).is_subset_of(s) && (b0 < 0 || canonical_less(inst.body(i), inst.body(b0)))) b0 = i;
  }
  if (b0 < 0) throw Error(ErrorCode::NoBodyInSource, "no body is contained in the source set");

  LambdaFormula out;
  out.formula = HornCNF(inst.n());
  if (s2.is_subset_of(s)) return out;

  std::vector<VarSet> nodes(inst.bodies().begin(), inst.bodies().end());
  nodes.push_back(s2);
  BodyGraph g(std::move(nodes));
  for (int u = 0; u <= m; ++u) {
    const VarSet& bu = g.nodes()[static_cast<std::size_t>(u)];
    for (int v = 0; v <= m; ++v) {
      if (u == v) continue;
      std::int64_t missing = g.nodes()[static_cast<std::size_t>(v)].count_minus(s, bu);
      g.set_weight(u, v, checked_mul(missing, bu.size() + 1));
    }
  }
  Path p = shortest_path(g, b0, m);
  out.path = p.nodes;
  out.weight = p.weight;
  for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
    const VarSet& from = g.nodes()[static_cast<std::size_t>(p.nodes[i])];
    const VarSet& to = g.nodes()[static_cast<std::size_t>(p.nodes[i + 1])];
    out.groups.push_back({from, to - (s | from)});
  }
  out.formula = HornCNF(inst.n(), out.groups);
  return out;
}

BodyGraph body_graph_l(const KeyHornInstance& inst) {
  const int m = inst.m();
  BodyGraph g(std::vector<VarSet>(inst.bodies().begin(), inst.bodies().end()));
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(m));
  // Forward single-source search per body; the target S' = B_j shares its
  // arc weights with the body node j, so one search serves every target.
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t src) {
    const VarSet& s = inst.body(static_cast<int>(src));
    std::vector<std::int64_t> dist(static_cast<std::size_t>(m), std::numeric_limits<std::int64_t>::max());
    std::vector<char> done(static_cast<std::size_t>(m), 0);
    dist[src] = 0;
    for (int round = 0; round < m; ++round) {
      int u = -1;
      for (int v = 0; v < m; ++v)
        if (!done[static_cast<std::size_t>(v)] && (u < 0 || dist[static_cast<std::size_t>(v)] < dist[static_cast<std::size_t>(u)]))
          u = v;
      done[static_cast<std::size_t>(u)] = 1;
      const VarSet& bu = inst.body(u);
      const std::int64_t du = dist[static_cast<std::size_t>(u)];
      const std::int64_t factor = bu.size() + 1;
      for (int v = 0; v < m; ++v) {
        if (done[static_cast<std::size_t>(v)]) continue;
        std::int64_t cand = checked_add(du, checked_mul(inst.body(v).count_minus(s, bu), factor));
        if (cand < dist[static_cast<std::size_t>(v)]) dist[static_cast<std::size_t>(v)] = cand;
      }
    }
    rows[src] = std::move(dist);
  });
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) g.set_weight(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return g;
}

namespace {

struct Arc {
  int from;
  int to;
  std::int64_t w;
  std::int64_t id;
};

/// Chu-Liu/Edmonds in the in-arborescence orientation: every non-root node
/// picks one outgoing arc. Returns positions into `arcs`.
std::vector<std::size_t> edmonds_in(int nn, int root, const std::vector<Arc>& arcs) {
  std::vector<long> best(static_cast<std::size_t>(nn), -1);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const Arc& e = arcs[a];
    if (e.from == root || e.from == e.to) continue;
    long& b = best[static_cast<std::size_t>(e.from)];
    if (b < 0 || e.w < arcs[static_cast<std::size_t>(b)].w ||
        (e.w == arcs[static_cast<std::size_t>(b)].w && e.id < arcs[static_cast<std::size_t>(b)].id)) {
      b = static_cast<long>(a);
    }
  }
  for (int u = 0; u < nn; ++u) {
    if (u != root && best[static_cast<std::size_t>(u)] < 0) {
      throw Error(ErrorCode::InvalidArgument, "graph has no spanning in-arborescence");
    }
  }
  auto succ_of = [&](int u) { return arcs[static_cast<std::size_t>(best[static_cast<std::size_t>(u)])].to; };

  std::vector<int> cycle_of(static_cast<std::size_t>(nn), -1);
  std::vector<int> visit(static_cast<std::size_t>(nn), -1);
  std::vector<std::vector<int>> cycles;
  for (int s = 0; s < nn; ++s) {
    int v = s;
    while (v != root && visit[static_cast<std::size_t>(v)] == -1) {
      visit[static_cast<std::size_t>(v)] = s;
      v = succ_of(v);
    }
    if (v != root && visit[static_cast<std::size_t>(v)] == s && cycle_of[static_cast<std::size_t>(v)] == -1) {
      std::vector<int> cyc;
      int c = static_cast<int>(cycles.size());
      int x = v;
      do {
        cycle_of[static_cast<std::size_t>(x)] = c;
        cyc.push_back(x);
        x = succ_of(x);
      } while (x != v);
      cycles.push_back(std::move(cyc));
    }
  }

  if (cycles.empty()) {
    std::vector<std::size_t> out;
    for (int u = 0; u < nn; ++u)
      if (u != root) out.push_back(static_cast<std::size_t>(best[static_cast<std::size_t>(u)]));
    return out;
  }

  std::vector<int> comp(static_cast<std::size_t>(nn));
  int nc = static_cast<int>(cycles.size());
  for (int u = 0; u < nn; ++u) {
    comp[static_cast<std::size_t>(u)] = cycle_of[static_cast<std::size_t>(u)] >= 0 ? cycle_of[static_cast<std::size_t>(u)] : nc++;
  }
  std::vector<Arc> contracted;
  std::vector<std::size_t> origin;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const Arc& e = arcs[a];
    int cu = comp[static_cast<std::size_t>(e.from)];
    int cv = comp[static_cast<std::size_t>(e.to)];
    if (cu == cv) continue;
    std::int64_t w = e.w;
    if (cycle_of[static_cast<std::size_t>(e.from)] >= 0) w -= arcs[static_cast<std::size_t>(best[static_cast<std::size_t>(e.from)])].w;
    contracted.push_back({cu, cv, w, e.id});
    origin.push_back(a);
  }
  auto chosen = edmonds_in(nc, comp[static_cast<std::size_t>(root)], contracted);

  std::vector<std::size_t> out;
  std::vector<int> exit_node(cycles.size(), -1);
  for (std::size_t p : chosen) {
    std::size_t a = origin[p];
    out.push_back(a);
    int c = cycle_of[static_cast<std::size_t>(arcs[a].from)];
    if (c >= 0) exit_node[static_cast<std::size_t>(c)] = arcs[a].from;
  }
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    for (int u : cycles[c])
      if (u != exit_node[c]) out.push_back(static_cast<std::size_t>(best[static_cast<std::size_t>(u)]));
  }
  return out;
}

InArborescence rooted(const BodyGraph& g, int root) {
  const int n = g.size();
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) arcs.push_back({i, j, g.weight(i, j), static_cast<std::int64_t>(i) * n + j});
  InArborescence t;
  t.root = root;
  t.succ.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t a : edmonds_in(n, root, arcs)) {
    t.succ[static_cast<std::size_t>(arcs[a].from)] = arcs[a].to;
    t.weight = checked_add(t.weight, arcs[a].w);
  }
  return t;
}

}  // namespace

InArborescence min_in_arborescence(const BodyGraph& g, std::optional<int> root) {
  const int n = g.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty graph");
  if (root) {
    if (*root < 0 || *root >= n) throw Error(ErrorCode::InvalidArgument, "root out of range");
    return rooted(g, *root);
  }
  if (n == 1) return rooted(g, 0);

  // Virtual sink z: arc u -> z costs big + u and real weights are scaled by
  // n + 1, so the optimum minimizes (tree weight, root index) lexicographically.
  std::int64_t max_w = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) max_w = std::max(max_w, g.weight(i, j));
  const std::int64_t scale = n + 1;
  const std::int64_t big = checked_mul(scale, checked_add(checked_mul(n, max_w), 1));
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (i != j) arcs.push_back({i, j, checked_mul(g.weight(i, j), scale), static_cast<std::int64_t>(i) * (n + 1) + j});
    arcs.push_back({i, n, checked_add(big, i), static_cast<std::int64_t>(i) * (n + 1) + n});
  }
  int best_root = -1;
  for (std::size_t a : edmonds_in(n + 1, n, arcs))
    if (arcs[a].to == n) best_root = arcs[a].from;
  return rooted(g, best_root);
}

ArcSet mwscs_2approx(const BodyGraph& g) {
  const int n = g.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty graph");
  ArcSet best;
  if (n == 1) {
    best.root = 0;
    return best;
  }
  BodyGraph gt = g.transposed();
  for (int r = 0; r < n; ++r) {
    std::set<std::pair<int, int>> arcs;
    for (auto a : rooted(g, r).arcs()) arcs.insert(a);
    for (auto [u, v] : rooted(gt, r).arcs()) arcs.insert({v, u});
    std::int64_t w = 0;
    for (auto [u, v] : arcs) w = checked_add(w, g.weight(u, v));
    if (best.root < 0 || w < best.weight) {
      best.root = r;
      best.weight = w;
      best.arcs.assign(arcs.begin(), arcs.end());
    }
  }
  return best;
}

bool strongly_connected(int node_count, const std::vector<std::pair<int, int>>& arcs) {
  if (node_count <= 1) return true;
  auto reach_all = [&](bool forward) {
    std::vector<char> seen(static_cast<std::size_t>(node_count), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [a, b] : arcs) {
        int from = forward ? a : b;
        int to = forward ? b : a;
        if (from == u && !seen[static_cast<std::size_t>(to)]) {
          seen[static_cast<std::size_t>(to)] = 1;
          ++count;
          stack.push_back(to);
        }
      }
    }
    return count == node_count;
  };
  return reach_all(true) && reach_all(false);
}

}  // namespace keyhorn
