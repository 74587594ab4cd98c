#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "keyhorn/horn.hpp"
#include "keyhorn/varset.hpp"

namespace keyhorn {

/// Complete digraph with exact nonnegative integer arc weights. Arc (i, j)
/// carries the cost of extending forward chaining from node i to cover node j.
class BodyGraph {
 public:
  BodyGraph() = default;
  /// Weights start at zero.
  explicit BodyGraph(std::vector<VarSet> nodes);
  /// Weight-only graph, for algorithm tests.
  explicit BodyGraph(int node_count);

  int size() const noexcept { return size_; }
  std::span<const VarSet> nodes() const noexcept { return nodes_; }

  std::int64_t weight(int from, int to) const {
    return weights_[static_cast<std::size_t>(from) * static_cast<std::size_t>(size_) +
                    static_cast<std::size_t>(to)];
  }
  void set_weight(int from, int to, std::int64_t w);

  /// Same nodes with every arc reversed.
  BodyGraph transposed() const;

 private:
  int size_ = 0;
  std::vector<VarSet> nodes_;
  std::vector<std::int64_t> weights_;
};

/// Spanning in-arborescence: every non-root node has exactly one successor
/// and following successors always ends at the root.
struct InArborescence {
  int root = -1;
  /// succ[root] == -1.
  std::vector<int> succ;
  std::int64_t weight = 0;

  std::vector<std::pair<int, int>> arcs() const;
};

/// Checks the structural invariants against g; weight must match too.
bool is_spanning_in_arborescence(const BodyGraph& g, const InArborescence& t);

struct Path {
  std::vector<int> nodes;
  std::int64_t weight = 0;
};

/// Λ(S, S'): formula read off a shortest path in the body graph extended
/// by the target S'.
struct LambdaFormula {
  /// Node indices; inst.m() denotes the target node S'.
  std::vector<int> path;
  /// One group per path arc, empty heads included.
  std::vector<ClauseGroup> groups;
  HornCNF formula;
  std::int64_t weight = 0;
};

/// |b2 \ b|
std::int64_t price_c(const VarSet& b, const VarSet& b2);

BodyGraph body_graph_c(const KeyHornInstance& inst);

LambdaFormula lambda(const KeyHornInstance& inst, const VarSet& s, const VarSet& s2);

/// Arc weights |Λ(B, B')|_L for every ordered pair of bodies.
BodyGraph body_graph_l(const KeyHornInstance& inst);

/// Minimum-weight path; ties go to fewer arcs, then to the lexicographically
/// smallest node sequence.
Path shortest_path(const BodyGraph& g, int src, int dst);

/// Minimum-weight spanning in-arborescence. Without a root, the best root is
/// used (smallest index among ties).
InArborescence min_in_arborescence(const BodyGraph& g, std::optional<int> root = std::nullopt);

struct ArcSet {
  std::vector<std::pair<int, int>> arcs;
  std::int64_t weight = 0;
  int root = -1;
};

/// Union of a minimum in- and out-arborescence at the best common root.
ArcSet mwscs_2approx(const BodyGraph& g);

bool strongly_connected(int node_count, const std::vector<std::pair<int, int>>& arcs);

}  // namespace keyhorn
