#pragma once

#include <optional>
#include <vector>

#include "keyhorn/horn.hpp"
#include "keyhorn/varset.hpp"

namespace keyhorn {

/// How a raw body family was reduced, and what is needed to lift a formula
/// for the reduced instance back to the original variables.
struct NormalizationRecord {
  int original_n = 0;
  /// Inclusion-minimal original bodies, in first-occurrence order.
  std::vector<VarSet> minimal_bodies;
  /// Variables present in every body; deleted.
  VarSet removed_core;
  /// Variables in no body; deleted.
  VarSet uncovered;
  /// Non-minimal (or duplicate) input bodies.
  std::vector<VarSet> dropped_bodies;
  /// var_map[r - 1] is the original id of reduced variable r.
  std::vector<VarId> var_map;
  /// Set when only one minimal body exists; the reduced instance is then empty.
  std::optional<VarSet> trivial_body;

  bool trivial() const noexcept { return trivial_body.has_value(); }
  bool identity() const;
};

struct Normalized {
  KeyHornInstance instance;  // unset when record.trivial()
  NormalizationRecord record;
};

/// Inclusion-minimal members (duplicates collapsed), first-occurrence order.
std::vector<VarSet> sperner_minimal(int n, std::span<const VarSet> bodies);

/// Sperner-minimal, core-free, covering instance over dense ids 1..n'.
Normalized normalize(int n, std::span<const VarSet> bodies);

/// Maps a formula for the reduced instance back to the original variables.
/// A trivial record ignores phi_reduced and yields B → (V \ B).
HornCNF lift(const HornCNF& phi_reduced, const NormalizationRecord& rec);

/// Body used for uncovered variables: smallest minimal body, lexicographic tie-break.
const VarSet& smallest_body(std::span<const VarSet> bodies);

}  // namespace keyhorn
