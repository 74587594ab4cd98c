#pragma once

#include <chrono>
#include <cstdint>
#include <span>

#include "keyhorn/horn.hpp"

namespace keyhorn {

/// Σ_i (|S_i| + 1) · |S_{i+1} \ (S_0 ∪ ... ∪ S_i)|, the literal count of the
/// chain formula ⋀ S_i → (S_{i+1} \ ⋃_{j<=i} S_j).
std::int64_t cost_l(std::span<const VarSet> seq);

/// Evaluates "cost_L(A,B,C) < cost_L(A,C)" and "(a-b)·g > (a+1)·e" separately
/// and reports whether they agree.
bool cost_lemma_check(const VarSet& a, const VarSet& b, const VarSet& c);

/// Exact price_L(s, s2) by dynamic programming over (used bodies, last body)
/// chains. Throws NoBodyInSource, or LimitExceeded when m > max_bodies.
std::int64_t price_l_exact(const KeyHornInstance& inst, const VarSet& s, const VarSet& s2, int max_bodies = 12);

struct ExactLimits {
  int max_candidates = 24;
  std::chrono::milliseconds timeout{10000};
};

struct ExactResult {
  std::int64_t value = 0;
  HornCNF witness;
  /// False when the search timed out; value is then the best found.
  bool optimal = true;
  std::int64_t nodes = 0;
};

/// Minimum representation by branch and bound over candidate clauses B → v,
/// B a body and v outside B. Works on any Sperner family; throws
/// LimitExceeded when the candidate count or universe is too large.
ExactResult opt_exact(const KeyHornInstance& inst, Measure mu, const ExactLimits& limits = {});

}  // namespace keyhorn
