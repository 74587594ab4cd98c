#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "keyhorn/horn.hpp"
#include "keyhorn/reduce.hpp"

namespace keyhorn {

/// Seeded Sperner family with m bodies of sizes in [min(2,k), k] over n
/// variables, normalized afterwards. Requires m >= 2.
KeyHornInstance gen_random(int n, int m, int k, std::uint64_t seed);

/// Raw family whose bodies are the given edges; normalization is left to the
/// caller (see gen_hydra).
std::vector<VarSet> hydra_bodies(std::span<const std::pair<VarId, VarId>> edges, int n);

/// Hydra family, normalized (the record reports core removal and the
/// single-edge trivial case).
Normalized gen_hydra(std::span<const std::pair<VarId, VarId>> edges, int n);

/// PG(d, 2) with points identified with Z_n through a Singer cycle; stored
/// 1-based, so point p is variable p + 1.
struct ProjectiveInstance {
  int d = 0;
  int n = 0;
  /// Primitive polynomial of GF(2^(d+1)), bit i = coefficient of x^i.
  std::uint32_t polynomial = 0;
  /// The hyperplane containing points {0..d-1}.
  VarSet x;
  /// Points {0..d}.
  VarSet dset;
  /// Shifts X + i for i in Z_n, then shifts D + i.
  KeyHornInstance instance;
  /// (D → Z_n \ D) ∧ ⋀ (X+i) → d+i ∧ ⋀ (D+i) → d+1+i
  HornCNF certificate;
  /// Clauses written in the certificate before merging duplicates.
  std::int64_t certificate_clause_terms = 0;

  /// Number of hyperplane shifts among the bodies (the first n).
  int hyperplane_count() const { return n; }
};

ProjectiveInstance gen_projective(int d);

/// Shift of a point set by i modulo n (1-based storage).
VarSet shift_points(const VarSet& s, int i);

/// 3-CNF literal: +v or -v for v in 1..variables.
using Clause3 = std::array<int, 3>;

struct SatReductionInstance {
  int variables = 0;  // n
  std::vector<Clause3> clauses;  // m
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t tau = 0;
  int ground_size = 0;

  /// Ground-set blocks (0-based ids of the variables in each block are
  /// implicit; these are the VarSets themselves).
  VarSet t;
  std::vector<VarSet> b_blocks;  // B_0..B_n
  std::vector<VarSet> a_blocks;  // A_1..A_{n+1}, index 0 is A_1
  VarSet m_set;
  /// Original clauses C^0_k inside M.
  VarSet phi_set;

  /// X_0..X_{n+1}, Y_0..Y_{n+1}.
  std::vector<VarSet> x;
  std::vector<VarSet> y;
  VarSet s;
  VarSet z;

  /// Bodies {S, Z, T} ∪ {X_i, Y_i | i = 1..n}, in that order.
  std::vector<VarSet> bodies;
  int source_index = 0;  // S
  int target_index = 2;  // T

  /// Returns an empty string when relations (i)-(vi) and the parameter
  /// inequalities hold, otherwise a description of the first violation.
  std::string check_relations() const;
};

/// Minimal integers with α² > max{m², 16²(n+1) + 2·16²(n+1)² + 16·17},
/// β > 2α + 32(n+1) + 16 and τ > ((n+1)β + 17)((n+1)α + m).
struct SatParameters {
  std::int64_t alpha;
  std::int64_t beta;
  std::int64_t tau;
};
SatParameters sat_parameters(int variables, int clauses);

SatReductionInstance gen_sat_reduction(int variables, std::span<const Clause3> clauses);

}  // namespace keyhorn
