#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "keyhorn/varset.hpp"

namespace keyhorn {

/// body → heads, i.e. the conjunction of the clauses body → v for v in heads.
struct ClauseGroup {
  VarSet body;
  VarSet heads;

  friend bool operator==(const ClauseGroup&, const ClauseGroup&) = default;
};

/// Size measures of a body-grouped pure Horn CNF.
enum class Measure { B, BA, TA, C, BC, L };

inline constexpr std::array<Measure, 6> kAllMeasures = {Measure::B,  Measure::BA, Measure::TA,
                                                        Measure::C,  Measure::BC, Measure::L};

std::string_view to_string(Measure mu);
std::optional<Measure> parse_measure(std::string_view text);

/// Pure Horn CNF in canonical form: bodies pairwise distinct, no empty head
/// sets, groups ordered by (body size, lexicographic body).
class HornCNF {
 public:
  HornCNF() = default;
  explicit HornCNF(int universe) : n_(universe) {}

  /// Validates and canonicalizes: groups with equal bodies are merged by
  /// uniting their heads, empty-head groups are dropped.
  HornCNF(int universe, std::vector<ClauseGroup> groups);

  int universe() const noexcept { return n_; }
  std::span<const ClauseGroup> groups() const noexcept { return groups_; }
  bool empty() const noexcept { return groups_.empty(); }

  friend bool operator==(const HornCNF&, const HornCNF&) = default;

 private:
  int n_ = 0;
  std::vector<ClauseGroup> groups_;
};

/// Measure of an arbitrary (possibly non-canonical) group list. Groups with
/// empty heads still count as bodies for B, BA and TA.
std::int64_t measure_size(std::span<const ClauseGroup> groups, Measure mu);
std::int64_t measure_size(const HornCNF& phi, Measure mu);

/// Least W ⊇ z closed under every group of phi.
VarSet forward_chain(const HornCNF& phi, const VarSet& z);

/// Saturation rounds z = W_0 ⊂ W_1 ⊂ ... ⊂ W_t; each round fires every group
/// whose body is inside the previous round's set.
std::vector<VarSet> forward_chain_trace(const HornCNF& phi, const VarSet& z);

bool entails(const HornCNF& phi, const VarSet& body, VarId head);

/// Mutual entailment of every clause.
bool equivalent(const HornCNF& a, const HornCNF& b);

/// Sperner family of bodies over {1..n}: every body is nonempty, differs from
/// the universe, and no body contains another. Body order is preserved.
class KeyHornInstance {
 public:
  KeyHornInstance() = default;
  KeyHornInstance(int universe, std::vector<VarSet> bodies);

  int n() const noexcept { return n_; }
  int m() const noexcept { return static_cast<int>(bodies_.size()); }
  int k() const noexcept { return k_; }
  int delta() const noexcept { return delta_; }
  std::span<const VarSet> bodies() const noexcept { return bodies_; }
  const VarSet& body(int i) const { return bodies_.at(static_cast<std::size_t>(i)); }

  /// ∪bodies = V and ∩bodies = ∅.
  bool is_normalized() const;

  /// ∩bodies
  VarSet core() const;

  /// Ψ: every body implies the rest of the universe.
  HornCNF canonical_formula() const;

 private:
  int n_ = 0;
  int k_ = 0;
  int delta_ = 0;
  std::vector<VarSet> bodies_;
};

struct VerifyResult {
  enum class Failure { None, ForeignBody, DeficientClosure };

  bool accepted = true;
  Failure failure = Failure::None;
  /// ForeignBody: the offending group. DeficientClosure: group.body is the
  /// instance body whose closure is deficient.
  ClauseGroup group;
  VarSet closure;

  std::string describe() const;
};

/// Accepts iff phi represents the key Horn function of inst.
VerifyResult verify_representation(const HornCNF& phi, const KeyHornInstance& inst);

}  // namespace keyhorn
