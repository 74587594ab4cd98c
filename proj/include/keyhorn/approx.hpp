#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "keyhorn/horn.hpp"

namespace keyhorn {

/// Exact nonnegative rational; den == 0 encodes "no guarantee".
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio of(std::int64_t num, std::int64_t den);
  static Ratio none() { return Ratio{0, 0}; }
  bool defined() const noexcept { return den != 0; }

  /// a/b <= c/d via cross multiplication.
  friend bool operator<=(const Ratio& a, const Ratio& b);
  friend bool operator==(const Ratio&, const Ratio&) = default;

  /// Fixed six-decimal rendering; "none" when undefined.
  std::string decimal() const;
};

/// ⌈log2 x⌉ for x >= 1.
int ceil_log2(std::int64_t x);

enum class Strategy { Auto, Exact, Hamiltonian, Procedure1, Procedure2, BestOf };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view text);

struct MinimizationResult {
  HornCNF formula;
  Measure measure = Measure::B;
  std::int64_t size = 0;
  std::int64_t lower_bound = 0;
  Ratio guarantee;
  Strategy strategy = Strategy::Exact;
};

/// Lower bounds on the optimum. The "n" terms count non-core variables, which
/// is n itself on a normalized instance.
std::int64_t lower_bound(const KeyHornInstance& inst, Measure mu);

/// Singleton-partition bound Σ_B min_{B' != B} |B' \ B| for measure C.
std::int64_t lower_bound_partition_c(const KeyHornInstance& inst);

/// Strongest lower bound available for mu (partition bound included for C/BC).
std::int64_t best_lower_bound(const KeyHornInstance& inst, Measure mu);

/// ⋀ B_i → (B_{i+1} \ B_i) around the cyclic order (input order by default).
HornCNF hamiltonian_formula(const KeyHornInstance& inst, std::optional<std::span<const int>> order = std::nullopt);

MinimizationResult minimize_b_ba(const KeyHornInstance& inst, Measure mu = Measure::B);
MinimizationResult procedure1(const KeyHornInstance& inst, Measure mu = Measure::C);
MinimizationResult procedure2(const KeyHornInstance& inst, Measure mu = Measure::L);

/// Proven approximation factor of a strategy under a measure, if any.
Ratio guarantee_for(const KeyHornInstance& inst, Measure mu, Strategy s);

/// Best-of dispatch (Strategy::Auto) or a forced strategy.
MinimizationResult minimize(const KeyHornInstance& inst, Measure mu, Strategy strategy = Strategy::Auto);

}  // namespace keyhorn
