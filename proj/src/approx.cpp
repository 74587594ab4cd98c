#include "keyhorn/approx.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "keyhorn/error.hpp"
#include "keyhorn/graph.hpp"

namespace keyhorn {

Ratio Ratio::of(std::int64_t num, std::int64_t den) {
  if (den == 0) return none();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  return Ratio{num / g, den / g};
}

bool operator<=(const Ratio& a, const Ratio& b) {
  return static_cast<Int128>(a.num) * b.den <= static_cast<Int128>(b.num) * a.den;
}

std::string Ratio::decimal() const {
  if (!defined()) return "none";
  constexpr std::int64_t kScale = 1000000;
  Int128 scaled = (static_cast<Int128>(num) * kScale * 2 + den) / (2 * static_cast<Int128>(den));
  auto whole = static_cast<std::int64_t>(scaled / kScale);
  auto frac = static_cast<std::int64_t>(scaled % kScale);
  std::string f = std::to_string(frac);
  return std::to_string(whole) + "." + std::string(6 - f.size(), '0') + f;
}

int ceil_log2(std::int64_t x) {
  if (x < 1) throw Error(ErrorCode::InvalidArgument, "logarithm of a non-positive value");
  int c = 0;
  while ((std::int64_t{1} << c) < x) ++c;
  return c;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Exact: return "exact";
    case Strategy::Hamiltonian: return "hamiltonian";
    case Strategy::Procedure1: return "procedure1";
    case Strategy::Procedure2: return "procedure2";
    case Strategy::BestOf: return "best_of";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  for (Strategy s : {Strategy::Auto, Strategy::Exact, Strategy::Hamiltonian, Strategy::Procedure1,
                     Strategy::Procedure2, Strategy::BestOf})
    if (to_string(s) == text) return s;
  return std::nullopt;
}

namespace {

std::int64_t body_area(const KeyHornInstance& inst) {
  std::int64_t total = 0;
  for (const auto& b : inst.bodies()) total += b.size();
  return total;
}

std::int64_t non_core_count(const KeyHornInstance& inst) { return inst.n() - inst.core().size(); }

Ratio min_ratio(Ratio a, Ratio b) {
  if (!a.defined()) return b;
  if (!b.defined()) return a;
  return a <= b ? a : b;
}

MinimizationResult measured(const KeyHornInstance& inst, HornCNF phi, Measure mu, Strategy tag, Strategy claim) {
  MinimizationResult r;
  r.size = measure_size(phi, mu);
  r.formula = std::move(phi);
  r.measure = mu;
  r.lower_bound = best_lower_bound(inst, mu);
  r.guarantee = guarantee_for(inst, mu, claim);
  r.strategy = tag;
  return r;
}

}  // namespace

std::int64_t lower_bound(const KeyHornInstance& inst, Measure mu) {
  const std::int64_t m = inst.m();
  const std::int64_t n = non_core_count(inst);
  switch (mu) {
    case Measure::B: return m;
    case Measure::BA: return body_area(inst);
    case Measure::TA: return std::max({m, n, body_area(inst)});
    case Measure::C: return std::max(m, n);
    case Measure::BC: return m + n;
    case Measure::L: return std::max(checked_mul(n, inst.delta() + 1), 2 * m);
  }
  return 0;
}

std::int64_t lower_bound_partition_c(const KeyHornInstance& inst) {
  if (inst.m() < 2) throw Error(ErrorCode::InvalidArgument, "partition bound needs at least two bodies");
  std::int64_t total = 0;
  for (int i = 0; i < inst.m(); ++i) {
    std::int64_t best = -1;
    for (int j = 0; j < inst.m(); ++j) {
      if (i == j) continue;
      std::int64_t p = price_c(inst.body(i), inst.body(j));
      if (best < 0 || p < best) best = p;
    }
    total += best;
  }
  return total;
}

std::int64_t best_lower_bound(const KeyHornInstance& inst, Measure mu) {
  std::int64_t lb = lower_bound(inst, mu);
  if (inst.m() >= 2) {
    if (mu == Measure::C) lb = std::max(lb, lower_bound_partition_c(inst));
    if (mu == Measure::BC) lb = std::max(lb, inst.m() + lower_bound_partition_c(inst));
  }
  return lb;
}

HornCNF hamiltonian_formula(const KeyHornInstance& inst, std::optional<std::span<const int>> order) {
  const int m = inst.m();
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "Hamiltonian cycle needs at least two bodies");
  std::vector<int> seq(static_cast<std::size_t>(m));
  if (order) {
    if (static_cast<int>(order->size()) != m) throw Error(ErrorCode::InvalidArgument, "order is not a permutation of the bodies");
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < order->size(); ++i) {
      int v = (*order)[i];
      if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)]) {
        throw Error(ErrorCode::InvalidArgument, "order is not a permutation of the bodies");
      }
      seen[static_cast<std::size_t>(v)] = 1;
      seq[i] = v;
    }
  } else {
    std::iota(seq.begin(), seq.end(), 0);
  }
  std::vector<ClauseGroup> groups;
  for (int i = 0; i < m; ++i) {
    const VarSet& b = inst.body(seq[static_cast<std::size_t>(i)]);
    const VarSet& next = inst.body(seq[static_cast<std::size_t>((i + 1) % m)]);
    groups.push_back({b, next - b});
  }
  return HornCNF(inst.n(), std::move(groups));
}

MinimizationResult minimize_b_ba(const KeyHornInstance& inst, Measure mu) {
  HornCNF phi = inst.m() == 1 ? inst.canonical_formula() : hamiltonian_formula(inst);
  return measured(inst, std::move(phi), mu, Strategy::Exact, Strategy::Exact);
}

MinimizationResult procedure1(const KeyHornInstance& inst, Measure mu) {
  InArborescence t = min_in_arborescence(body_graph_c(inst));
  std::vector<ClauseGroup> groups;
  for (auto [u, v] : t.arcs()) groups.push_back({inst.body(u), inst.body(v) - inst.body(u)});
  const VarSet& root = inst.body(t.root);
  groups.push_back({root, root.complement()});
  return measured(inst, HornCNF(inst.n(), std::move(groups)), mu, Strategy::Procedure1, Strategy::Procedure1);
}

MinimizationResult procedure2(const KeyHornInstance& inst, Measure mu) {
  int b_min = 0;
  for (int i = 1; i < inst.m(); ++i)
    if (canonical_less(inst.body(i), inst.body(b_min))) b_min = i;
  InArborescence t = min_in_arborescence(body_graph_l(inst), b_min);
  std::vector<ClauseGroup> groups;
  for (auto [u, v] : t.arcs()) {
    LambdaFormula lf = lambda(inst, inst.body(u), inst.body(v));
    for (auto& g : lf.groups) groups.push_back(std::move(g));
  }
  const VarSet& root = inst.body(b_min);
  groups.push_back({root, root.complement()});
  return measured(inst, HornCNF(inst.n(), std::move(groups)), mu, Strategy::Procedure2, Strategy::Procedure2);
}

Ratio guarantee_for(const KeyHornInstance& inst, Measure mu, Strategy s) {
  if (s == Strategy::Exact || mu == Measure::B || mu == Measure::BA || inst.m() == 1) return Ratio::of(1, 1);
  const std::int64_t k = inst.k();
  const Ratio hamiltonian = mu == Measure::TA ? Ratio::of(2, 1) : Ratio::of(k, 1);
  Ratio proc = Ratio::none();
  if (mu == Measure::C || mu == Measure::BC) {
    if (s == Strategy::Procedure1 || s == Strategy::Auto || s == Strategy::BestOf) {
      proc = Ratio::of(std::min<std::int64_t>(ceil_log2(inst.n()) + 1, ceil_log2(k) + 2), 1);
    }
  } else if (mu == Measure::L) {
    if (s == Strategy::Procedure2 || s == Strategy::Auto || s == Strategy::BestOf) {
      proc = Ratio::of(108 * static_cast<std::int64_t>(ceil_log2(k)) + 34, 17);
    }
  }
  switch (s) {
    case Strategy::Hamiltonian: return hamiltonian;
    case Strategy::Procedure1:
    case Strategy::Procedure2: return proc;
    default: return min_ratio(proc, hamiltonian);
  }
}

MinimizationResult minimize(const KeyHornInstance& inst, Measure mu, Strategy strategy) {
  if (inst.m() == 1) {
    auto r = measured(inst, inst.canonical_formula(), mu, Strategy::Exact, Strategy::Exact);
    r.lower_bound = r.size;
    return r;
  }
  switch (strategy) {
    case Strategy::Hamiltonian:
      return measured(inst, hamiltonian_formula(inst), mu, Strategy::Hamiltonian, Strategy::Hamiltonian);
    case Strategy::Procedure1: return procedure1(inst, mu);
    case Strategy::Procedure2: return procedure2(inst, mu);
    case Strategy::Auto:
    case Strategy::BestOf: break;
    case Strategy::Exact: throw Error(ErrorCode::InvalidArgument, "exact search lives in the exact oracle");
  }

  if (mu == Measure::B || mu == Measure::BA) return minimize_b_ba(inst, mu);
  MinimizationResult ham = measured(inst, hamiltonian_formula(inst), mu, Strategy::Hamiltonian, Strategy::Auto);
  if (mu == Measure::TA) return ham;
  MinimizationResult proc = mu == Measure::L ? procedure2(inst, mu) : procedure1(inst, mu);
  MinimizationResult& best = proc.size <= ham.size ? proc : ham;
  best.guarantee = guarantee_for(inst, mu, Strategy::Auto);
  return best;
}

}  // namespace keyhorn
