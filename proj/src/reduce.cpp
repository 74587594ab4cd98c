#include "keyhorn/reduce.hpp"

#include <algorithm>

#include "keyhorn/error.hpp"

namespace keyhorn {

bool NormalizationRecord::identity() const {
  if (trivial() || !removed_core.empty() || !uncovered.empty() || !dropped_bodies.empty()) return false;
  for (std::size_t i = 0; i < var_map.size(); ++i)
    if (var_map[i] != static_cast<VarId>(i + 1)) return false;
  return true;
}

namespace {

std::vector<char> minimal_mask(int n, std::span<const VarSet> bodies) {
  if (bodies.empty()) throw Error(ErrorCode::InvalidArgument, "empty body family");
  for (const auto& b : bodies) {
    if (b.universe() != n) throw Error(ErrorCode::UniverseMismatch, "body over a different universe");
    if (b.empty()) throw Error(ErrorCode::InvalidArgument, "empty body");
    if (b.is_full()) throw Error(ErrorCode::InvalidArgument, "body equals the full variable set");
  }
  std::vector<char> keep(bodies.size(), 1);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    for (std::size_t j = 0; j < bodies.size() && keep[i]; ++j) {
      if (i == j || !bodies[j].is_subset_of(bodies[i])) continue;
      // A strict subset evicts i; so does an equal earlier copy.
      if (bodies[j] != bodies[i] || j < i) keep[i] = 0;
    }
  }
  return keep;
}

}  // namespace

std::vector<VarSet> sperner_minimal(int n, std::span<const VarSet> bodies) {
  auto keep = minimal_mask(n, bodies);
  std::vector<VarSet> out;
  for (std::size_t i = 0; i < bodies.size(); ++i)
    if (keep[i]) out.push_back(bodies[i]);
  return out;
}

const VarSet& smallest_body(std::span<const VarSet> bodies) {
  return *std::min_element(bodies.begin(), bodies.end(), canonical_less);
}

Normalized normalize(int n, std::span<const VarSet> bodies) {
  Normalized out;
  NormalizationRecord& rec = out.record;
  rec.original_n = n;
  auto keep = minimal_mask(n, bodies);
  for (std::size_t i = 0; i < bodies.size(); ++i)
    (keep[i] ? rec.minimal_bodies : rec.dropped_bodies).push_back(bodies[i]);

  VarSet covered(n);
  VarSet core = VarSet::full(n);
  for (const auto& b : rec.minimal_bodies) {
    covered |= b;
    core &= b;
  }
  rec.removed_core = core;
  rec.uncovered = covered.complement();

  if (rec.minimal_bodies.size() == 1) {
    rec.trivial_body = rec.minimal_bodies.front();
    return out;
  }

  VarSet kept = covered - core;
  rec.var_map = kept.elements();
  int reduced_n = static_cast<int>(rec.var_map.size());
  std::vector<VarId> to_reduced(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < rec.var_map.size(); ++i)
    to_reduced[static_cast<std::size_t>(rec.var_map[i])] = static_cast<VarId>(i + 1);

  std::vector<VarSet> reduced;
  reduced.reserve(rec.minimal_bodies.size());
  for (const auto& b : rec.minimal_bodies) {
    VarSet r(reduced_n);
    (b - core).for_each([&](VarId v) { r.insert(to_reduced[static_cast<std::size_t>(v)]); });
    reduced.push_back(std::move(r));
  }
  out.instance = KeyHornInstance(reduced_n, std::move(reduced));
  return out;
}

HornCNF lift(const HornCNF& phi_reduced, const NormalizationRecord& rec) {
  const int n = rec.original_n;
  if (rec.trivial()) {
    const VarSet& b = *rec.trivial_body;
    return HornCNF(n, {ClauseGroup{b, b.complement()}});
  }
  if (phi_reduced.universe() != static_cast<int>(rec.var_map.size())) {
    throw Error(ErrorCode::UniverseMismatch, "formula universe does not match the normalization record");
  }
  auto map_set = [&](const VarSet& s) {
    VarSet r(n);
    s.for_each([&](VarId v) { r.insert(rec.var_map[static_cast<std::size_t>(v - 1)]); });
    return r;
  };
  std::vector<ClauseGroup> groups;
  groups.reserve(phi_reduced.groups().size() + 1);
  for (const auto& g : phi_reduced.groups()) {
    groups.push_back({map_set(g.body) | rec.removed_core, map_set(g.heads)});
  }
  if (!rec.uncovered.empty()) {
    groups.push_back({smallest_body(rec.minimal_bodies), rec.uncovered});
  }
  return HornCNF(n, std::move(groups));
}

}  // namespace keyhorn
