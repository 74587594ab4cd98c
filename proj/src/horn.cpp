#include "keyhorn/horn.hpp"

#include <algorithm>
#include <map>

#include "keyhorn/error.hpp"

namespace keyhorn {

std::string_view to_string(Measure mu) {
  switch (mu) {
    case Measure::B: return "B";
    case Measure::BA: return "BA";
    case Measure::TA: return "TA";
    case Measure::C: return "C";
    case Measure::BC: return "BC";
    case Measure::L: return "L";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view text) {
  for (Measure mu : kAllMeasures)
    if (to_string(mu) == text) return mu;
  return std::nullopt;
}

HornCNF::HornCNF(int universe, std::vector<ClauseGroup> groups) : n_(universe) {
  for (const auto& g : groups) {
    if (g.body.universe() != universe || g.heads.universe() != universe) {
      throw Error(ErrorCode::UniverseMismatch, "clause group over a different universe");
    }
    if (g.body.empty()) throw Error(ErrorCode::InvalidArgument, "clause group with empty body");
    if (g.body.intersects(g.heads)) {
      throw Error(ErrorCode::InvalidArgument,
                  "head intersects body in group {" + g.body.to_string() + "}");
    }
  }
  std::stable_sort(groups.begin(), groups.end(), [](const ClauseGroup& a, const ClauseGroup& b) {
    return canonical_less(a.body, b.body);
  });
  for (auto& g : groups) {
    if (!groups_.empty() && groups_.back().body == g.body) {
      groups_.back().heads |= g.heads;
    } else {
      groups_.push_back(std::move(g));
    }
  }
  std::erase_if(groups_, [](const ClauseGroup& g) { return g.heads.empty(); });
}

std::int64_t measure_size(std::span<const ClauseGroup> groups, Measure mu) {
  std::int64_t total = 0;
  for (const auto& g : groups) {
    std::int64_t b = g.body.size();
    std::int64_t h = g.heads.size();
    std::int64_t term = 0;
    switch (mu) {
      case Measure::B: term = 1; break;
      case Measure::BA: term = b; break;
      case Measure::TA: term = b + h; break;
      case Measure::C: term = h; break;
      case Measure::BC: term = h + 1; break;
      case Measure::L: term = checked_mul(b + 1, h); break;
    }
    total = checked_add(total, term);
  }
  return total;
}

std::int64_t measure_size(const HornCNF& phi, Measure mu) { return measure_size(phi.groups(), mu); }

std::vector<VarSet> forward_chain_trace(const HornCNF& phi, const VarSet& z) {
  if (z.universe() != phi.universe()) {
    throw Error(ErrorCode::UniverseMismatch, "closure start set over a different universe");
  }
  std::vector<VarSet> rounds{z};
  for (;;) {
    const VarSet& current = rounds.back();
    VarSet next = current;
    for (const auto& g : phi.groups())
      if (g.body.is_subset_of(current)) next |= g.heads;
    if (next == current) break;
    rounds.push_back(std::move(next));
  }
  return rounds;
}

VarSet forward_chain(const HornCNF& phi, const VarSet& z) {
  if (z.universe() != phi.universe()) {
    throw Error(ErrorCode::UniverseMismatch, "closure start set over a different universe");
  }
  // Same fixpoint as the round-based trace; groups fire as soon as they can.
  VarSet w = z;
  std::vector<char> fired(phi.groups().size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < phi.groups().size(); ++i) {
      if (fired[i]) continue;
      const auto& g = phi.groups()[i];
      if (g.body.is_subset_of(w)) {
        fired[i] = 1;
        if (!g.heads.is_subset_of(w)) {
          w |= g.heads;
          changed = true;
        }
      }
    }
  }
  return w;
}

bool entails(const HornCNF& phi, const VarSet& body, VarId head) {
  return forward_chain(phi, body).contains(head);
}

namespace {

bool entails_all(const HornCNF& a, const HornCNF& b) {
  for (const auto& g : b.groups())
    if (!g.heads.is_subset_of(forward_chain(a, g.body))) return false;
  return true;
}

}  // namespace

bool equivalent(const HornCNF& a, const HornCNF& b) {
  if (a.universe() != b.universe()) {
    throw Error(ErrorCode::UniverseMismatch, "formulas over different universes");
  }
  return entails_all(a, b) && entails_all(b, a);
}

KeyHornInstance::KeyHornInstance(int universe, std::vector<VarSet> bodies)
    : n_(universe), bodies_(std::move(bodies)) {
  if (bodies_.empty()) throw Error(ErrorCode::InvalidArgument, "empty body family");
  k_ = 0;
  delta_ = universe;
  for (const auto& b : bodies_) {
    if (b.universe() != universe) throw Error(ErrorCode::UniverseMismatch, "body over a different universe");
    if (b.empty()) throw Error(ErrorCode::InvalidArgument, "empty body");
    if (b.is_full()) throw Error(ErrorCode::InvalidArgument, "body equals the full variable set");
    k_ = std::max(k_, b.size());
    delta_ = std::min(delta_, b.size());
  }
  for (std::size_t i = 0; i < bodies_.size(); ++i) {
    for (std::size_t j = 0; j < bodies_.size(); ++j) {
      if (i != j && bodies_[i].is_subset_of(bodies_[j])) {
        throw Error(ErrorCode::InvalidArgument, "family is not Sperner: {" + bodies_[i].to_string() +
                                                    "} is contained in {" + bodies_[j].to_string() + "}");
      }
    }
  }
}

VarSet KeyHornInstance::core() const {
  VarSet c = VarSet::full(n_);
  for (const auto& b : bodies_) c &= b;
  return c;
}

bool KeyHornInstance::is_normalized() const {
  VarSet u(n_);
  for (const auto& b : bodies_) u |= b;
  return u.is_full() && core().empty();
}

HornCNF KeyHornInstance::canonical_formula() const {
  std::vector<ClauseGroup> groups;
  groups.reserve(bodies_.size());
  for (const auto& b : bodies_) groups.push_back({b, b.complement()});
  return HornCNF(n_, std::move(groups));
}

std::string VerifyResult::describe() const {
  switch (failure) {
    case Failure::None: return "accept";
    case Failure::ForeignBody:
      return "reject: body {" + group.body.to_string() + "} contains no body of the instance";
    case Failure::DeficientClosure:
      return "reject: closure of body {" + group.body.to_string() + "} is {" + closure.to_string() + "}";
  }
  return "reject";
}

VerifyResult verify_representation(const HornCNF& phi, const KeyHornInstance& inst) {
  if (phi.universe() != inst.n()) {
    throw Error(ErrorCode::UniverseMismatch, "formula universe " + std::to_string(phi.universe()) +
                                                 " differs from instance universe " + std::to_string(inst.n()));
  }
  VerifyResult r;
  for (const auto& g : phi.groups()) {
    bool implied = std::any_of(inst.bodies().begin(), inst.bodies().end(),
                               [&](const VarSet& b) { return b.is_subset_of(g.body); });
    if (!implied) {
      r.accepted = false;
      r.failure = VerifyResult::Failure::ForeignBody;
      r.group = g;
      return r;
    }
  }
  for (const auto& b : inst.bodies()) {
    VarSet cl = forward_chain(phi, b);
    if (!cl.is_full()) {
      r.accepted = false;
      r.failure = VerifyResult::Failure::DeficientClosure;
      r.group = ClauseGroup{b, VarSet(inst.n())};
      r.closure = std::move(cl);
      return r;
    }
  }
  return r;
}

}  // namespace keyhorn
