#include "keyhorn/exact.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <limits>
#include <string>
#include <vector>

#include "keyhorn/approx.hpp"
#include "keyhorn/error.hpp"

namespace keyhorn {

std::int64_t cost_l(std::span<const VarSet> seq) {
  if (seq.empty()) throw Error(ErrorCode::InvalidArgument, "cost_l of an empty sequence");
  std::int64_t total = 0;
  VarSet reached = seq.front();
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    std::int64_t fresh = seq[i + 1].count_minus(reached);
    total = checked_add(total, checked_mul(seq[i].size() + 1, fresh));
    reached |= seq[i + 1];
  }
  return total;
}

bool cost_lemma_check(const VarSet& a, const VarSet& b, const VarSet& c) {
  const std::array<VarSet, 3> abc{a, b, c};
  const std::array<VarSet, 2> ac{a, c};
  bool inserting_helps = cost_l(abc) < cost_l(ac);

  const std::int64_t sa = a.size(), sb = b.size();
  const std::int64_t e = b.count_minus(a, c);
  const std::int64_t g = c.count_minus(a, b);
  bool inequality = (sa - sb) * g > (sa + 1) * e;
  return inserting_helps == inequality;
}

std::int64_t price_l_exact(const KeyHornInstance& inst, const VarSet& s, const VarSet& s2, int max_bodies) {
  const int m = inst.m();
  if (s.universe() != inst.n() || s2.universe() != inst.n()) {
    throw Error(ErrorCode::UniverseMismatch, "source/target over a different universe");
  }
  bool any = false;
  for (const auto& b : inst.bodies()) any = any || b.is_subset_of(s);
  if (!any) throw Error(ErrorCode::NoBodyInSource, "no body is contained in the source set");
  if (s2.is_subset_of(s)) return 0;
  if (m > max_bodies || m > 20) {
    throw Error(ErrorCode::LimitExceeded, "exact price_L limited to " + std::to_string(max_bodies) + " bodies");
  }

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  const std::size_t masks = std::size_t{1} << m;
  const auto mu = static_cast<std::size_t>(m);
  std::vector<VarSet> reached(masks);
  reached[0] = s;
  for (std::size_t mask = 1; mask < masks; ++mask) {
    auto low = static_cast<std::size_t>(std::countr_zero(mask));
    reached[mask] = reached[mask & (mask - 1)] | inst.body(static_cast<int>(low));
  }
  std::vector<std::int64_t> dp(masks * mu, kInf);
  for (int b = 0; b < m; ++b)
    if (inst.body(b).is_subset_of(s)) dp[(std::size_t{1} << b) * mu + static_cast<std::size_t>(b)] = 0;

  std::int64_t best = kInf;
  for (std::size_t mask = 1; mask < masks; ++mask) {
    for (int last = 0; last < m; ++last) {
      std::int64_t cur = dp[mask * mu + static_cast<std::size_t>(last)];
      if (cur == kInf) continue;
      const std::int64_t factor = inst.body(last).size() + 1;
      best = std::min(best, checked_add(cur, checked_mul(factor, s2.count_minus(reached[mask]))));
      for (int next = 0; next < m; ++next) {
        std::size_t bit = std::size_t{1} << next;
        if (mask & bit) continue;
        std::int64_t cand = checked_add(cur, checked_mul(factor, inst.body(next).count_minus(reached[mask])));
        std::int64_t& slot = dp[(mask | bit) * mu + static_cast<std::size_t>(next)];
        slot = std::min(slot, cand);
      }
    }
  }
  return best;
}

namespace {

struct Candidate {
  int body;
  int var;  // 0-based bit index
};

class BranchAndBound {
 public:
  BranchAndBound(const KeyHornInstance& inst, Measure mu, const ExactLimits& limits)
      : inst_(inst), limits_(limits), m_(inst.m()), n_(inst.n()) {
    if (n_ > 64) throw Error(ErrorCode::LimitExceeded, "exact search supports at most 64 variables");
    for (int b = 0; b < m_; ++b) {
      std::uint64_t mask = 0;
      inst.body(b).for_each([&](VarId v) { mask |= std::uint64_t{1} << (v - 1); });
      body_mask_.push_back(mask);
      const std::int64_t size = inst.body(b).size();
      switch (mu) {
        case Measure::B: body_w_.push_back(1); clause_w_.push_back(0); break;
        case Measure::BA: body_w_.push_back(size); clause_w_.push_back(0); break;
        case Measure::TA: body_w_.push_back(size); clause_w_.push_back(1); break;
        case Measure::C: body_w_.push_back(0); clause_w_.push_back(1); break;
        case Measure::BC: body_w_.push_back(1); clause_w_.push_back(1); break;
        case Measure::L: body_w_.push_back(0); clause_w_.push_back(size + 1); break;
      }
    }
    full_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    for (int v = 0; v < n_; ++v) {
      for (int b = 0; b < m_; ++b)
        if (!(body_mask_[static_cast<std::size_t>(b)] >> v & 1)) cands_.push_back({b, v});
    }
    if (static_cast<int>(cands_.size()) > limits.max_candidates) {
      throw Error(ErrorCode::LimitExceeded, "exact search over " + std::to_string(cands_.size()) +
                                                " candidate clauses exceeds the limit of " +
                                                std::to_string(limits.max_candidates));
    }
    // Suffix minima of clause weights within each head variable's block.
    const std::size_t count = cands_.size();
    suffix_min_.assign(count + 1, 0);
    block_end_.assign(count, count);
    block_min_.assign(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = count; i-- > 0;) {
      bool block_last = i + 1 == count || cands_[i + 1].var != cands_[i].var;
      std::int64_t w = clause_w_[static_cast<std::size_t>(cands_[i].body)];
      suffix_min_[i] = block_last ? w : std::min(w, suffix_min_[i + 1]);
      block_end_[i] = block_last ? i + 1 : block_end_[i + 1];
      block_min_[static_cast<std::size_t>(cands_[i].var)] = suffix_min_[i];
    }
    for (const auto& c : cands_) needed_ |= std::uint64_t{1} << c.var;
    heads_.assign(static_cast<std::size_t>(m_), 0);
  }

  ExactResult run(HornCNF incumbent) {
    best_ = measure_of(incumbent);
    witness_ = std::move(incumbent);
    start_ = std::chrono::steady_clock::now();
    search(0, 0, 0);
    ExactResult r;
    r.value = best_;
    r.witness = witness_;
    r.optimal = !timed_out_;
    r.nodes = nodes_;
    return r;
  }

 private:
  std::int64_t measure_of(const HornCNF& phi) const {
    std::int64_t total = 0;
    for (const auto& g : phi.groups()) {
      int b = index_of(g.body);
      total += body_w_[static_cast<std::size_t>(b)] + clause_w_[static_cast<std::size_t>(b)] * g.heads.size();
    }
    return total;
  }

  int index_of(const VarSet& body) const {
    for (int b = 0; b < m_; ++b)
      if (inst_.body(b) == body) return b;
    throw Error(ErrorCode::InvalidArgument, "incumbent uses a body outside the family");
  }

  std::int64_t bound(std::size_t i, std::uint64_t headed) const {
    std::int64_t lb = 0;
    std::uint64_t open = needed_ & ~headed;
    while (open) {
      int v = std::countr_zero(open);
      open &= open - 1;
      if (i < cands_.size() && cands_[i].var == v) {
        lb += suffix_min_[i];
      } else if (i < cands_.size() && v > cands_[i].var) {
        lb += block_min_[static_cast<std::size_t>(v)];
      } else {
        return std::numeric_limits<std::int64_t>::max() / 4;
      }
    }
    for (int b = 0; b < m_; ++b)
      if (heads_[static_cast<std::size_t>(b)] == 0) lb += body_w_[static_cast<std::size_t>(b)];
    return lb;
  }

  bool feasible() const {
    for (int b = 0; b < m_; ++b) {
      if (heads_[static_cast<std::size_t>(b)] == 0) return false;
    }
    for (int s = 0; s < m_; ++s) {
      std::uint64_t w = body_mask_[static_cast<std::size_t>(s)];
      bool changed = true;
      while (changed && w != full_) {
        changed = false;
        for (int b = 0; b < m_; ++b) {
          auto bm = body_mask_[static_cast<std::size_t>(b)];
          auto hm = heads_[static_cast<std::size_t>(b)];
          if ((bm & ~w) == 0 && (hm & ~w) != 0) {
            w |= hm;
            changed = true;
          }
        }
      }
      if (w != full_) return false;
    }
    return true;
  }

  HornCNF current_formula() const {
    std::vector<ClauseGroup> groups;
    for (int b = 0; b < m_; ++b) {
      VarSet heads(n_);
      for (int v = 0; v < n_; ++v)
        if (heads_[static_cast<std::size_t>(b)] >> v & 1) heads.insert(v + 1);
      groups.push_back({inst_.body(b), std::move(heads)});
    }
    return HornCNF(n_, std::move(groups));
  }

  void search(std::size_t i, std::int64_t cost, std::uint64_t headed) {
    if (timed_out_) return;
    if ((++nodes_ & 4095) == 0 && std::chrono::steady_clock::now() - start_ > limits_.timeout) {
      timed_out_ = true;
      return;
    }
    if (cost + bound(i, headed) >= best_) return;
    if ((headed & needed_) == needed_ && feasible()) {
      best_ = cost;
      witness_ = current_formula();
      return;
    }
    if (i == cands_.size()) return;
    const Candidate& c = cands_[i];
    const auto bi = static_cast<std::size_t>(c.body);
    const std::uint64_t bit = std::uint64_t{1} << c.var;

    std::int64_t add = clause_w_[bi] + (heads_[bi] == 0 ? body_w_[bi] : 0);
    heads_[bi] |= bit;
    search(i + 1, cost + add, headed | bit);
    heads_[bi] &= ~bit;

    bool last_for_var = block_end_[i] == i + 1;
    if (last_for_var && !(headed & bit)) return;
    search(i + 1, cost, headed);
  }

  const KeyHornInstance& inst_;
  ExactLimits limits_;
  int m_;
  int n_;
  std::uint64_t full_ = 0;
  std::uint64_t needed_ = 0;
  std::vector<std::uint64_t> body_mask_;
  std::vector<std::int64_t> body_w_;
  std::vector<std::int64_t> clause_w_;
  std::vector<Candidate> cands_;
  std::vector<std::int64_t> suffix_min_;
  std::vector<std::size_t> block_end_;
  std::vector<std::int64_t> block_min_;
  std::vector<std::uint64_t> heads_;
  std::int64_t best_ = 0;
  HornCNF witness_;
  std::chrono::steady_clock::time_point start_;
  bool timed_out_ = false;
  std::int64_t nodes_ = 0;
};

}  // namespace

ExactResult opt_exact(const KeyHornInstance& inst, Measure mu, const ExactLimits& limits) {
  BranchAndBound search(inst, mu, limits);
  HornCNF incumbent = inst.canonical_formula();
  if (inst.is_normalized()) {
    HornCNF approx = minimize(inst, mu).formula;
    if (measure_size(approx, mu) < measure_size(incumbent, mu)) incumbent = std::move(approx);
  }
  return search.run(std::move(incumbent));
}

}  // namespace keyhorn
