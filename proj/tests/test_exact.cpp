#include <doctest.h>

#include <random>

#include "keyhorn/approx.hpp"
#include "keyhorn/error.hpp"
#include "keyhorn/exact.hpp"
#include "keyhorn/graph.hpp"
#include "oracles.hpp"

using namespace keyhorn;

namespace {

KeyHornInstance triangle() { return KeyHornInstance(3, {VarSet(3, {1, 2}), VarSet(3, {2, 3}), VarSet(3, {1, 3})}); }
KeyHornInstance singletons() { return KeyHornInstance(3, {VarSet(3, {1}), VarSet(3, {2}), VarSet(3, {3})}); }

VarSet random_set(std::mt19937_64& rng, int n, unsigned one_in) {
  VarSet s(n);
  for (int v = 1; v <= n; ++v)
    if (rng() % one_in == 0) s.insert(v);
  return s;
}

struct Small {
  KeyHornInstance inst;
  std::vector<oracle::Set> sets;
};

bool random_small(std::mt19937_64& rng, int max_n, Small& out) {
  const int n = 3 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 2));
  auto bodies = oracle::random_sperner(rng, n, 2 + static_cast<int>(rng() % 3), 3);
  if (bodies.size() < 2) return false;
  std::vector<VarSet> vs;
  for (const auto& b : bodies) vs.push_back(oracle::to_varset(n, b));
  out = {KeyHornInstance(n, vs), bodies};
  return true;
}

}  // namespace

TEST_CASE("cost_l") {
  std::vector<VarSet> one{VarSet(4, {1, 2}), VarSet(4, {3})};
  CHECK(cost_l(one) == 3);
  std::vector<VarSet> two{VarSet(4, {1, 2}), VarSet(4, {2, 3}), VarSet(4, {4})};
  CHECK(cost_l(two) == 6);
  std::vector<VarSet> none{VarSet(4, {1}), VarSet(4, {1})};
  CHECK(cost_l(none) == 0);
  std::vector<VarSet> single{VarSet(4, {1})};
  CHECK(cost_l(single) == 0);
  CHECK_THROWS_AS(cost_l(std::vector<VarSet>{}), Error);
}

TEST_CASE("cost_lemma_check") {
  VarSet a(6, {1, 2, 3}), c(6, {1, 2});
  CHECK(cost_lemma_check(a, a, VarSet(6, {4, 5})));
  CHECK(cost_lemma_check(a, VarSet(6, {4}), c));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 2000; ++i) {
    const int n = 1 + static_cast<int>(rng() % 10);
    CHECK(cost_lemma_check(random_set(rng, n, 2), random_set(rng, n, 2), random_set(rng, n, 2)));
  }
}

TEST_CASE("price_l_exact examples") {
  KeyHornInstance detour(8, {VarSet(8, {1, 2, 3, 4}), VarSet(8, {5})});
  CHECK(price_l_exact(detour, VarSet(8, {1, 2, 3, 4}), VarSet(8, {6, 7, 8})) == 11);
  CHECK(price_l_exact(detour, VarSet(8, {1, 2, 3, 4}), VarSet(8, {2})) == 0);
  CHECK(price_l_exact(triangle(), VarSet(3, {1, 2}), VarSet(3, {2, 3})) == 3);
  CHECK_THROWS_AS(price_l_exact(triangle(), VarSet(3, {1}), VarSet(3, {3})), Error);
  CHECK_THROWS_AS(price_l_exact(triangle(), VarSet(3, {1, 2}), VarSet(3, {3}), 2), Error);
}

TEST_CASE("price_l_exact matches exhaustive clause enumeration") {
  std::mt19937_64 rng(43);
  int checked = 0;
  while (checked < 80) {
    Small sm;
    if (!random_small(rng, 5, sm)) continue;
    const int n = sm.inst.n();
    VarSet s = sm.inst.body(static_cast<int>(rng() % static_cast<unsigned>(sm.inst.m())));
    VarSet s2 = random_set(rng, n, 2);
    std::int64_t exact = price_l_exact(sm.inst, s, s2);
    CHECK(exact == oracle::brute_price_l(n, sm.sets, oracle::to_set(s), oracle::to_set(s2)));
    std::int64_t lam = lambda(sm.inst, s, s2).weight;
    CHECK(exact <= lam);
    CHECK(17 * lam <= 54 * exact);
    ++checked;
  }
}

TEST_CASE("opt_exact examples") {
  ExactResult c = opt_exact(singletons(), Measure::C);
  CHECK(c.value == 3);
  CHECK(c.optimal);
  CHECK(verify_representation(c.witness, singletons()).accepted);
  CHECK(measure_size(c.witness, Measure::C) == 3);

  ExactResult l = opt_exact(triangle(), Measure::L);
  CHECK(l.value == 9);
  CHECK(verify_representation(l.witness, triangle()).accepted);

  CHECK(opt_exact(triangle(), Measure::B).value == 3);
  CHECK(opt_exact(triangle(), Measure::BA).value == 6);

  ExactLimits tight;
  tight.max_candidates = 2;
  CHECK_THROWS_AS(opt_exact(triangle(), Measure::C, tight), Error);
}

TEST_CASE("opt_exact matches exhaustive enumeration and respects bounds") {
  std::mt19937_64 rng(47);
  int checked = 0;
  while (checked < 40) {
    Small sm;
    if (!random_small(rng, 5, sm)) continue;
    std::int64_t area = 0;
    for (const auto& b : sm.inst.bodies()) area += b.size();
    for (Measure mu : kAllMeasures) {
      ExactResult r = opt_exact(sm.inst, mu);
      REQUIRE(r.optimal);
      CHECK(r.value == measure_size(r.witness, mu));
      CHECK(verify_representation(r.witness, sm.inst).accepted);
      CHECK(r.value == oracle::brute_opt(sm.inst.n(), sm.sets, mu));
      CHECK(lower_bound(sm.inst, mu) <= r.value);
      if (mu == Measure::B) CHECK(r.value == sm.inst.m());
      if (mu == Measure::BA) CHECK(r.value == area);
      CHECK(best_lower_bound(sm.inst, mu) <= r.value);
      if (mu == Measure::C || mu == Measure::BC) CHECK(lower_bound_partition_c(sm.inst) <= r.value);
    }
    ++checked;
  }
}
