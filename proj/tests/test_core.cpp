#include <doctest.h>

#include <random>

#include "keyhorn/error.hpp"
#include "keyhorn/horn.hpp"
#include "oracles.hpp"

using namespace keyhorn;

namespace {

// a..e as 1..5: (a→b) (b→a) (ac→d) (ac→e)
HornCNF intro_formula() {
  return HornCNF(5, {{VarSet(5, {1}), VarSet(5, {2})},
                     {VarSet(5, {2}), VarSet(5, {1})},
                     {VarSet(5, {1, 3}), VarSet(5, {4, 5})}});
}

KeyHornInstance triangle() { return KeyHornInstance(3, {VarSet(3, {1, 2}), VarSet(3, {2, 3}), VarSet(3, {1, 3})}); }

HornCNF random_formula(std::mt19937_64& rng, int n, int groups) {
  std::vector<ClauseGroup> out;
  for (int g = 0; g < groups; ++g) {
    VarSet body(n), heads(n);
    int bsize = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < bsize; ++i) body.insert(1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
    if (body.is_full()) continue;
    for (int v = 1; v <= n; ++v)
      if (!body.contains(v) && rng() % 3 == 0) heads.insert(v);
    out.push_back({body, heads});
  }
  return HornCNF(n, std::move(out));
}

}  // namespace

TEST_CASE("varset basics") {
  VarSet a(70, {1, 64, 65, 70});
  CHECK(a.size() == 4);
  CHECK(a.contains(65));
  CHECK_FALSE(a.contains(2));
  CHECK(a.to_string() == "1 64 65 70");
  VarSet b(70, {1, 2});
  CHECK((a | b).size() == 5);
  CHECK((a & b) == VarSet(70, {1}));
  CHECK((a - b).size() == 3);
  CHECK(a.count_minus(b) == 3);
  CHECK(a.complement().size() == 66);
  CHECK(VarSet::full(70).is_full());
  CHECK(VarSet(70, {1}).is_subset_of(b));
  CHECK_THROWS_AS(a.insert(71), Error);
  CHECK_THROWS_AS(a |= VarSet(5), Error);
  CHECK(canonical_less(VarSet(4, {3}), VarSet(4, {1, 2})));
  CHECK(canonical_less(VarSet(4, {1, 3}), VarSet(4, {2, 3})));
}

TEST_CASE("measures of the introductory formula") {
  HornCNF phi = intro_formula();
  CHECK(measure_size(phi, Measure::B) == 3);
  CHECK(measure_size(phi, Measure::BA) == 4);
  CHECK(measure_size(phi, Measure::TA) == 8);
  CHECK(measure_size(phi, Measure::C) == 4);
  CHECK(measure_size(phi, Measure::BC) == 7);
  CHECK(measure_size(phi, Measure::L) == 10);
}

TEST_CASE("measures of trivial formulas") {
  HornCNF empty(4);
  for (Measure mu : kAllMeasures) CHECK(measure_size(empty, mu) == 0);
  HornCNF one(3, {{VarSet(3, {1, 2}), VarSet(3, {3})}});
  CHECK(measure_size(one, Measure::B) == 1);
  CHECK(measure_size(one, Measure::BA) == 2);
  CHECK(measure_size(one, Measure::TA) == 3);
  CHECK(measure_size(one, Measure::C) == 1);
  CHECK(measure_size(one, Measure::BC) == 2);
  CHECK(measure_size(one, Measure::L) == 3);
}

TEST_CASE("empty-head groups count as bodies only") {
  std::vector<ClauseGroup> groups{{VarSet(4, {1, 2}), VarSet(4)}, {VarSet(4, {3}), VarSet(4, {4})}};
  CHECK(measure_size(groups, Measure::B) == 2);
  CHECK(measure_size(groups, Measure::BA) == 3);
  CHECK(measure_size(groups, Measure::TA) == 4);
  CHECK(measure_size(groups, Measure::C) == 1);
  CHECK(measure_size(groups, Measure::BC) == 3);
  CHECK(measure_size(groups, Measure::L) == 2);
  CHECK(HornCNF(4, groups).groups().size() == 1);
}

TEST_CASE("canonicalization merges bodies and orders groups") {
  HornCNF phi(4, {{VarSet(4, {2, 3}), VarSet(4, {1})},
                  {VarSet(4, {4}), VarSet(4, {1})},
                  {VarSet(4, {2, 3}), VarSet(4, {4})}});
  REQUIRE(phi.groups().size() == 2);
  CHECK(phi.groups()[0].body == VarSet(4, {4}));
  CHECK(phi.groups()[1].heads == VarSet(4, {1, 4}));
  CHECK_THROWS_AS(HornCNF(3, {{VarSet(3, {1}), VarSet(3, {1})}}), Error);
  CHECK_THROWS_AS(HornCNF(3, {{VarSet(3), VarSet(3, {1})}}), Error);
}

TEST_CASE("forward chaining") {
  HornCNF phi = intro_formula();
  CHECK(forward_chain(phi, VarSet(5, {1})) == VarSet(5, {1, 2}));
  CHECK(forward_chain(phi, VarSet(5, {1, 3})) == VarSet::full(5));
  CHECK(forward_chain(phi, VarSet::full(5)) == VarSet::full(5));

  auto trace = forward_chain_trace(phi, VarSet(5, {1, 3}));
  REQUIRE(trace.size() == 2);
  CHECK(trace[0] == VarSet(5, {1, 3}));
  CHECK(trace[1] == VarSet::full(5));

  CHECK(forward_chain_trace(phi, VarSet::full(5)).size() == 1);

  HornCNF chain(3, {{VarSet(3, {1}), VarSet(3, {2})}, {VarSet(3, {2}), VarSet(3, {3})}});
  auto steps = forward_chain_trace(chain, VarSet(3, {1}));
  REQUIRE(steps.size() == 3);
  CHECK(steps[1] == VarSet(3, {1, 2}));
  CHECK(steps[2] == VarSet::full(3));
}

TEST_CASE("entailment and equivalence") {
  HornCNF phi = intro_formula();
  CHECK(entails(phi, VarSet(5, {1}), 2));
  CHECK_FALSE(entails(phi, VarSet(5, {3}), 4));
  CHECK_FALSE(entails(HornCNF(5), VarSet(5, {1}), 2));

  HornCNF reordered(5, {{VarSet(5, {1, 3}), VarSet(5, {5, 4})},
                        {VarSet(5, {2}), VarSet(5, {1})},
                        {VarSet(5, {1}), VarSet(5, {2})}});
  CHECK(equivalent(phi, reordered));

  HornCNF a(3, {{VarSet(3, {1}), VarSet(3, {2})}, {VarSet(3, {2}), VarSet(3, {3})}});
  HornCNF b(3, {{VarSet(3, {1}), VarSet(3, {2, 3})}, {VarSet(3, {2}), VarSet(3, {3})}});
  CHECK(equivalent(a, b));
  CHECK_FALSE(equivalent(HornCNF(2, {{VarSet(2, {1}), VarSet(2, {2})}}),
                         HornCNF(2, {{VarSet(2, {2}), VarSet(2, {1})}})));
}

TEST_CASE("instance invariants") {
  KeyHornInstance t = triangle();
  CHECK(t.m() == 3);
  CHECK(t.k() == 2);
  CHECK(t.delta() == 2);
  CHECK(t.is_normalized());
  CHECK(t.core().empty());
  CHECK_THROWS_AS(KeyHornInstance(3, {VarSet(3, {1}), VarSet(3, {1, 2})}), Error);
  CHECK_THROWS_AS(KeyHornInstance(3, {VarSet(3, {1}), VarSet(3, {1})}), Error);
  CHECK_THROWS_AS(KeyHornInstance(2, {VarSet(2, {1, 2})}), Error);
  CHECK_THROWS_AS(KeyHornInstance(2, {VarSet(2)}), Error);
  CHECK_THROWS_AS(KeyHornInstance(2, {}), Error);
  CHECK_FALSE(KeyHornInstance(3, {VarSet(3, {1, 2}), VarSet(3, {1, 3})}).is_normalized());
}

TEST_CASE("verify_representation") {
  KeyHornInstance t = triangle();
  HornCNF cycle(3, {{VarSet(3, {1, 2}), VarSet(3, {3})},
                    {VarSet(3, {2, 3}), VarSet(3, {1})},
                    {VarSet(3, {1, 3}), VarSet(3, {2})}});
  CHECK(verify_representation(cycle, t).accepted);
  CHECK(verify_representation(t.canonical_formula(), t).accepted);

  HornCNF partial(3, {{VarSet(3, {1, 2}), VarSet(3, {3})}});
  VerifyResult r = verify_representation(partial, t);
  CHECK_FALSE(r.accepted);
  CHECK(r.failure == VerifyResult::Failure::DeficientClosure);
  CHECK(r.group.body == VarSet(3, {2, 3}));
  CHECK(r.closure == VarSet(3, {2, 3}));

  HornCNF foreign(3, {{VarSet(3, {1}), VarSet(3, {2, 3})},
                      {VarSet(3, {2, 3}), VarSet(3, {1})}});
  VerifyResult f = verify_representation(foreign, t);
  CHECK(f.failure == VerifyResult::Failure::ForeignBody);
  CHECK(f.group.body == VarSet(3, {1}));

  CHECK_THROWS_AS(verify_representation(HornCNF(4), t), Error);
}

TEST_CASE("closure properties on random formulas") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 8);
    HornCNF phi = random_formula(rng, n, 1 + static_cast<int>(rng() % 6));
    VarSet z(n), z2(n);
    for (int v = 1; v <= n; ++v) {
      if (rng() % 3 == 0) z.insert(v);
      if (z.contains(v) || rng() % 3 == 0) z2.insert(v);
    }
    VarSet fz = forward_chain(phi, z);
    CHECK(z.is_subset_of(fz));
    CHECK(fz.is_subset_of(forward_chain(phi, z2)));
    CHECK(forward_chain(phi, fz) == fz);
    CHECK(oracle::to_varset(n, oracle::closure(oracle::clauses_of(phi), oracle::to_set(z))) == fz);
    auto trace = forward_chain_trace(phi, z);
    CHECK(trace.back() == fz);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i - 1].count_minus(trace[i]) == 0);

    CHECK(measure_size(phi, Measure::BC) == measure_size(phi, Measure::B) + measure_size(phi, Measure::C));
    CHECK(measure_size(phi, Measure::TA) == measure_size(phi, Measure::BA) + measure_size(phi, Measure::C));
    CHECK(measure_size(phi, Measure::L) >= measure_size(phi, Measure::TA));
    for (Measure mu : kAllMeasures) CHECK(measure_size(phi, mu) == oracle::measure(oracle::clauses_of(phi), mu));
  }
}

TEST_CASE("measure names round-trip") {
  for (Measure mu : kAllMeasures) CHECK(parse_measure(to_string(mu)) == mu);
  CHECK_FALSE(parse_measure("X").has_value());
}
