#include <doctest.h>

#include <algorithm>
#include <random>

#include "keyhorn/approx.hpp"
#include "keyhorn/error.hpp"
#include "keyhorn/reduce.hpp"
#include "oracles.hpp"

using namespace keyhorn;

TEST_CASE("sperner_minimal") {
  auto r = sperner_minimal(3, std::vector<VarSet>{VarSet(3, {1}), VarSet(3, {1, 2}), VarSet(3, {2, 3})});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == VarSet(3, {1}));
  CHECK(r[1] == VarSet(3, {2, 3}));

  std::vector<VarSet> sperner{VarSet(3, {1, 2}), VarSet(3, {2, 3})};
  CHECK(sperner_minimal(3, sperner) == sperner);

  auto dup = sperner_minimal(3, std::vector<VarSet>{VarSet(3, {1, 2}), VarSet(3, {1, 2})});
  CHECK(dup.size() == 1);

  CHECK_THROWS_AS(sperner_minimal(3, std::vector<VarSet>{}), Error);
  CHECK_THROWS_AS(sperner_minimal(2, std::vector<VarSet>{VarSet(2, {1, 2})}), Error);
}

TEST_CASE("normalize removes core and uncovered variables") {
  Normalized norm = normalize(4, std::vector<VarSet>{VarSet(4, {1, 2}), VarSet(4, {1, 3})});
  CHECK(norm.record.removed_core == VarSet(4, {1}));
  CHECK(norm.record.uncovered == VarSet(4, {4}));
  CHECK(norm.instance.n() == 2);
  CHECK(norm.record.var_map == std::vector<VarId>{2, 3});
  CHECK(norm.instance.is_normalized());

  HornCNF reduced = minimize(norm.instance, Measure::C).formula;
  HornCNF lifted = lift(reduced, norm.record);
  bool has_uncovered_clause = false;
  for (const auto& g : lifted.groups())
    if (g.body == VarSet(4, {1, 2}) && g.heads.contains(4)) has_uncovered_clause = true;
  CHECK(has_uncovered_clause);
  CHECK(verify_representation(lifted, KeyHornInstance(4, norm.record.minimal_bodies)).accepted);
}

TEST_CASE("normalize on normalized input is the identity") {
  std::vector<VarSet> bodies{VarSet(3, {1, 2}), VarSet(3, {2, 3}), VarSet(3, {1, 3})};
  Normalized norm = normalize(3, bodies);
  CHECK(norm.record.identity());
  HornCNF phi = minimize(norm.instance, Measure::L).formula;
  CHECK(lift(phi, norm.record) == phi);
}

TEST_CASE("single body is trivial") {
  Normalized norm = normalize(3, std::vector<VarSet>{VarSet(3, {1, 2})});
  REQUIRE(norm.record.trivial());
  CHECK(*norm.record.trivial_body == VarSet(3, {1, 2}));
  HornCNF lifted = lift(HornCNF(), norm.record);
  REQUIRE(lifted.groups().size() == 1);
  CHECK(lifted.groups()[0].body == VarSet(3, {1, 2}));
  CHECK(lifted.groups()[0].heads == VarSet(3, {3}));

  // A body plus a superset collapses to one body as well.
  CHECK(normalize(3, std::vector<VarSet>{VarSet(3, {1}), VarSet(3, {1, 2})}).record.trivial());
}

TEST_CASE("smallest body prefers size then lexicographic order") {
  std::vector<VarSet> bodies{VarSet(5, {2, 3}), VarSet(5, {1, 4}), VarSet(5, {1, 2, 5})};
  CHECK(smallest_body(bodies) == VarSet(5, {1, 4}));
}

TEST_CASE("normalize record invariants on random raw families") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 400; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int m = 1 + static_cast<int>(rng() % 6);
    std::vector<VarSet> raw;
    for (int i = 0; i < m; ++i) {
      VarSet b(n);
      int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
      while (b.size() < size) b.insert(1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
      raw.push_back(b);
    }
    Normalized norm = normalize(n, raw);
    const auto& rec = norm.record;
    CHECK_FALSE(rec.removed_core.intersects(rec.uncovered));
    for (const auto& d : rec.dropped_bodies) {
      bool covered = std::any_of(rec.minimal_bodies.begin(), rec.minimal_bodies.end(),
                                 [&](const VarSet& k) { return k.is_subset_of(d); });
      CHECK(covered);
    }
    for (const auto& b : raw) {
      bool covered = std::any_of(rec.minimal_bodies.begin(), rec.minimal_bodies.end(),
                                 [&](const VarSet& k) { return k.is_subset_of(b); });
      CHECK(covered);
    }
    CHECK(rec.minimal_bodies.size() <= raw.size());
    CHECK(sperner_minimal(n, rec.minimal_bodies) == rec.minimal_bodies);

    auto shuffled = raw;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto a = sperner_minimal(n, raw), b = sperner_minimal(n, shuffled);
    std::sort(a.begin(), a.end(), canonical_less);
    std::sort(b.begin(), b.end(), canonical_less);
    CHECK(a == b);

    KeyHornInstance original(n, rec.minimal_bodies);
    for (Measure mu : kAllMeasures) {
      HornCNF reduced = rec.trivial() ? HornCNF() : minimize(norm.instance, mu).formula;
      HornCNF lifted = lift(reduced, rec);
      CHECK(verify_representation(lifted, original).accepted);
    }
  }
}
