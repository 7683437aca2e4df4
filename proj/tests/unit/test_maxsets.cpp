#include "doctest.h"
#include "generators.hpp"

#include "ncb/maxsets.hpp"

#include <algorithm>

using namespace ncb;

namespace {

const char *kButterflyA = "{1,2}\n{1,5}\n{1,7}\n{1,8}\n{2,4}\n{2,7}\n{2,9}\n{3,4,5}\n"
                          "{3,4,8}\n{3,7}\n{3,8,9}\n{4,5,6}\n{5,6,9}\n{6,7}\n{6,8,9}\n";

NodeSet estimates(const Fdg &g) {
  NodeSet out;
  for (int s = 0; s < g.numSessions(); ++s)
    for (int v : g.estimatesOf(s))
      out.insert(v);
  return out;
}

bool sameSets(std::vector<NodeSet> a, std::vector<NodeSet> b) {
  std::sort(a.begin(), a.end(), canonicalLess);
  std::sort(b.begin(), b.end(), canonicalLess);
  return a == b;
}

} // namespace

TEST_CASE("irreducibility") {
  Fdg a = buildConstructionA(ncbtest::butterfly());
  for (int v = 0; v < a.size(); ++v)
    CHECK(isIrreducible(a, {v}, ClosureKind::PhiA));
  CHECK_FALSE(isIrreducible(a, {0, 1, 2}, ClosureKind::PhiA));
  CHECK(isIrreducible(a, {2, 6}, ClosureKind::PhiA));
  CHECK(isMaximalIrreducible(a, {5, 6}, ClosureKind::PhiA));
  CHECK_FALSE(isMaximalIrreducible(a, {0, 1, 2}, ClosureKind::PhiA));
  CHECK(isIrreducible(a, {}, ClosureKind::PhiA));
}

TEST_CASE("edgeless graph") {
  Fdg g = Fdg::generic(3, {});
  CHECK(isMaximalIrreducible(g, g.all(), ClosureKind::PhiA, Maximality::Cyclic));
  MaxSetCollection c = allMaxSetsCyclic(g, {}, ClosureKind::PhiA);
  CHECK(c.calls == 1);
  REQUIRE(c.sets.size() == 1);
  CHECK(c.sets[0] == g.all());
  MaxSetCollection two = allMaxSetsAcyclic(Fdg::generic(2, {}), {});
  REQUIRE(two.sets.size() == 1);
  CHECK(two.sets[0] == NodeSet{0, 1});
}

TEST_CASE("empty graph") {
  Fdg g = Fdg::generic(0, {});
  MaxSetCollection c = bruteForceMaxSets(g, ClosureKind::PhiA);
  REQUIRE(c.sets.size() == 1);
  CHECK(c.sets[0].empty());
}

TEST_CASE("butterfly construction-A listing") {
  Fdg a = buildConstructionA(ncbtest::butterfly());
  MaxSetCollection c = allMaxSetsCyclic(a, {}, ClosureKind::PhiA);
  CHECK(c.str() == kButterflyA);
  CHECK(bruteForceMaxSets(a, ClosureKind::PhiA).str() == kButterflyA);
}

TEST_CASE("butterfly independent-source listing") {
  Fdg b = buildConstructionB(ncbtest::butterfly());
  MaxSetCollection c = allMaxSetsCyclic(b, estimates(b), ClosureKind::Psi);
  CHECK(c.sets.size() == 16);
  for (NodeSet s : {NodeSet{3, 4}, NodeSet{3, 6}, NodeSet{3, 7}, NodeSet{4, 6}, NodeSet{4, 8}})
    CHECK(std::find(c.sets.begin(), c.sets.end(), s) != c.sets.end());
  // The three-edge sets of construction A shrink to pairs.
  for (NodeSet s : {NodeSet{2, 3, 4}, NodeSet{3, 4, 5}, NodeSet{2, 3, 7}, NodeSet{4, 5, 8}})
    CHECK(std::find(c.sets.begin(), c.sets.end(), s) == c.sets.end());
  CHECK(c.str() == "{1,2}\n{1,5}\n{1,7}\n{1,8}\n{2,4}\n{2,7}\n{2,9}\n{3,7}\n{3,8,9}\n"
                   "{4,5}\n{4,7}\n{4,8}\n{5,7}\n{5,9}\n{6,7}\n{6,8,9}\n");
  // Without the exclusion, sets holding estimates appear as well.
  MaxSetCollection all = allMaxSetsCyclic(b, {}, ClosureKind::Psi);
  CHECK(all.sets.size() == 25);
  for (const auto &s : all.sets)
    CHECK((s.intersects(estimates(b)) ||
           std::find(c.sets.begin(), c.sets.end(), s) != c.sets.end()));
}

TEST_CASE("line graph call count") {
  for (int n = 3; n <= 10; ++n) {
    MaxSetCollection c = allMaxSetsAcyclic(ncbtest::lineGraph(n), {});
    CHECK(c.calls == uint64_t(n + 1));
    // Each singleton {k} covers the line: k's ancestors and descendants.
    REQUIRE(c.sets.size() == size_t(n));
    for (int k = 0; k < n; ++k)
      CHECK(c.sets[k] == NodeSet{k});
  }
}

TEST_CASE("seed containment on gbar") {
  Fdg g = subgraphGbar(buildConstructionB(ncbtest::butterfly()));
  MaxSetCollection c = allMaxSetsAcyclic(g, {0});
  CHECK_FALSE(c.sets.empty());
  for (const auto &s : c.sets)
    CHECK(s.contains(0));
}

TEST_CASE("acyclic algorithm matches brute force on random DAGs") {
  ncbtest::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    Fdg g = ncbtest::randomDag(rng, 8, 0.3);
    MaxSetCollection fast = allMaxSetsAcyclic(g, {});
    MaxSetCollection slow = bruteForceMaxSets(g, ClosureKind::PhiA, Maximality::Acyclic);
    CHECK(sameSets(fast.sets, slow.sets));
    // Calls are bounded by the number of irreducible sets plus one per leaf.
    CHECK(fast.calls >= fast.sets.size());
  }
}

TEST_CASE("cyclic algorithm matches brute force on random networks") {
  ncbtest::Rng rng(22);
  for (int i = 0; i < 60; ++i) {
    Network net = ncbtest::randomNetwork(rng);
    Fdg a = buildConstructionA(net);
    Fdg b = buildConstructionB(net);
    CHECK(sameSets(allMaxSetsCyclic(a, {}, ClosureKind::PhiA).sets,
                   bruteForceMaxSets(a, ClosureKind::PhiA, Maximality::Cyclic).sets));
    for (ClosureKind k : {ClosureKind::PhiB, ClosureKind::Psi})
      CHECK(sameSets(allMaxSetsCyclic(b, {}, k).sets,
                     bruteForceMaxSets(b, k, Maximality::Cyclic).sets));
  }
}

TEST_CASE("brute force guard") {
  CHECK_THROWS(bruteForceMaxSets(ncbtest::lineGraph(25), ClosureKind::PhiA));
}
