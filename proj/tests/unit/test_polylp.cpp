#include "doctest.h"
#include "generators.hpp"
#include "reference.hpp"

#include "ncb/bounds.hpp"
#include "ncb/polylp.hpp"
#include "ncb/simplex.hpp"

using namespace ncb;

namespace {

bool polymatroidal(const std::vector<Rational> &h, int n) {
  for (const auto &row : elementalInequalities(n))
    if (!row.satisfiedBy(h))
      return false;
  return true;
}

} // namespace

TEST_CASE("dense simplex") {
  DenseLp lp;
  lp.numVars = 1;
  lp.objective = {1};
  lp.rows.push_back({{{0, Rational(1)}}, Relation::Le, Rational(3)});
  DenseResult r = solveDense(lp);
  CHECK(r.status == LpStatus::Optimal);
  CHECK(r.optimum == 3);

  DenseLp two;
  two.numVars = 2;
  two.objective = {1, 1};
  two.rows.push_back({{{0, Rational(1)}, {1, Rational(1)}}, Relation::Le, Rational(4)});
  two.rows.push_back({{{0, Rational(1)}}, Relation::Le, Rational(3)});
  two.rows.push_back({{{1, Rational(1)}}, Relation::Le, Rational(3)});
  CHECK(solveDense(two).optimum == 4);

  DenseLp unb;
  unb.numVars = 2;
  unb.objective = {1, 0};
  unb.rows.push_back({{{0, Rational(1)}, {1, Rational(-1)}}, Relation::Ge, Rational(1)});
  CHECK(solveDense(unb).status == LpStatus::Unbounded);

  DenseLp inf;
  inf.numVars = 1;
  inf.objective = {1};
  inf.rows.push_back({{{0, Rational(1)}}, Relation::Ge, Rational(2)});
  inf.rows.push_back({{{0, Rational(1)}}, Relation::Le, Rational(1)});
  CHECK(solveDense(inf).status == LpStatus::Infeasible);

  DenseLp eq;
  eq.numVars = 3;
  eq.objective = {Rational(-1), Rational(-2), Rational(0)};
  eq.rows.push_back({{{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}}, Relation::Eq, Rational(5)});
  eq.rows.push_back({{{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}}, Relation::Eq, Rational(5)});
  eq.rows.push_back({{{2, Rational(1)}}, Relation::Le, Rational(2)});
  DenseResult e = solveDense(eq);
  CHECK(e.status == LpStatus::Optimal);
  CHECK(e.optimum == -3);
}

TEST_CASE("elemental counts") {
  CHECK(elementalInequalities(2).size() == 3);
  CHECK(elementalInequalities(3).size() == 9);
  CHECK(elementalInequalities(9).size() == 4617);
  for (int n = 1; n <= 8; ++n)
    CHECK(elementalInequalities(n).size() == elementalCount(n));
  CHECK_THROWS(elementalInequalities(0));
}

TEST_CASE("Ingleton generators") {
  for (int n = 4; n <= 6; ++n) {
    uint64_t count = 0;
    ncbtest::forEachIngleton(n, [&](uint32_t, uint32_t, uint32_t, uint32_t) { ++count; });
    CHECK(ingletonInequalities(n).size() == count);
    CHECK(ingletonClosedForm(n) == count);
  }
  CHECK(ingletonClosedForm(4) == 6);
  CHECK(ingletonInequalities(3).empty());
  // With D empty the row reduces to submodularity; with A = B it is trivial.
  std::vector<Rational> h(16, 0);
  ncbtest::Rng rng(3);
  std::uniform_int_distribution<int> v(0, 4);
  for (int t = 0; t < 200; ++t) {
    // Random rank function of a linear code on four columns.
    LinearCode code;
    code.q = 3;
    code.dims = {2};
    for (int e = 0; e < 3; ++e)
      code.edges.push_back({{v(rng) % 3, v(rng) % 3}});
    for (uint32_t m = 1; m < 16; ++m)
      h[m] = rank(code, m);
    CHECK(ingletonRow(1, 2, 4, 8).satisfiedBy(h));
    CHECK(ingletonRow(1, 2, 4, 0).satisfiedBy(h));
    CHECK(ingletonRow(1, 1, 4, 8).satisfiedBy(h));
  }
}

TEST_CASE("constraint helpers") {
  LinearConstraint c = makeConstraint({{3, 1}, {1, 2}, {3, -1}, {0, 5}}, Relation::Le, 4);
  CHECK(c.coeffs.size() == 1);
  CHECK(c.coeffs[0].first == 1);
  CHECK(c.coeffs[0].second == 2);
  std::vector<Rational> h = {0, 2, 0, 0};
  CHECK(c.lhs(h) == 4);
  CHECK(c.satisfiedBy(h));
  h[1] = 3;
  CHECK_FALSE(c.satisfiedBy(h));
}

TEST_CASE("independent LP small networks") {
  Network one = parseNetwork(
      R"({"nodes":[1,2],"edges":[[1,1,2,"5"]],"sessions":[{"id":1,"source":1,"sinks":[2]}]})");
  CHECK(solveLp(buildIndependentLp(one, {1})).optimum == 5);

  Network bf = ncbtest::butterfly();
  LpProblem p = buildIndependentLp(bf, {1, 1});
  LpSolution s = solveLp(p);
  CHECK(s.status == LpStatus::Optimal);
  CHECK(s.optimum == 2);
  CHECK(polymatroidal(s.point, 9));
  for (const auto &row : p.rows)
    CHECK(row.satisfiedBy(s.point));

  CHECK(solveLp(buildIndependentLp(bf, {1, 0})).optimum == 1);
  CHECK(lpRegionProbe(bf, 1) == 1);
  CHECK(lpRegionProbe(bf, 0) == 0);
  CHECK(lpRegionProbe(ncbtest::butterfly({1, 3, 3, 1, 3, 3, 3}), 3) <= 4);
}

TEST_CASE("presolve agrees with the direct solve") {
  ncbtest::Rng rng(13);
  int solved = 0;
  for (int i = 0; i < 40 && solved < 15; ++i) {
    Network net = ncbtest::randomNetwork(rng, 7, 2);
    if (net.numSessions() + net.numEdges() > 6)
      continue;
    std::vector<Rational> w(net.numSessions(), 1);
    LpProblem p = buildIndependentLp(net, w);
    SolveOptions direct;
    direct.presolve = false;
    LpSolution a = solveLp(p);
    LpSolution b = solveLp(p, direct);
    CHECK(a.status == b.status);
    if (a.status == LpStatus::Optimal) {
      CHECK(a.optimum == b.optimum);
      for (const auto &row : p.rows)
        CHECK(row.satisfiedBy(a.point));
    }
    ++solved;
  }
  CHECK(solved >= 10);
}

TEST_CASE("LP stays inside the functional-dependence bound") {
  ncbtest::Rng rng(17);
  for (int i = 0; i < 15; ++i) {
    Network net = ncbtest::randomNetwork(rng, 8, 2);
    Region fd = fdRegion(net, ClosureKind::Psi);
    for (SessionSet w = 1; w <= fd.full(); ++w)
      CHECK(ExtRational(lpRegionProbe(net, w)) <= fd.at(w));
  }
}

TEST_CASE("correlated LP") {
  Network bf = ncbtest::butterfly();
  // Fully correlated pair: one bit serves both demands.
  std::vector<Rational> joint = {0, 1, 1, 1};
  LpProblem p = buildCorrelatedLp(bf, joint, {});
  CHECK(solveLp(p).status == LpStatus::Optimal);

  // Independent entropies behave like pinned rates.
  std::vector<Rational> indep = {0, 1, 1, 2};
  CHECK(solveLp(buildCorrelatedLp(bf, indep, {})).status == LpStatus::Optimal);
  std::vector<Rational> tooMuch = {0, 2, 1, 3};
  CHECK(solveLp(buildCorrelatedLp(bf, tooMuch, {})).status == LpStatus::Infeasible);

  std::vector<Rational> bad = {0, 1, 1, 3};
  CHECK_THROWS_AS(buildCorrelatedLp(bf, bad, {}), std::invalid_argument);
}

TEST_CASE("LP text round trip") {
  LpProblem p = buildIndependentLp(ncbtest::butterfly(), {1, 2});
  std::string text = dumpLp(p);
  LpProblem q = loadLp(text);
  CHECK(dumpLp(q) == text);
  CHECK(q.polymatroidal);
  CHECK(q.rows.size() == p.rows.size());
  CHECK(solveLp(q).optimum == solveLp(p).optimum);
  CHECK_THROWS_AS(loadLp("garbage"), std::invalid_argument);
}
