#include "doctest.h"
#include "generators.hpp"
#include "reference.hpp"

#include "ncb/bounds.hpp"
#include "ncb/maxsets.hpp"
#include "ncb/polylp.hpp"
#include "ncb/rankoracle.hpp"

using namespace ncb;

namespace {

struct Sample {
  Network net;
  LinearCode code;
};

std::vector<Sample> codeCorpus(int want, uint64_t seed) {
  ncbtest::Rng rng(seed);
  std::vector<Sample> out;
  std::uniform_int_distribution<int> dim(1, 2);
  for (int tries = 0; int(out.size()) < want && tries < 5000; ++tries) {
    Network net = ncbtest::randomNetwork(rng, 8, 3);
    std::vector<int> dims(net.numSessions());
    for (int &d : dims)
      d = dim(rng);
    if (auto c = randomCode(net, 3, dims, 20, rng()))
      out.push_back({net, *c});
  }
  return out;
}

uint64_t groundMask(const Fdg &g, const NodeSet &s) {
  uint64_t m = 0;
  s.forEach([&](int v) {
    const FdgNode &n = g.node(v);
    if (n.kind == NodeKind::EdgeVar)
      m |= uint64_t(1) << (g.numSessions() + n.edge);
    else
      m |= uint64_t(1) << n.session;
  });
  return m;
}

} // namespace

TEST_CASE("closures are determinations under random codes") {
  auto corpus = codeCorpus(20, 101);
  REQUIRE(corpus.size() == 20);
  ncbtest::Rng rng(5);
  for (const auto &[net, code] : corpus) {
    Fdg a = buildConstructionA(net);
    Fdg b = buildConstructionB(net);
    std::bernoulli_distribution coin(0.3);
    for (int t = 0; t < 20; ++t) {
      NodeSet x;
      for (int v = 0; v < b.size(); ++v)
        if (coin(rng))
          x.insert(v);
      NodeSet xa = x & a.all();
      CHECK(verifyDetermination(code, groundMask(a, xa),
                                groundMask(a, closure(a, xa, ClosureKind::PhiA))));
      for (ClosureKind k : {ClosureKind::PhiB, ClosureKind::Psi})
        CHECK(rankNodes(code, b, x | closure(b, x, k)) == rankNodes(code, b, x));
    }
  }
}

TEST_CASE("maximal sets carry all the information") {
  for (const auto &[net, code] : codeCorpus(10, 202)) {
    Fdg a = buildConstructionA(net);
    int total = code.totalDim();
    for (const auto &m : allMaxSetsCyclic(a, {}, ClosureKind::PhiA).sets)
      CHECK(rankNodes(code, a, m) == total);
  }
}

TEST_CASE("fd-separation gives zero conditional rank") {
  ncbtest::Rng rng(9);
  int separated = 0;
  for (const auto &[net, code] : codeCorpus(15, 303)) {
    Fdg g = subgraphGbar(buildConstructionB(net));
    std::uniform_int_distribution<int> pick(0, 4);
    for (int t = 0; t < 60; ++t) {
      NodeSet x, y, z;
      for (int v = 0; v < g.size(); ++v) {
        int r = pick(rng);
        if (r == 0)
          x.insert(v);
        else if (r == 1)
          y.insert(v);
        else if (r == 2)
          z.insert(v);
      }
      if (x.empty() || y.empty() || !fdSeparates(g, x, y, z))
        continue;
      ++separated;
      int cmi = rankNodes(code, g, x | z) + rankNodes(code, g, y | z) -
                rankNodes(code, g, x | y | z) - (z.empty() ? 0 : rankNodes(code, g, z));
      CHECK(cmi == 0);
    }
  }
  CHECK(separated > 20);
}

TEST_CASE("code ranks are Ingletonian polymatroids") {
  for (const auto &[net, code] : codeCorpus(8, 404)) {
    int n = net.numSessions() + net.numEdges();
    std::vector<Rational> h = ncbtest::rankVector(code, n);
    for (const auto &row : elementalInequalities(n))
      CHECK(row.satisfiedBy(h));
    if (n <= 6)
      for (const auto &row : ingletonInequalities(n))
        CHECK(row.satisfiedBy(h));
  }
}

TEST_CASE("achieved rates lie in every region") {
  for (const auto &[net, code] : codeCorpus(15, 505)) {
    std::vector<Region> regions = {fdRegion(net, ClosureKind::PhiA),
                                   fdRegion(net, ClosureKind::PhiB),
                                   fdRegion(net, ClosureKind::Psi), cutSetRegion(net),
                                   pdeRegion(net)};
    for (const auto &r : regions)
      for (SessionSet w = 1; w <= r.full(); ++w) {
        Rational sum = 0;
        for (int s = 0; s < net.numSessions(); ++s)
          if (w >> s & 1)
            sum += achievedRate(code, s);
        CHECK(ExtRational(sum) <= r.at(w));
      }
  }
}

TEST_CASE("region nesting") {
  ncbtest::Rng rng(606);
  for (int i = 0; i < 60; ++i) {
    Network net = ncbtest::randomNetwork(rng);
    Region psi = fdRegion(net, ClosureKind::Psi);
    Region phiB = fdRegion(net, ClosureKind::PhiB);
    Region phiA = fdRegion(net, ClosureKind::PhiA);
    Region cut = cutSetRegion(net);
    for (SessionSet w = 1; w <= psi.full(); ++w) {
      CHECK(psi.at(w) <= phiB.at(w));
      CHECK(phiB.at(w) <= phiA.at(w));
      CHECK(phiB.at(w) <= cut.at(w));
    }
  }
}
