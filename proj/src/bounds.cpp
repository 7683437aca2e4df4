#include "ncb/bounds.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace ncb {

Region::Region(RegionMode m, int sessions, std::string prov)
    : mode(m), numSessions(sessions),
      constants(size_t(1) << sessions, ExtRational::infinity()),
      provenance(std::move(prov)) {
  constants[0] = ExtRational(0);
}

Region Region::reinterpret(RegionMode m) const {
  Region r = *this;
  r.mode = m;
  return r;
}

std::vector<SessionSet> canonicalSubsets(SessionSet full) {
  std::vector<SessionSet> out;
  for (SessionSet w = full; w; w = (w - 1) & full)
    out.push_back(w);
  auto key = [](SessionSet w) {
    std::vector<int> v;
    for (int i = 0; i < 32; ++i)
      if (w >> i & 1)
        v.push_back(i);
    return v;
  };
  std::sort(out.begin(), out.end(), [&](SessionSet a, SessionSet b) {
    if (std::popcount(a) != std::popcount(b))
      return std::popcount(a) < std::popcount(b);
    return key(a) < key(b);
  });
  return out;
}

std::string Region::str() const {
  std::string out;
  auto inner = [](SessionSet w) {
    std::string s = sessionSetStr(w);
    return s.substr(1, s.size() - 2);
  };
  for (SessionSet w : canonicalSubsets(full())) {
    if (mode == RegionMode::Independent)
      out += "sum{" + inner(w) + "}";
    else
      out += "H{" + inner(w) + "|" + inner(full() & ~w) + "}";
    out += " <= " + at(w).str() + "\n";
  }
  return out;
}

Region fdRegionFromSets(const Network &net, const Fdg &g,
                        const MaxSetCollection &sets, RegionMode mode,
                        const FdOptions &opts) {
  Region r(mode, net.numSessions(), "fd-" + closureKindName(sets.kind));
  SessionSet full = r.full();
  for (const auto &m : sets.sets) {
    SessionSet sources = 0;
    bool estimate = false;
    Rational cost = 0;
    m.forEach([&](int v) {
      const FdgNode &n = g.node(v);
      if (n.kind == NodeKind::Source)
        sources |= SessionSet(1) << n.session;
      else if (n.kind == NodeKind::EdgeVar)
        cost += net.edges[n.edge].capacity;
      else
        estimate = true;
    });
    if (estimate)
      continue;
    // The set bounds every W inside the complement of its sources.
    SessionSet open = full & ~sources;
    for (SessionSet w = open; w; w = (w - 1) & open) {
      if (opts.exactComplement && w != open)
        continue;
      r.at(w) = min(r.at(w), ExtRational(cost));
    }
  }
  return r;
}

namespace {

Fdg constructionFor(const Network &net, ClosureKind kind) {
  return kind == ClosureKind::PhiA ? buildConstructionA(net)
                                   : buildConstructionB(net);
}

RegionMode modeFor(ClosureKind kind) {
  return kind == ClosureKind::Psi ? RegionMode::Independent
                                  : RegionMode::Correlated;
}

} // namespace

Region fdRegionEnumerated(const Network &net, ClosureKind kind,
                          const FdOptions &opts) {
  Fdg g = constructionFor(net, kind);
  NodeSet estimates;
  for (int s = 0; s < g.numSessions(); ++s)
    for (int v : g.estimatesOf(s))
      estimates.insert(v);
  return fdRegionFromSets(net, g, allMaxSetsCyclic(g, estimates, kind),
                          modeFor(kind), opts);
}

Region fdRegion(const Network &net, ClosureKind kind, const FdOptions &opts) {
  Fdg g = constructionFor(net, kind);
  int ne = net.numEdges();
  if (ne > 63)
    throw std::invalid_argument("too many edges for the FD search");
  Region r(modeFor(kind), net.numSessions(), "fd-" + closureKindName(kind));
  std::vector<int> byCost(ne);
  std::iota(byCost.begin(), byCost.end(), 0);
  std::stable_sort(byCost.begin(), byCost.end(), [&](int a, int b) {
    return net.edges[a].capacity < net.edges[b].capacity;
  });
  NodeSet all = g.all();
  auto covers = [&](const NodeSet &x) { return (x | closure(g, x, kind)) == all; };
  auto sourcesOf = [&](SessionSet t) {
    NodeSet out;
    for (int s = 0; s < net.numSessions(); ++s)
      if (t >> s & 1)
        out.insert(g.sourceOf(s));
    return out;
  };
  NodeSet allEdges;
  for (int e = 0; e < ne; ++e)
    allEdges.insert(g.edgeNode(e));

  for (SessionSet w = 1; w <= r.full(); ++w) {
    SessionSet open = r.full() & ~w;
    // With a monotone closure nothing qualifies unless the largest
    // candidate covers.
    if (kind != ClosureKind::Psi && !covers(allEdges | sourcesOf(open)))
      continue;
    auto qualifies = [&](uint64_t mask) {
      NodeSet edges;
      for (int i = 0; i < ne; ++i)
        if (mask >> i & 1)
          edges.insert(g.edgeNode(byCost[i]));
      for (SessionSet t = open;; t = (t - 1) & open) {
        if (!opts.exactComplement || t == open) {
          NodeSet x = edges | sourcesOf(t);
          if (covers(x) && isMaximalIrreducible(g, x, kind, Maximality::Cyclic))
            return true;
        }
        if (t == 0)
          return false;
      }
    };
    // Subsets of the cost-sorted edges in nondecreasing total cost: each
    // entry spawns "append the next edge" and "swap the last edge for the
    // next one".
    struct Item {
      Rational cost;
      int last;
      uint64_t mask;
    };
    auto worse = [](const Item &a, const Item &b) { return a.cost > b.cost; };
    std::priority_queue<Item, std::vector<Item>, decltype(worse)> queue(worse);
    if (qualifies(0)) {
      r.at(w) = ExtRational(0);
      continue;
    }
    if (ne > 0)
      queue.push({net.edges[byCost[0]].capacity, 0, 1});
    while (!queue.empty()) {
      Item it = queue.top();
      queue.pop();
      if (qualifies(it.mask)) {
        r.at(w) = ExtRational(it.cost);
        break;
      }
      int next = it.last + 1;
      if (next < ne) {
        const Rational &c = net.edges[byCost[next]].capacity;
        queue.push({Rational(it.cost + c), next, it.mask | uint64_t(1) << next});
        queue.push({Rational(it.cost + c - net.edges[byCost[it.last]].capacity),
                    next, (it.mask & ~(uint64_t(1) << it.last)) | uint64_t(1) << next});
      }
    }
  }
  return r;
}

Region cutSetRegion(const Network &net, int guard) {
  int n = net.numNodes();
  if (n > guard || n > 30)
    throw std::invalid_argument("cut-set enumeration refused: " +
                                std::to_string(n) + " nodes exceeds guard");
  int ns = net.numSessions();
  Region r(RegionMode::Correlated, ns, "cutset");
  // best[M]: cheapest cut whose separated-session set is exactly M.
  std::vector<ExtRational> best(size_t(1) << ns, ExtRational::infinity());
  for (uint64_t t = 0; t < (uint64_t(1) << n); ++t) {
    SessionSet good = 0;
    for (int s = 0; s < ns; ++s) {
      const Session &ses = net.sessions[s];
      if (!(t >> ses.source & 1))
        continue;
      for (int sink : ses.sinks)
        if (!(t >> sink & 1)) {
          good |= SessionSet(1) << s;
          break;
        }
    }
    if (!good)
      continue;
    Rational cut = 0;
    for (const auto &e : net.edges)
      if ((t >> e.tail & 1) && !(t >> e.head & 1))
        cut += e.capacity;
    best[good] = min(best[good], ExtRational(cut));
  }
  // A cut separating M is valid for every W inside M.
  for (int s = 0; s < ns; ++s)
    for (SessionSet m = 0; m < (SessionSet(1) << ns); ++m)
      if (m >> s & 1)
        best[m & ~(SessionSet(1) << s)] =
            min(best[m & ~(SessionSet(1) << s)], best[m]);
  for (SessionSet w = 1; w <= r.full(); ++w)
    r.at(w) = best[w];
  return r;
}

Region networkSharingRegion(const Network &net, NsReading reading) {
  ThreeLayerView view = threeLayerView(net);
  int ns = net.numSessions();
  Region r(RegionMode::Independent, ns,
           reading == NsReading::ForAll ? "ns" : "ns-exists");
  for (SessionSet w = 1; w <= r.full(); ++w) {
    std::vector<int> order;
    for (int s = 0; s < ns; ++s)
      if (w >> s & 1)
        order.push_back(s);
    std::vector<int> rank(ns, -1);
    ExtRational best = ExtRational::infinity();
    do {
      for (size_t i = 0; i < order.size(); ++i)
        rank[order[i]] = int(i);
      Rational sum = 0;
      for (int e : view.middle) {
        SessionSet b = view.beta[e] & w;
        if (!b)
          continue;
        // W[beta(e)]: sessions of W ordered before those in beta(e) ∩ W.
        SessionSet before = 0;
        for (int s : order) {
          bool ok = reading == NsReading::ForAll;
          for (int t : order) {
            if (!(b >> t & 1))
              continue;
            if (reading == NsReading::ForAll)
              ok = ok && rank[s] < rank[t];
            else
              ok = ok || rank[s] < rank[t];
          }
          if (ok)
            before |= SessionSet(1) << s;
        }
        SessionSet a = view.alpha[e] & w;
        if ((a & ~before) != 0)
          sum += net.edges[e].capacity;
      }
      best = min(best, ExtRational(sum));
    } while (std::next_permutation(order.begin(), order.end()));
    r.at(w) = best;
  }
  return r;
}

namespace {

/// Working state of one PdE run on Gbar.
struct PdeState {
  const Fdg &g;
  NodeSet keep;       ///< vertices kept by step 1
  NodeSet removedOut; ///< vertices whose out-arcs are gone
  NodeSet sources;

  bool live(int u, int v) const {
    return keep.contains(u) && keep.contains(v) && !removedOut.contains(u) &&
           g.hasArc(u, v);
  }

  void dropParentless() {
    for (bool changed = true; changed;) {
      changed = false;
      keep.forEach([&](int v) {
        if (sources.contains(v) || removedOut.contains(v))
          return;
        bool hasIn = false;
        g.parents(v).forEach([&](int u) { hasIn = hasIn || live(u, v); });
        if (!hasIn) {
          removedOut.insert(v);
          changed = true;
        }
      });
    }
  }

  void dropUnreachable() {
    NodeSet seen = sources & keep;
    std::vector<int> work = seen.toVector();
    while (!work.empty()) {
      int u = work.back();
      work.pop_back();
      g.children(u).forEach([&](int v) {
        if (live(u, v) && !seen.contains(v)) {
          seen.insert(v);
          work.push_back(v);
        }
      });
    }
    removedOut |= keep - seen - sources;
  }

  NodeSet ancestralOf(const NodeSet &seed) const {
    NodeSet anc = seed & keep;
    std::vector<int> work = anc.toVector();
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      g.parents(v).forEach([&](int u) {
        if (live(u, v) && !anc.contains(u)) {
          anc.insert(u);
          work.push_back(u);
        }
      });
    }
    return anc;
  }

  bool connected(int x, int y, const NodeSet &within) const {
    NodeSet seen{x};
    std::vector<int> work{x};
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      auto visit = [&](int w) {
        if (within.contains(w) && !seen.contains(w)) {
          seen.insert(w);
          work.push_back(w);
        }
      };
      g.children(v).forEach([&](int w) {
        if (live(v, w))
          visit(w);
      });
      g.parents(v).forEach([&](int w) {
        if (live(w, v))
          visit(w);
      });
    }
    return seen.contains(y);
  }
};

PdeState pdeSetup(const Fdg &gbar, uint64_t edges, SessionSet w) {
  PdeState st{gbar, {}, {}, {}};
  NodeSet aNodes, start;
  for (int e = 0; e < 64; ++e)
    if (edges >> e & 1)
      aNodes.insert(gbar.edgeNode(e));
  start = aNodes;
  NodeSet others;
  for (int s = 0; s < gbar.numSessions(); ++s) {
    st.sources.insert(gbar.sourceOf(s));
    if (w >> s & 1) {
      start.insert(gbar.sourceOf(s));
      for (int v : gbar.estimatesOf(s))
        start.insert(v);
    } else {
      others.insert(gbar.sourceOf(s));
    }
  }
  st.keep = start | ancestors(gbar, start);
  st.removedOut = aNodes | others;
  st.dropParentless();
  return st;
}

/// Step 2 test for session s.
bool pdeSeparated(const PdeState &st, int s, const NodeSet &aNodes,
                  const PdeOptions &opts) {
  int ys = st.g.sourceOf(s);
  for (int est : st.g.estimatesOf(s)) {
    NodeSet within = st.keep;
    if (opts.improved) {
      NodeSet seed{ys, est};
      if (opts.ancestralIncludesA)
        seed |= aNodes;
      within = st.ancestralOf(seed);
    }
    if (!within.contains(ys) || !within.contains(est) ||
        !st.connected(ys, est, within))
      return true;
  }
  return false;
}

NodeSet edgeNodes(const Fdg &gbar, uint64_t edges) {
  NodeSet out;
  for (int e = 0; e < 64; ++e)
    if (edges >> e & 1)
      out.insert(gbar.edgeNode(e));
  return out;
}

} // namespace

bool pdeProcedure(const Network &net, const Fdg &gbar, uint64_t edges,
                  const std::vector<int> &order, const PdeOptions &opts) {
  (void)net;
  SessionSet w = 0;
  for (int s : order)
    w |= SessionSet(1) << s;
  PdeState st = pdeSetup(gbar, edges, w);
  NodeSet aNodes = edgeNodes(gbar, edges);
  for (int s : order) {
    if (!pdeSeparated(st, s, aNodes, opts))
      return false;
    st.removedOut.insert(gbar.sourceOf(s));
    st.dropUnreachable();
  }
  return true;
}

bool pdePasses(const Network &net, const Fdg &gbar, uint64_t edges,
               SessionSet w, const PdeOptions &opts) {
  (void)net;
  // Separations only get easier as arcs disappear, so taking any session
  // that separates now is as good as trying every order.
  PdeState st = pdeSetup(gbar, edges, w);
  NodeSet aNodes = edgeNodes(gbar, edges);
  SessionSet left = w;
  while (left) {
    bool progress = false;
    for (int s = 0; s < gbar.numSessions(); ++s) {
      if (!(left >> s & 1) || !pdeSeparated(st, s, aNodes, opts))
        continue;
      st.removedOut.insert(gbar.sourceOf(s));
      st.dropUnreachable();
      left &= ~(SessionSet(1) << s);
      progress = true;
    }
    if (!progress)
      return false;
  }
  return true;
}

Region pdeRegion(const Network &net, const PdeOptions &opts) {
  int ne = net.numEdges();
  if (ne > opts.guard || ne > 63)
    throw std::invalid_argument("PdE search refused: " + std::to_string(ne) +
                                " edges exceeds guard " +
                                std::to_string(opts.guard));
  Fdg gbar = subgraphGbar(buildConstructionB(net));
  Region r(RegionMode::Independent, net.numSessions(),
           opts.improved ? "ipde" : "pde");
  // Cheap edges first so good bounds appear early and prune the search.
  std::vector<int> byCost(ne);
  std::iota(byCost.begin(), byCost.end(), 0);
  std::stable_sort(byCost.begin(), byCost.end(), [&](int a, int b) {
    return net.edges[a].capacity < net.edges[b].capacity;
  });
  for (SessionSet w = 1; w <= r.full(); ++w) {
    // Starting bound: the cheapest prefix of the cost order that passes.
    ExtRational best = ExtRational::infinity();
    uint64_t prefix = 0;
    Rational prefixCost = 0;
    for (int k = 0; k <= ne; ++k) {
      if (pdePasses(net, gbar, prefix, w, opts)) {
        best = ExtRational(prefixCost);
        break;
      }
      if (k < ne) {
        prefix |= uint64_t(1) << byCost[k];
        prefixCost += net.edges[byCost[k]].capacity;
      }
    }
    auto search = [&](auto &&self, size_t i, uint64_t chosen,
                      const Rational &cost) -> void {
      if (ExtRational(cost) >= best)
        return;
      if (i == byCost.size()) {
        if (pdePasses(net, gbar, chosen, w, opts))
          best = ExtRational(cost);
        return;
      }
      int e = byCost[i];
      self(self, i + 1, chosen | uint64_t(1) << e,
           Rational(cost + net.edges[e].capacity));
      self(self, i + 1, chosen, cost);
    };
    search(search, 0, 0, Rational(0));
    r.at(w) = best;
  }
  return r;
}

Comparison compareRegions(const Region &r1, const Region &r2) {
  if (r1.mode != r2.mode)
    throw std::invalid_argument("cannot compare regions of different modes");
  if (r1.numSessions != r2.numSessions)
    throw std::invalid_argument("cannot compare regions over different sessions");
  Comparison c;
  SessionSet lessAt = 0, greaterAt = 0; // first W with c1 < c2, c1 > c2
  for (SessionSet w : canonicalSubsets(r1.full())) {
    if (r1.at(w) < r2.at(w) && !lessAt)
      lessAt = w;
    if (r2.at(w) < r1.at(w) && !greaterAt)
      greaterAt = w;
  }
  if (!lessAt && !greaterAt) {
    c.relation = Containment::Equal;
  } else if (!greaterAt) {
    c.relation = Containment::FirstInSecond;
    c.witness = lessAt;
  } else if (!lessAt) {
    c.relation = Containment::SecondInFirst;
    c.witness = greaterAt;
  } else {
    c.relation = Containment::Incomparable;
    c.witness = greaterAt;
    c.witness2 = lessAt;
  }
  return c;
}

std::string containmentName(Containment c) {
  switch (c) {
  case Containment::Equal:
    return "equal";
  case Containment::FirstInSecond:
    return "first-in-second";
  case Containment::SecondInFirst:
    return "second-in-first";
  case Containment::Incomparable:
    return "incomparable";
  }
  return "?";
}

} // namespace ncb
