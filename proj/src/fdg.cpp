#include "ncb/fdg.hpp"

#include <algorithm>
#include <sstream>

namespace ncb {

std::string closureKindName(ClosureKind k) {
  switch (k) {
  case ClosureKind::PhiA:
    return "phiA";
  case ClosureKind::PhiB:
    return "phiB";
  case ClosureKind::Psi:
    return "psi";
  }
  return "?";
}

int Fdg::addNode(FdgNode n) {
  nodes_.push_back(std::move(n));
  parents_.emplace_back();
  children_.emplace_back();
  if (size() > NodeSet::kMaxSize)
    throw FdgError("functional dependence graph exceeds " +
                   std::to_string(NodeSet::kMaxSize) + " nodes");
  return size() - 1;
}

void Fdg::addArc(int u, int v) {
  children_[u].insert(v);
  parents_[v].insert(u);
}

int Fdg::arcCount() const {
  int c = 0;
  for (const auto &p : parents_)
    c += p.size();
  return c;
}

NodeSet Fdg::parentless() const {
  NodeSet s;
  for (int v = 0; v < size(); ++v)
    if (parents_[v].empty())
      s.insert(v);
  return s;
}

NodeSet Fdg::sourceNodes() const {
  if (numSessions_ == 0)
    return parentless();
  NodeSet s;
  for (int v : sourceNode_)
    s.insert(v);
  return s;
}

Fdg Fdg::generic(int n, const std::vector<std::pair<int, int>> &arcs) {
  Fdg g;
  for (int v = 0; v < n; ++v)
    g.addNode({NodeKind::Plain, -1, -1, -1, std::to_string(v + 1)});
  for (auto [u, v] : arcs) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw FdgError("arc endpoint out of range");
    g.addArc(u, v);
  }
  return g;
}

namespace {

void addEncoderPart(Fdg &g, const Network &net, std::vector<int> &sourceNode,
                    std::vector<int> &edgeNode) {
  for (int s = 0; s < net.numSessions(); ++s)
    sourceNode.push_back(g.addNode(
        {NodeKind::Source, s, -1, -1, "Y" + std::to_string(s + 1)}));
  for (int e = 0; e < net.numEdges(); ++e)
    edgeNode.push_back(g.addNode(
        {NodeKind::EdgeVar, -1, e, -1, "U" + std::to_string(e + 1)}));
  for (int e = 0; e < net.numEdges(); ++e) {
    int tail = net.edges[e].tail;
    for (int s = 0; s < net.numSessions(); ++s)
      if (net.sessions[s].source == tail)
        g.addArc(sourceNode[s], edgeNode[e]);
    for (int f = 0; f < net.numEdges(); ++f)
      if (net.edges[f].head == tail)
        g.addArc(edgeNode[f], edgeNode[e]);
  }
}

} // namespace

Fdg buildConstructionA(const Network &net) {
  Fdg g;
  g.kind_ = FdgKind::ConstructionA;
  g.numSessions_ = net.numSessions();
  addEncoderPart(g, net, g.sourceNode_, g.edgeNode_);
  g.estimates_.assign(net.numSessions(), {});
  for (int e = 0; e < net.numEdges(); ++e)
    for (int s = 0; s < net.numSessions(); ++s) {
      const auto &sinks = net.sessions[s].sinks;
      if (std::find(sinks.begin(), sinks.end(), net.edges[e].head) != sinks.end())
        g.addArc(g.edgeNode_[e], g.sourceNode_[s]);
    }
  return g;
}

Fdg buildConstructionB(const Network &net) {
  Fdg g;
  g.kind_ = FdgKind::ConstructionB;
  g.numSessions_ = net.numSessions();
  addEncoderPart(g, net, g.sourceNode_, g.edgeNode_);
  g.estimates_.assign(net.numSessions(), {});
  for (int s = 0; s < net.numSessions(); ++s)
    for (int sink : net.sessions[s].sinks) {
      int v = g.addNode({NodeKind::Estimate, s, -1, sink,
                         "Yhat" + std::to_string(s + 1) + "@" +
                             std::to_string(net.nodeIds[sink])});
      g.estimates_[s].push_back(v);
      for (int e = 0; e < net.numEdges(); ++e)
        if (net.edges[e].head == sink)
          g.addArc(g.edgeNode_[e], v);
      g.addArc(v, g.sourceNode_[s]);
    }
  return g;
}

Fdg subgraphGbar(const Fdg &g) {
  if (g.kind() != FdgKind::ConstructionB)
    throw FdgError("subgraphGbar requires a Construction-B graph");
  Fdg out;
  out.kind_ = FdgKind::Generic;
  out.numSessions_ = g.numSessions_;
  out.sourceNode_ = g.sourceNode_;
  out.estimates_ = g.estimates_;
  out.edgeNode_ = g.edgeNode_;
  for (int v = 0; v < g.size(); ++v)
    out.addNode(g.node(v));
  for (int v = 0; v < g.size(); ++v) {
    if (g.node(v).kind == NodeKind::Source)
      continue;
    g.parents(v).forEach([&](int u) { out.addArc(u, v); });
  }
  return out;
}

namespace {

/// Deletes every node that had parents but now has all of them in
/// a ∪ deleted. Returns whether anything was added.
bool cascade(const Fdg &g, const NodeSet &a, NodeSet &deleted) {
  bool any = false, changed = true;
  NodeSet dead = a | deleted;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.size(); ++v) {
      if (deleted.contains(v) || g.parents(v).empty())
        continue;
      if (g.parents(v).isSubsetOf(dead)) {
        deleted.insert(v);
        dead.insert(v);
        changed = any = true;
      }
    }
  }
  return any;
}

/// Deletes non-source nodes that no live source reaches through live arcs
/// (arcs into source nodes ignored).
bool pruneUnreachable(const Fdg &g, const NodeSet &a, NodeSet &deleted) {
  NodeSet dead = a | deleted;
  NodeSet sources = g.sourceNodes();
  NodeSet seen = sources - dead;
  std::vector<int> work = seen.toVector();
  while (!work.empty()) {
    int u = work.back();
    work.pop_back();
    if (dead.contains(u))
      continue;
    (g.children(u) - seen - deleted - sources).forEach([&](int v) {
      seen.insert(v);
      work.push_back(v);
    });
  }
  bool any = false;
  for (int v = 0; v < g.size(); ++v) {
    if (sources.contains(v) || deleted.contains(v) || seen.contains(v) ||
        g.parents(v).empty())
      continue;
    deleted.insert(v);
    any = true;
  }
  return any;
}

/// Psi step 2 test: is Y_s disconnected from the estimate in the ancestral
/// part of Gbar* for {Y_s, estimate} ∪ a?
bool estimateSeparated(const Fdg &g, const NodeSet &a, const NodeSet &deleted,
                       int ys, int est) {
  if (deleted.contains(ys) || deleted.contains(est))
    return true;
  NodeSet present = g.all() - deleted;
  auto liveArc = [&](int u, int v) {
    return present.contains(u) && present.contains(v) && !a.contains(u) &&
           g.node(v).kind != NodeKind::Source;
  };
  NodeSet anc{ys, est};
  anc |= a & present;
  std::vector<int> work = anc.toVector();
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    g.parents(v).forEach([&](int u) {
      if (!anc.contains(u) && liveArc(u, v)) {
        anc.insert(u);
        work.push_back(u);
      }
    });
  }
  NodeSet seen{ys};
  work = {ys};
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    auto visit = [&](int w, bool arc) {
      if (arc && anc.contains(w) && !seen.contains(w)) {
        seen.insert(w);
        work.push_back(w);
      }
    };
    g.children(v).forEach([&](int w) { visit(w, liveArc(v, w)); });
    g.parents(v).forEach([&](int w) { visit(w, liveArc(w, v)); });
  }
  return !seen.contains(est);
}

} // namespace

NodeSet closure(const Fdg &g, const NodeSet &a, ClosureKind kind,
                const ClosureOptions &opts) {
  if (!a.isSubsetOf(g.all()))
    throw FdgError("seed set outside the graph");
  if (kind != ClosureKind::PhiA && g.kind() != FdgKind::ConstructionB)
    throw FdgError(closureKindName(kind) + " requires a Construction-B graph");

  NodeSet deleted;
  if (kind == ClosureKind::PhiA) {
    cascade(g, a, deleted);
    return deleted;
  }

  if (kind == ClosureKind::PhiB) {
    for (bool changed = true; changed;) {
      cascade(g, a, deleted);
      changed = false;
      for (int s = 0; s < g.numSessions(); ++s) {
        const auto &est = g.estimatesOf(s);
        bool any = std::any_of(est.begin(), est.end(),
                               [&](int v) { return deleted.contains(v); });
        if (!any)
          continue;
        for (int v : est)
          if (!deleted.contains(v)) {
            deleted.insert(v);
            changed = true;
          }
      }
    }
    return deleted;
  }

  std::vector<std::pair<int, int>> pairs; // (session, estimate node)
  for (int s = 0; s < g.numSessions(); ++s)
    for (int v : g.estimatesOf(s))
      pairs.push_back({s, v});
  if (opts.descendingPairs)
    std::reverse(pairs.begin(), pairs.end());

  for (bool changed = true; changed;) {
    changed = false;
    while (cascade(g, a, deleted) | pruneUnreachable(g, a, deleted)) {
    }
    for (auto [s, est] : pairs) {
      const auto &all = g.estimatesOf(s);
      if (std::all_of(all.begin(), all.end(),
                      [&](int v) { return deleted.contains(v); }))
        continue;
      if (!estimateSeparated(g, a, deleted, g.sourceOf(s), est))
        continue;
      for (int v : all)
        deleted.insert(v);
      changed = true;
      break;
    }
  }
  return deleted;
}

NodeSet ancestors(const Fdg &g, const NodeSet &a) {
  NodeSet seen;
  std::vector<int> work = a.toVector();
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    (g.parents(v) - seen).forEach([&](int u) {
      seen.insert(u);
      work.push_back(u);
    });
  }
  return seen - a;
}

namespace {

bool separates(const Fdg &g, const NodeSet &a, const NodeSet &b,
               const NodeSet &c, bool fd) {
  if (a.intersects(b) || a.intersects(c) || b.intersects(c))
    throw FdgError("separation query sets must be pairwise disjoint");
  NodeSet seed = a | b | c;
  NodeSet anc = seed | ancestors(g, seed);
  auto arc = [&](int u, int v) {
    return anc.contains(u) && anc.contains(v) && !c.contains(u) &&
           g.hasArc(u, v);
  };
  NodeSet active = anc; // tails whose out-arcs survive
  if (fd) {
    // Keep only arcs whose tail is reached from a source node.
    NodeSet reached = g.parentless() & anc;
    std::vector<int> work = reached.toVector();
    while (!work.empty()) {
      int u = work.back();
      work.pop_back();
      g.children(u).forEach([&](int v) {
        if (arc(u, v) && !reached.contains(v)) {
          reached.insert(v);
          work.push_back(v);
        }
      });
    }
    active = reached;
  }
  auto live = [&](int u, int v) { return active.contains(u) && arc(u, v); };
  NodeSet seen = a;
  std::vector<int> work = a.toVector();
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    auto visit = [&](int w) {
      if (!seen.contains(w)) {
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
  return !seen.intersects(b);
}

} // namespace

bool dSeparates(const Fdg &g, const NodeSet &a, const NodeSet &b,
                const NodeSet &c) {
  return separates(g, a, b, c, false);
}

bool fdSeparates(const Fdg &g, const NodeSet &a, const NodeSet &b,
                 const NodeSet &c) {
  return separates(g, a, b, c, true);
}

TopoResult topologicalSort(const Fdg &g) {
  TopoResult r;
  std::vector<int> indeg(g.size());
  std::vector<int> ready;
  for (int v = 0; v < g.size(); ++v) {
    indeg[v] = g.parents(v).size();
    if (indeg[v] == 0)
      ready.push_back(v);
  }
  // Smallest ready node first keeps the order deterministic.
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    int v = ready.back();
    ready.pop_back();
    r.order.push_back(v);
    g.children(v).forEach([&](int w) {
      if (--indeg[w] == 0) {
        ready.push_back(w);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    });
  }
  if (int(r.order.size()) == g.size())
    return r;

  r.acyclic = false;
  r.order.clear();
  // Every leftover node has a leftover parent; walk parents until a repeat.
  NodeSet left;
  for (int v = 0; v < g.size(); ++v)
    if (indeg[v] > 0)
      left.insert(v);
  std::vector<int> path;
  std::vector<int> pos(g.size(), -1);
  int v = left.first();
  while (pos[v] < 0) {
    pos[v] = int(path.size());
    path.push_back(v);
    v = (g.parents(v) & left).first();
  }
  r.cycle.assign(path.begin() + pos[v], path.end());
  std::reverse(r.cycle.begin(), r.cycle.end());
  auto smallest = std::min_element(r.cycle.begin(), r.cycle.end());
  std::rotate(r.cycle.begin(), smallest, r.cycle.end());
  return r;
}

bool isAcyclic(const Fdg &g) { return topologicalSort(g).acyclic; }

std::string toDot(const Fdg &g) {
  std::ostringstream out;
  out << "digraph fdg {\n";
  for (int v = 0; v < g.size(); ++v)
    out << "  n" << v + 1 << " [label=\"" << g.node(v).label << "\"];\n";
  for (int u = 0; u < g.size(); ++u)
    g.children(u).forEach(
        [&](int v) { out << "  n" << u + 1 << " -> n" << v + 1 << ";\n"; });
  out << "}\n";
  return out.str();
}

std::string idTable(const Fdg &g) {
  std::ostringstream out;
  for (int v = 0; v < g.size(); ++v)
    out << v + 1 << ' ' << g.node(v).label << '\n';
  return out.str();
}

} // namespace ncb
