#include "ncb/maxsets.hpp"

#include <algorithm>
#include <unordered_set>

namespace ncb {

std::string MaxSetCollection::str() const {
  std::string out;
  for (const auto &s : sets)
    out += s.str() + "\n";
  return out;
}

namespace {

// The cascade-based closures are monotone in the seed, so single-element
// removals are enough to test minimality and irreducibility. Psi gets the
// literal all-subsets test.
bool monotone(ClosureKind kind) { return kind != ClosureKind::Psi; }

Maximality resolve(const Fdg &g, Maximality mode) {
  if (mode != Maximality::Auto)
    return mode;
  return isAcyclic(g) ? Maximality::Acyclic : Maximality::Cyclic;
}

bool covers(const Fdg &g, const NodeSet &a, ClosureKind kind, Maximality mode) {
  NodeSet rest = g.all() - a - closure(g, a, kind);
  if (mode == Maximality::Acyclic)
    rest -= ancestors(g, a);
  return rest.empty();
}

/// Calls f on every proper subset of a (or only the |a|-1 subsets) until
/// f returns true; reports whether it did.
template <class F> bool anyProperSubset(const NodeSet &a, bool onlyLarge, F &&f) {
  auto elems = a.toVector();
  if (onlyLarge) {
    for (int v : elems) {
      NodeSet sub = a;
      sub.erase(v);
      if (f(sub))
        return true;
    }
    return false;
  }
  if (elems.size() >= 63)
    throw FdgError("set too large for subset enumeration");
  uint64_t full = (uint64_t(1) << elems.size()) - 1;
  for (uint64_t m = 0; m < full; ++m) {
    NodeSet sub;
    for (size_t i = 0; i < elems.size(); ++i)
      if (m >> i & 1)
        sub.insert(elems[i]);
    if (f(sub))
      return true;
  }
  return false;
}

void canonicalize(std::vector<NodeSet> &sets) {
  std::sort(sets.begin(), sets.end(), canonicalLess);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

} // namespace

bool isIrreducible(const Fdg &g, const NodeSet &b, ClosureKind kind) {
  return !anyProperSubset(b, monotone(kind), [&](const NodeSet &a) {
    return b.isSubsetOf(a | closure(g, a, kind));
  });
}

bool isMaximalIrreducible(const Fdg &g, const NodeSet &a, ClosureKind kind,
                          Maximality mode) {
  mode = resolve(g, mode);
  if (mode == Maximality::Acyclic && kind != ClosureKind::PhiA)
    throw FdgError("the acyclic maximality test is defined for PhiA only");
  if (!covers(g, a, kind, mode))
    return false;
  bool smaller = anyProperSubset(a, monotone(kind), [&](const NodeSet &sub) {
    return covers(g, sub, kind, mode);
  });
  return !smaller && isIrreducible(g, a, kind);
}

MaxSetCollection allMaxSetsAcyclic(const Fdg &g, const NodeSet &seed) {
  if (!isAcyclic(g))
    throw FdgError("allMaxSetsAcyclic requires an acyclic graph");
  if (!isIrreducible(g, seed, ClosureKind::PhiA))
    throw FdgError("seed set is not irreducible");
  MaxSetCollection out;
  out.kind = ClosureKind::PhiA;
  std::unordered_set<NodeSet, NodeSetHash> visited{seed};
  std::vector<NodeSet> leaves;

  auto rec = [&](auto &&self, const NodeSet &a) -> void {
    ++out.calls;
    NodeSet b = g.all() - closure(g, a, ClosureKind::PhiA) - ancestors(g, a) - a;
    if (b.empty()) {
      leaves.push_back(a);
      return;
    }
    b.forEach([&](int v) {
      NodeSet next = a;
      next.insert(v);
      if (visited.insert(next).second)
        self(self, next);
    });
  };
  rec(rec, seed);

  // A leaf covers the graph but may still contain a smaller covering set.
  for (const auto &a : leaves) {
    bool minimal = !anyProperSubset(a, true, [&](const NodeSet &sub) {
      return covers(g, sub, ClosureKind::PhiA, Maximality::Acyclic);
    });
    if (minimal)
      out.sets.push_back(a);
  }
  canonicalize(out.sets);
  return out;
}

MaxSetCollection allMaxSetsCyclic(const Fdg &g, const NodeSet &excluded,
                                  ClosureKind kind) {
  MaxSetCollection out;
  out.kind = kind;
  NodeSet all = g.all();
  NodeSet start = all - excluded;
  if ((start | closure(g, start, kind)) != all) {
    out.preconditionFailed = true;
    return out;
  }

  std::unordered_set<NodeSet, NodeSetHash> visited{excluded};
  auto rec = [&](auto &&self, const NodeSet &x) -> void {
    ++out.calls;
    NodeSet c = all - x;
    std::vector<int> removable;
    c.forEach([&](int v) {
      NodeSet rest = c;
      rest.erase(v);
      if (closure(g, rest, kind).contains(v))
        removable.push_back(v);
    });
    if (removable.empty()) {
      out.sets.push_back(c);
      return;
    }
    for (int v : removable) {
      NodeSet next = x;
      next.insert(v);
      if (visited.insert(next).second)
        self(self, next);
    }
  };
  rec(rec, excluded & all);
  canonicalize(out.sets);
  return out;
}

MaxSetCollection bruteForceMaxSets(const Fdg &g, ClosureKind kind,
                                   Maximality mode, int guard) {
  if (g.size() > guard || g.size() > 30)
    throw FdgError("brute-force enumeration refused: " +
                   std::to_string(g.size()) + " nodes exceeds guard " +
                   std::to_string(std::min(guard, 30)));
  mode = resolve(g, mode);
  MaxSetCollection out;
  out.kind = kind;
  for (uint64_t m = 0; m < (uint64_t(1) << g.size()); ++m) {
    NodeSet a;
    for (int v = 0; v < g.size(); ++v)
      if (m >> v & 1)
        a.insert(v);
    if (isMaximalIrreducible(g, a, kind, mode))
      out.sets.push_back(a);
  }
  canonicalize(out.sets);
  return out;
}

} // namespace ncb
