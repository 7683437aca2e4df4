#pragma once

#include "ncb/fdg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ncb {

/// Which maximality definition applies. Auto picks Acyclic for acyclic
/// graphs and Cyclic otherwise.
enum class Maximality { Auto, Acyclic, Cyclic };

struct MaxSetCollection {
  ClosureKind kind = ClosureKind::PhiA;
  std::vector<NodeSet> sets; ///< deduplicated, canonical order
  uint64_t calls = 0;        ///< recursion calls (memo hits excluded)
  bool preconditionFailed = false;

  /// One "{3,7}" per line, 1-based ids.
  std::string str() const;
};

bool isIrreducible(const Fdg &g, const NodeSet &b, ClosureKind kind);
bool isMaximalIrreducible(const Fdg &g, const NodeSet &a, ClosureKind kind,
                          Maximality mode = Maximality::Auto);

/// Augmenting search: maximal irreducible sets (acyclic definition) containing
/// `seed`. Throws FdgError on cyclic graphs.
MaxSetCollection allMaxSetsAcyclic(const Fdg &g, const NodeSet &seed);

/// Shrinking search: maximal irreducible sets disjoint from `excluded`.
MaxSetCollection allMaxSetsCyclic(const Fdg &g, const NodeSet &excluded,
                                  ClosureKind kind);

/// Tests every subset; refuses graphs above `guard` nodes.
MaxSetCollection bruteForceMaxSets(const Fdg &g, ClosureKind kind,
                                   Maximality mode = Maximality::Auto,
                                   int guard = 20);

} // namespace ncb
