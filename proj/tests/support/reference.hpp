#pragma once

// Slow, independent reimplementations used as test oracles.

#include "ncb/bounds.hpp"
#include "ncb/rankoracle.hpp"

namespace ncbtest {

/// Cut-set constant by enumerating edge sets: the cheapest F such that, with
/// F removed, every session of W has a sink unreachable from all of W's
/// sources.
ncb::ExtRational naiveCutSet(const ncb::Network &net, ncb::SessionSet w);

/// Network sharing constant with alpha/beta read straight off the relay
/// adjacency, minimised over all orderings of W.
ncb::ExtRational naiveNetworkSharing(const ncb::Network &net, ncb::SessionSet w);

/// Functional-dependence region from the brute-force maximal sets of the
/// kind's construction.
ncb::Region bruteForceFdRegion(const ncb::Network &net, ncb::ClosureKind kind);

/// PdE constant by trying every edge set and every order of W.
ncb::ExtRational naivePde(const ncb::Network &net, ncb::SessionSet w,
                          bool improved);

/// The GF(2) XOR code on the canonical butterfly.
ncb::LinearCode xorButterflyCode();

/// Entropy vector (in units of log q) of a code over the ground set
/// Y_1..Y_|S|, U_1..U_|E|, indexed by bitmask.
std::vector<ncb::Rational> rankVector(const ncb::LinearCode &code, int groundSize);

/// Calls f(a, b, c, d) for every Ingleton instance with disjoint nonempty
/// a, b, c, d plus a common part z over n elements (each unordered pair
/// once per side). Masks already include z.
template <class F> void forEachIngleton(int n, F &&f) {
  // Assign each element to one of A, B, C, D, Z or none.
  std::vector<int> part(n, 0);
  while (true) {
    uint32_t m[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < n; ++i)
      m[part[i]] |= uint32_t(1) << i;
    if (m[1] && m[2] && m[3] && m[4] && m[1] < m[2] && m[3] < m[4])
      f(m[1] | m[5], m[2] | m[5], m[3] | m[5], m[4] | m[5]);
    int i = 0;
    while (i < n && part[i] == 5)
      part[i++] = 0;
    if (i == n)
      break;
    ++part[i];
  }
}

} // namespace ncbtest
