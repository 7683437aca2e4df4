#pragma once

#include "ncb/fdg.hpp"
#include "ncb/model.hpp"

#include <random>

namespace ncbtest {

using Rng = std::mt19937_64;

/// The unit-capacity butterfly with capacities overridden per edge (1-based).
ncb::Network butterfly(const std::vector<int> &caps = {1, 1, 1, 1, 1, 1, 1});

/// A valid random acyclic network with |S| + |E| <= maxSize.
ncb::Network randomNetwork(Rng &rng, int maxSize = 10, int maxSessions = 3);

/// A random three-layer unicast network. Source and sink edges get capacity
/// 1000 so they never attain a minimum; middle edges get 1..3.
ncb::Network randomThreeLayer(Rng &rng, int maxSessions = 4, int maxMiddle = 6,
                              int maxEdges = 16);

/// Random DAG on n plain nodes (arcs go from lower to higher index).
ncb::Fdg randomDag(Rng &rng, int n, double density = 0.3);

/// Line graph 0 -> 1 -> ... -> n-1.
ncb::Fdg lineGraph(int n);

} // namespace ncbtest
