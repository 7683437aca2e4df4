#include "generators.hpp"

#include <algorithm>

namespace ncbtest {

using namespace ncb;

namespace {

/// Every sink reachable from its own source.
bool demandsConnected(const Network &net) {
  for (const auto &s : net.sessions) {
    std::vector<bool> seen(net.numNodes(), false);
    std::vector<int> work{s.source};
    seen[s.source] = true;
    while (!work.empty()) {
      int u = work.back();
      work.pop_back();
      for (int e : net.outEdges(u))
        if (!seen[net.edges[e].head]) {
          seen[net.edges[e].head] = true;
          work.push_back(net.edges[e].head);
        }
    }
    for (int t : s.sinks)
      if (!seen[t])
        return false;
  }
  return true;
}

} // namespace

ncb::Network butterfly(const std::vector<int> &caps) {
  Network net;
  net.nodeIds = {1, 2, 3, 4, 5, 6};
  const int arcs[7][2] = {{1, 6}, {1, 3}, {2, 3}, {2, 5}, {3, 4}, {4, 6}, {4, 5}};
  for (int e = 0; e < 7; ++e)
    net.edges.push_back({arcs[e][0] - 1, arcs[e][1] - 1, Rational(caps.at(e))});
  net.sessions = {{0, {4}}, {1, {5}}};
  return net;
}

ncb::Network randomNetwork(Rng &rng, int maxSize, int maxSessions) {
  for (;;) {
    std::uniform_int_distribution<int> nodesDist(3, 6);
    int n = nodesDist(rng);
    int ns = std::uniform_int_distribution<int>(1, maxSessions)(rng);
    int ne = std::uniform_int_distribution<int>(ns, std::max(ns, maxSize - ns))(rng);
    Network net;
    for (int v = 0; v < n; ++v)
      net.nodeIds.push_back(v + 1);
    std::uniform_int_distribution<int> node(0, n - 1), cap(0, 3);
    for (int e = 0; e < ne; ++e) {
      int a = node(rng), b = node(rng);
      if (a == b)
        continue;
      // Arcs point up the node order, so the network is acyclic.
      net.edges.push_back({std::min(a, b), std::max(a, b), Rational(cap(rng))});
    }
    if (net.edges.empty() || net.numEdges() + ns > maxSize)
      continue;
    for (int s = 0; s < ns; ++s) {
      int a = std::uniform_int_distribution<int>(0, n - 2)(rng);
      Session ses{a, {}};
      int k = std::uniform_int_distribution<int>(1, 2)(rng);
      for (int i = 0; i < k; ++i) {
        int b = std::uniform_int_distribution<int>(a + 1, n - 1)(rng);
        if (std::find(ses.sinks.begin(), ses.sinks.end(), b) == ses.sinks.end())
          ses.sinks.push_back(b);
      }
      std::sort(ses.sinks.begin(), ses.sinks.end());
      net.sessions.push_back(ses);
    }
    if (validateNetwork(net).ok() && demandsConnected(net))
      return net;
  }
}

ncb::Network randomThreeLayer(Rng &rng, int maxSessions, int maxMiddle, int maxEdges) {
  for (;;) {
    int ns = std::uniform_int_distribution<int>(1, maxSessions)(rng);
    int tails = std::uniform_int_distribution<int>(1, 3)(rng);
    int heads = std::uniform_int_distribution<int>(1, 3)(rng);
    // Node layout: sources, tail relays, head relays, sinks.
    Network net;
    int n = 2 * ns + tails + heads;
    for (int v = 0; v < n; ++v)
      net.nodeIds.push_back(v + 1);
    auto tailNode = [&](int i) { return ns + i; };
    auto headNode = [&](int j) { return ns + tails + j; };
    auto sinkNode = [&](int s) { return ns + tails + heads + s; };
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<int> cap(1, 3);
    for (int i = 0; i < tails; ++i)
      for (int j = 0; j < heads; ++j)
        if (coin(rng) && net.numEdges() < maxMiddle)
          net.edges.push_back({tailNode(i), headNode(j), Rational(cap(rng))});
    if (net.edges.empty())
      continue;
    for (int s = 0; s < ns; ++s) {
      net.sessions.push_back({s, {sinkNode(s)}});
      for (int i = 0; i < tails; ++i)
        if (coin(rng))
          net.edges.push_back({s, tailNode(i), Rational(1000)});
      for (int j = 0; j < heads; ++j)
        if (coin(rng))
          net.edges.push_back({headNode(j), sinkNode(s), Rational(1000)});
    }
    if (net.numEdges() > maxEdges || !validateNetwork(net).ok() ||
        !demandsConnected(net))
      continue;
    try {
      threeLayerView(net);
    } catch (const NetworkError &) {
      continue;
    }
    return net;
  }
}

ncb::Fdg randomDag(Rng &rng, int n, double density) {
  std::vector<std::pair<int, int>> arcs;
  std::bernoulli_distribution coin(density);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng))
        arcs.push_back({u, v});
  return Fdg::generic(n, arcs);
}

ncb::Fdg lineGraph(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int v = 0; v + 1 < n; ++v)
    arcs.push_back({v, v + 1});
  return Fdg::generic(n, arcs);
}

} // namespace ncbtest
