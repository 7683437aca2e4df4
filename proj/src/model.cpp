#include "ncb/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace ncb {

using json = nlohmann::json;

std::string sessionSetStr(SessionSet w) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!(w >> i & 1))
      continue;
    if (!first)
      s += ',';
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

int Network::nodeIndex(int id) const {
  auto it = std::find(nodeIds.begin(), nodeIds.end(), id);
  return it == nodeIds.end() ? -1 : int(it - nodeIds.begin());
}

std::vector<int> Network::inEdges(int node) const {
  std::vector<int> out;
  for (int e = 0; e < numEdges(); ++e)
    if (edges[e].head == node)
      out.push_back(e);
  return out;
}

std::vector<int> Network::outEdges(int node) const {
  std::vector<int> out;
  for (int e = 0; e < numEdges(); ++e)
    if (edges[e].tail == node)
      out.push_back(e);
  return out;
}

namespace {

std::string position(std::string_view text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

int asInt(const json &j, const std::string &what) {
  if (!j.is_number_integer())
    throw NetworkError(what + ": expected an integer");
  return j.get<int>();
}

Rational asCapacity(const json &j, const std::string &what) {
  try {
    if (j.is_string())
      return parseRational(j.get<std::string>());
    if (j.is_number_integer())
      return Rational(j.get<long long>());
    if (j.is_number_float())
      return parseRational(j.dump());
  } catch (const std::invalid_argument &e) {
    throw NetworkError(what + ": " + e.what());
  }
  throw NetworkError(what + ": capacity must be a number or \"p/q\" string");
}

} // namespace

Network parseNetwork(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw NetworkError("syntax error at " + position(text, e.byte) + ": " +
                       e.what());
  }
  if (!doc.is_object())
    throw NetworkError("network document must be a JSON object");
  for (const char *key : {"nodes", "edges", "sessions"})
    if (!doc.contains(key) || !doc[key].is_array())
      throw NetworkError(std::string("missing array '") + key + "'");

  Network net;
  for (const auto &n : doc["nodes"]) {
    int id = asInt(n, "node id");
    if (net.nodeIndex(id) >= 0)
      throw NetworkError("duplicate node id " + std::to_string(id));
    net.nodeIds.push_back(id);
  }
  auto node = [&](const json &j, const std::string &what) {
    int id = asInt(j, what);
    int idx = net.nodeIndex(id);
    if (idx < 0)
      throw NetworkError(what + " references unknown node " +
                         std::to_string(id));
    return idx;
  };

  std::set<int> edgeIds;
  for (const auto &e : doc["edges"]) {
    if (!e.is_array() || e.size() != 4)
      throw NetworkError("edge entries must be [id, tail, head, capacity]");
    int id = asInt(e[0], "edge id");
    std::string what = "edge " + std::to_string(id);
    if (!edgeIds.insert(id).second)
      throw NetworkError("duplicate edge id " + std::to_string(id));
    Edge edge;
    edge.tail = node(e[1], what + " tail");
    edge.head = node(e[2], what + " head");
    edge.capacity = asCapacity(e[3], what);
    net.edges.push_back(std::move(edge));
  }

  std::set<int> sessionIds;
  for (const auto &s : doc["sessions"]) {
    if (!s.is_object() || !s.contains("id") || !s.contains("source") ||
        !s.contains("sinks") || !s["sinks"].is_array())
      throw NetworkError("session entries must be {id, source, sinks:[...]}");
    int id = asInt(s["id"], "session id");
    std::string what = "session " + std::to_string(id);
    if (!sessionIds.insert(id).second)
      throw NetworkError("duplicate session id " + std::to_string(id));
    Session session;
    session.source = node(s["source"], what + " source");
    for (const auto &t : s["sinks"])
      session.sinks.push_back(node(t, what + " sink"));
    std::sort(session.sinks.begin(), session.sinks.end());
    if (std::adjacent_find(session.sinks.begin(), session.sinks.end()) !=
        session.sinks.end())
      throw NetworkError(what + ": duplicate sink");
    net.sessions.push_back(std::move(session));
  }
  return net;
}

std::string serializeNetwork(const Network &net) {
  json doc;
  doc["nodes"] = net.nodeIds;
  doc["edges"] = json::array();
  for (int e = 0; e < net.numEdges(); ++e) {
    const Edge &edge = net.edges[e];
    doc["edges"].push_back({e + 1, net.nodeIds[edge.tail],
                            net.nodeIds[edge.head],
                            formatRational(edge.capacity)});
  }
  doc["sessions"] = json::array();
  for (int s = 0; s < net.numSessions(); ++s) {
    json sinks = json::array();
    for (int t : net.sessions[s].sinks)
      sinks.push_back(net.nodeIds[t]);
    doc["sessions"].push_back(
        {{"id", s + 1},
         {"source", net.nodeIds[net.sessions[s].source]},
         {"sinks", sinks}});
  }
  return doc.dump(1) + "\n";
}

namespace {

/// A directed cycle as a list of node indices, or empty if acyclic.
std::vector<int> findCycle(const Network &net) {
  int n = net.numNodes();
  std::vector<std::vector<int>> succ(n);
  for (const auto &e : net.edges)
    succ[e.tail].push_back(e.head);
  std::vector<int> color(n, 0), parent(n, -1);
  std::vector<int> cycle;
  // Iterative DFS so deep graphs do not overflow the stack.
  for (int root = 0; root < n && cycle.empty(); ++root) {
    if (color[root])
      continue;
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty() && cycle.empty()) {
      auto &[v, i] = stack.back();
      if (i < succ[v].size()) {
        int w = succ[v][i++];
        if (color[w] == 0) {
          color[w] = 1;
          parent[w] = v;
          stack.push_back({w, 0});
        } else if (color[w] == 1) {
          for (int x = v; x != w; x = parent[x])
            cycle.push_back(x);
          cycle.push_back(w);
          std::reverse(cycle.begin(), cycle.end());
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return cycle;
}

std::vector<bool> reachable(int n, const std::vector<std::vector<int>> &adj,
                            const std::vector<int> &starts) {
  std::vector<bool> seen(n, false);
  std::vector<int> work = starts;
  for (int v : starts)
    seen[v] = true;
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        work.push_back(w);
      }
  }
  return seen;
}

} // namespace

ValidationReport validateNetwork(const Network &net) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  int n = net.numNodes();

  if (net.numSessions() > 16)
    add("too many sessions (limit 16)");
  int fdgNodes = net.numSessions() + net.numEdges();
  for (const auto &s : net.sessions)
    fdgNodes += int(s.sinks.size());
  if (fdgNodes > 128)
    add("network too large (functional dependence graph exceeds 128 nodes)");

  for (int e = 0; e < net.numEdges(); ++e) {
    const Edge &edge = net.edges[e];
    std::string name = "edge " + std::to_string(e + 1);
    if (edge.tail < 0 || edge.tail >= n || edge.head < 0 || edge.head >= n) {
      add(name + ": dangling node reference");
      return report;
    }
    if (edge.tail == edge.head)
      add(name + ": tail = head");
    if (edge.capacity < 0)
      add(name + ": negative capacity");
  }
  for (int s = 0; s < net.numSessions(); ++s) {
    const Session &ses = net.sessions[s];
    std::string name = "session " + std::to_string(s + 1);
    if (ses.sinks.empty())
      add(name + ": no sinks");
    if (std::find(ses.sinks.begin(), ses.sinks.end(), ses.source) !=
        ses.sinks.end())
      add(name + ": source ∈ sinks");
  }

  if (auto cycle = findCycle(net); !cycle.empty()) {
    // Rotate so the smallest document id comes first.
    auto smallest = std::min_element(cycle.begin(), cycle.end(), [&](int a, int b) {
      return net.nodeIds[a] < net.nodeIds[b];
    });
    std::rotate(cycle.begin(), smallest, cycle.end());
    std::string msg = "cycle detected: ";
    for (size_t i = 0; i < cycle.size(); ++i)
      msg += (i ? "," : "") + std::to_string(net.nodeIds[cycle[i]]);
    add(msg);
  }

  std::vector<std::vector<int>> succ(n), pred(n);
  for (const auto &e : net.edges) {
    succ[e.tail].push_back(e.head);
    pred[e.head].push_back(e.tail);
  }
  std::vector<int> sources, sinks;
  for (const auto &s : net.sessions) {
    sources.push_back(s.source);
    sinks.insert(sinks.end(), s.sinks.begin(), s.sinks.end());
  }
  auto fromSource = reachable(n, succ, sources);
  auto toSink = reachable(n, pred, sinks);
  for (int e = 0; e < net.numEdges(); ++e)
    if (!fromSource[net.edges[e].tail] || !toSink[net.edges[e].head])
      add("edge " + std::to_string(e + 1) + ": on no source-sink path");
  return report;
}

ThreeLayerView threeLayerView(const Network &net) {
  auto fail = []() -> ThreeLayerView { throw NetworkError("not three-layer"); };
  std::vector<int> role(net.numNodes(), 0); // 1 source, 2 sink
  for (const auto &s : net.sessions) {
    if (s.sinks.size() != 1)
      return fail();
    if (role[s.source] == 2 || role[s.sinks[0]] == 1)
      return fail();
    role[s.source] = 1;
    role[s.sinks[0]] = 2;
  }
  auto hasEdge = [&](int u, int v) {
    for (const auto &e : net.edges)
      if (e.tail == u && e.head == v)
        return true;
    return false;
  };

  ThreeLayerView view;
  view.alpha.assign(net.numEdges(), 0);
  view.beta.assign(net.numEdges(), 0);
  // Middle edges join two relay nodes; their connections decide α and β.
  for (int e = 0; e < net.numEdges(); ++e) {
    const Edge &edge = net.edges[e];
    if (role[edge.tail] != 0 || role[edge.head] != 0)
      continue;
    view.middle.push_back(e);
    for (int s = 0; s < net.numSessions(); ++s) {
      if (hasEdge(net.sessions[s].source, edge.tail))
        view.alpha[e] |= SessionSet(1) << s;
      if (hasEdge(edge.head, net.sessions[s].sinks[0]))
        view.beta[e] |= SessionSet(1) << s;
    }
  }
  // Every edge must lie on a length-3 path a(s) -> x -> y -> b(t). The
  // sessions may differ: edges with disjoint alpha and beta are allowed.
  for (int e = 0; e < net.numEdges(); ++e) {
    const Edge &edge = net.edges[e];
    bool onPath = false;
    for (int m : view.middle) {
      if (!view.alpha[m] || !view.beta[m])
        continue;
      const Edge &mid = net.edges[m];
      onPath = e == m || (role[edge.tail] == 1 && edge.head == mid.tail) ||
               (edge.tail == mid.head && role[edge.head] == 2);
      if (onPath)
        break;
    }
    if (!onPath)
      return fail();
  }
  return view;
}

} // namespace ncb
