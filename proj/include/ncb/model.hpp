#pragma once

#include "ncb/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ncb {

/// Bitmask over session indices; bit s is session s (document id s+1).
using SessionSet = uint32_t;

/// Formats a session set as "{1,3}" using document ids.
std::string sessionSetStr(SessionSet w);

struct Edge {
  int tail = 0; ///< internal node index
  int head = 0;
  Rational capacity{0};
};

struct Session {
  int source = 0;         ///< internal node index a(s)
  std::vector<int> sinks; ///< internal node indices b(s), ascending
};

/// Communication network. Nodes, edges and sessions are indexed densely from
/// zero; `nodeIds` keeps the document's node labels for output.
struct Network {
  std::vector<int> nodeIds;
  std::vector<Edge> edges;
  std::vector<Session> sessions;

  int numNodes() const { return int(nodeIds.size()); }
  int numEdges() const { return int(edges.size()); }
  int numSessions() const { return int(sessions.size()); }
  SessionSet allSessions() const {
    return numSessions() == 32 ? ~SessionSet(0)
                               : (SessionSet(1) << numSessions()) - 1;
  }

  /// Internal index of a document node id, or -1.
  int nodeIndex(int id) const;
  std::vector<int> inEdges(int node) const;
  std::vector<int> outEdges(int node) const;
};

class NetworkError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses the JSON network document. Throws NetworkError on syntax errors
/// (with line and column), duplicate ids and dangling node references.
Network parseNetwork(std::string_view text);
std::string serializeNetwork(const Network &net);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validateNetwork(const Network &net);

/// Source and sink connections of a three-layer network's middle edges.
struct ThreeLayerView {
  std::vector<int> middle;        ///< middle-layer edge indices, ascending
  std::vector<SessionSet> alpha;  ///< per edge index; 0 for non-middle edges
  std::vector<SessionSet> beta;
};

/// Throws NetworkError("not three-layer") when the structural test fails.
ThreeLayerView threeLayerView(const Network &net);

} // namespace ncb
