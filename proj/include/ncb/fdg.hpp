#pragma once

#include "ncb/model.hpp"
#include "ncb/nodeset.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ncb {

enum class NodeKind { Source, EdgeVar, Estimate, Plain };

struct FdgNode {
  NodeKind kind = NodeKind::Plain;
  int session = -1; ///< Source, Estimate
  int edge = -1;    ///< EdgeVar
  int sink = -1;    ///< Estimate: internal network node index of the sink
  std::string label;
};

enum class FdgKind { ConstructionA, ConstructionB, Generic };

enum class ClosureKind { PhiA, PhiB, Psi };

std::string closureKindName(ClosureKind k);

/// Functional dependence graph. Node i is a function of its parents.
class Fdg {
public:
  /// Graph on n plain nodes with the given arcs (u -> v).
  static Fdg generic(int n, const std::vector<std::pair<int, int>> &arcs);

  FdgKind kind() const { return kind_; }
  int size() const { return int(nodes_.size()); }
  const FdgNode &node(int v) const { return nodes_[v]; }
  const NodeSet &parents(int v) const { return parents_[v]; }
  const NodeSet &children(int v) const { return children_[v]; }
  bool hasArc(int u, int v) const { return children_[u].contains(v); }
  int arcCount() const;
  NodeSet all() const { return NodeSet::range(size()); }

  /// Nodes of in-degree zero in this graph.
  NodeSet parentless() const;
  /// SourceVar nodes; for graphs without node metadata, the parentless nodes.
  NodeSet sourceNodes() const;

  int numSessions() const { return numSessions_; }
  int sourceOf(int session) const { return sourceNode_[session]; }
  /// Estimate nodes of a session, ascending by sink.
  const std::vector<int> &estimatesOf(int session) const {
    return estimates_[session];
  }
  int edgeNode(int edge) const { return edgeNode_[edge]; }

  /// Internal: adds a node and returns its index.
  int addNode(FdgNode n);
  void addArc(int u, int v);

private:
  friend Fdg buildConstructionA(const Network &);
  friend Fdg buildConstructionB(const Network &);
  friend Fdg subgraphGbar(const Fdg &);

  FdgKind kind_ = FdgKind::Generic;
  std::vector<FdgNode> nodes_;
  std::vector<NodeSet> parents_, children_;
  int numSessions_ = 0;
  std::vector<int> sourceNode_;
  std::vector<std::vector<int>> estimates_;
  std::vector<int> edgeNode_;
};

/// Nodes 0..|S|-1 are Y_s, then U_e for every edge.
Fdg buildConstructionA(const Network &net);
/// Construction-A's nodes followed by one estimate per (session, sink).
Fdg buildConstructionB(const Network &net);
/// Construction-B without the arcs into source nodes. The result is Generic
/// (node metadata kept) and acyclic for valid networks.
Fdg subgraphGbar(const Fdg &g);

class FdgError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ClosureOptions {
  /// Psi only: test (session, sink) pairs in descending instead of
  /// ascending order. The fixpoint must not depend on it.
  bool descendingPairs = false;
};

/// The set of nodes deleted by the determination procedure of `kind`.
NodeSet closure(const Fdg &g, const NodeSet &a, ClosureKind kind,
                const ClosureOptions &opts = {});

/// Nodes with a directed path into some node of `a`, excluding `a`.
NodeSet ancestors(const Fdg &g, const NodeSet &a);

/// Requires pairwise disjoint a, b, c; throws FdgError otherwise.
bool dSeparates(const Fdg &g, const NodeSet &a, const NodeSet &b,
                const NodeSet &c);
bool fdSeparates(const Fdg &g, const NodeSet &a, const NodeSet &b,
                 const NodeSet &c);

/// Either a topological order or a directed cycle (first node repeated last
/// is not included).
struct TopoResult {
  bool acyclic = true;
  std::vector<int> order;
  std::vector<int> cycle;
};
TopoResult topologicalSort(const Fdg &g);
bool isAcyclic(const Fdg &g);

/// DOT text with labels Y1, U3, Yhat1@5.
std::string toDot(const Fdg &g);
/// One line per node: "<1-based id> <label>".
std::string idTable(const Fdg &g);

} // namespace ncb
