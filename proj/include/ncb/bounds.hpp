#pragma once

#include "ncb/fdg.hpp"
#include "ncb/maxsets.hpp"
#include "ncb/model.hpp"
#include "ncb/rational.hpp"

#include <string>
#include <vector>

namespace ncb {

enum class RegionMode { Correlated, Independent };

/// c_W for every nonempty session subset W. Independent mode reads
/// sum_{s in W} R_s <= c_W, correlated mode H(Y_W | Y_{W^c}) <= c_W.
struct Region {
  RegionMode mode = RegionMode::Independent;
  int numSessions = 0;
  std::vector<ExtRational> constants; ///< indexed by W bitmask; [0] unused
  std::string provenance;

  Region() = default;
  Region(RegionMode m, int sessions, std::string prov);

  SessionSet full() const { return (SessionSet(1) << numSessions) - 1; }
  const ExtRational &at(SessionSet w) const { return constants.at(w); }
  ExtRational &at(SessionSet w) { return constants.at(w); }

  /// Same constants under the other reading. With independent sources the
  /// two coincide: H(Y_W | Y_{W^c}) = sum_{s in W} H(Y_s).
  Region reinterpret(RegionMode m) const;

  /// One line per W, by |W| then lexicographically.
  std::string str() const;
};

/// Nonempty subsets of `full` ordered by size, then lexicographically.
std::vector<SessionSet> canonicalSubsets(SessionSet full);

struct FdOptions {
  /// Count only maximal sets whose sources are exactly Y_{W^c}. The default
  /// also admits sets whose sources are a subset of Y_{W^c}.
  bool exactComplement = false;
};

/// Branch-and-bound over edge sets in cost order; each candidate is checked
/// with isMaximalIrreducible.
Region fdRegion(const Network &net, ClosureKind kind, const FdOptions &opts = {});
/// Same bound read off the full allMaxSetsCyclic collection. Exponential in
/// the graph size; meant for small networks.
Region fdRegionEnumerated(const Network &net, ClosureKind kind,
                          const FdOptions &opts = {});
/// The bound read off a precomputed collection on the kind's construction.
Region fdRegionFromSets(const Network &net, const Fdg &g,
                        const MaxSetCollection &sets, RegionMode mode,
                        const FdOptions &opts = {});

Region cutSetRegion(const Network &net, int guard = 24);

enum class NsReading { ForAll, Exists };
Region networkSharingRegion(const Network &net,
                            NsReading reading = NsReading::ForAll);

struct PdeOptions {
  bool improved = false;
  int guard = 16;
  /// Improved variant only: include the edge set in the ancestral subgraph
  /// used for the connectivity test.
  bool ancestralIncludesA = true;
};

/// Runs the (improved) PdE procedure for edge mask `edges`, sessions W and
/// the given order of W. `gbar` must be subgraphGbar of Construction-B.
bool pdeProcedure(const Network &net, const Fdg &gbar, uint64_t edges,
                  const std::vector<int> &order, const PdeOptions &opts);
/// True if some order of W passes.
bool pdePasses(const Network &net, const Fdg &gbar, uint64_t edges,
               SessionSet w, const PdeOptions &opts);
Region pdeRegion(const Network &net, const PdeOptions &opts = {});

enum class Containment { Equal, FirstInSecond, SecondInFirst, Incomparable };

struct Comparison {
  Containment relation = Containment::Equal;
  SessionSet witness = 0; ///< W showing strictness or one failed direction
  SessionSet witness2 = 0; ///< Incomparable: W showing the other direction
};

/// Throws std::invalid_argument on mode or session-count mismatch.
Comparison compareRegions(const Region &r1, const Region &r2);
std::string containmentName(Containment c);

} // namespace ncb
