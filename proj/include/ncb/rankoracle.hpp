#pragma once

#include "ncb/fdg.hpp"
#include "ncb/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncb {

using GfRow = std::vector<int>;

/// Rank over GF(q) by Gaussian elimination; q must be prime.
int gfRank(std::vector<GfRow> rows, int q);
bool isSmallPrime(int q);

/// Global linear network code: each edge carries a matrix applied to the
/// stacked message vector (session blocks in session order).
struct LinearCode {
  int q = 2;
  std::vector<int> dims;                   ///< k_s per session
  int scale = 1;                           ///< blocklength factor
  std::vector<std::vector<GfRow>> edges;   ///< per edge, rows of length totalDim

  int totalDim() const;
  int offset(int session) const;
  /// Identity rows of a session's message block.
  std::vector<GfRow> sessionBlock(int session) const;
};

/// Throws std::invalid_argument when the code's dimensions do not fit net.
bool checkCode(const LinearCode &code, const Network &net);

/// Rank of a ground-set mask: bit s < |S| is Y_s, bit |S|+e is U_e.
int rank(const LinearCode &code, uint64_t vars);
/// Rank of FDG nodes; estimates count as their session's block.
int rankNodes(const LinearCode &code, const Fdg &g, const NodeSet &nodes);

/// rank(a ∪ b) == rank(a), masks as for rank().
bool verifyDetermination(const LinearCode &code, uint64_t a, uint64_t b);

/// Samples local maps uniformly at random (deterministic in seed) and
/// returns the first composed code passing checkCode.
std::optional<LinearCode> randomCode(const Network &net, int q,
                                     const std::vector<int> &dims, int attempts,
                                     uint64_t seed, int scale = 1);

/// Best effort: true if some code has rank(A ∪ {e}) > rank(A), i.e. A does
/// not informationally dominate e. No witness proves nothing.
bool psiContainmentProbe(const Network &net, uint64_t edgeMask, int edge,
                         const std::vector<LinearCode> &codes);

/// Rate of session s in units of log q: k_s / scale.
Rational achievedRate(const LinearCode &code, int session);

std::string dumpCode(const LinearCode &code);

} // namespace ncb
