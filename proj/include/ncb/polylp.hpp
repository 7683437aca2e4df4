#pragma once

#include "ncb/model.hpp"
#include "ncb/simplex.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncb {

/// Coordinates of an entropy vector over an n-element ground set. The
/// coordinate of a nonempty subset is its bitmask, so coordinates run
/// 1..2^n-1 in binary-representation order.
struct EntropyIndex {
  int n = 0;
  uint32_t size() const { return (uint32_t(1) << n) - 1; }
  uint32_t full() const { return size(); }
};

struct LinearConstraint {
  std::vector<std::pair<uint32_t, Rational>> coeffs; ///< sorted, no zeros
  Relation rel = Relation::Ge;
  Rational rhs{0};

  /// Evaluates the left side at h (indexed by bitmask, h[0] ignored).
  Rational lhs(const std::vector<Rational> &h) const;
  bool satisfiedBy(const std::vector<Rational> &h) const;
};

/// Builds a constraint from (coordinate, coefficient) terms, merging equal
/// coordinates and dropping h(empty set) and zero coefficients.
LinearConstraint makeConstraint(const std::vector<std::pair<uint32_t, Rational>> &terms,
                                Relation rel, Rational rhs = 0);

struct LpProblem {
  EntropyIndex index;
  std::vector<std::pair<uint32_t, Rational>> objective; ///< maximized
  std::vector<LinearConstraint> rows;
  /// Set when every elemental inequality is among the rows, which lets
  /// solveLp merge coordinates that functional dependencies force equal.
  bool polymatroidal = false;
};

/// m = n + C(n,2) 2^(n-2) rows, guard 1 <= n <= 14.
std::vector<LinearConstraint> elementalInequalities(int n);
inline uint64_t elementalCount(int n) {
  return uint64_t(n) + uint64_t(n) * (n - 1) / 2 * (n >= 2 ? uint64_t(1) << (n - 2) : 0);
}

/// h(AB)+h(AC)+h(AD)+h(BC)+h(BD) >= h(A)+h(B)+h(CD)+h(ABC)+h(ABD).
LinearConstraint ingletonRow(uint32_t a, uint32_t b, uint32_t c, uint32_t d);
/// Instances (A+Z, B+Z, C+Z, D+Z) for disjoint A, B, C, D nonempty and Z
/// disjoint from them, one per orbit under A<->B and C<->D. Guard n <= 6.
std::vector<LinearConstraint> ingletonInequalities(int n);
/// 6^n/4 - 5^n + 3*4^n/2 - 3^n + 2^n/4.
uint64_t ingletonClosedForm(int n);

/// Ground set of the network LPs: Y_s for each session, then U_e.
inline int groundVar(const Network &net, int edge) { return net.numSessions() + edge; }

LpProblem buildIndependentLp(const Network &net, const std::vector<Rational> &weights,
                             int guard = 12);
/// jointEntropies is indexed by session bitmask (entry 0 ignored) and must be
/// polymatroidal; throws std::invalid_argument otherwise.
LpProblem buildCorrelatedLp(const Network &net, const std::vector<Rational> &jointEntropies,
                            const std::vector<std::pair<uint32_t, Rational>> &objective,
                            int guard = 12);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum{0};
  std::vector<Rational> point; ///< indexed by bitmask, size 2^n
  int pivots = 0;
  int reducedVars = 0;
  int reducedRows = 0;
};

struct SolveOptions {
  /// Merge coordinates forced equal by functional-dependence rows when the
  /// problem is polymatroidal.
  bool presolve = true;
};

LpSolution solveLp(const LpProblem &p, const SolveOptions &opts = {});

/// max sum_{s in W} h(Y_s) over the independent-source LP.
Rational lpRegionProbe(const Network &net, SessionSet w, int guard = 12);

std::string dumpLp(const LpProblem &p);
/// Throws std::invalid_argument on malformed text.
LpProblem loadLp(const std::string &text);

} // namespace ncb
