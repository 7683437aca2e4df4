#pragma once

#include "ncb/rational.hpp"

#include <utility>
#include <vector>

namespace ncb {

enum class Relation { Ge, Eq, Le };
enum class LpStatus { Optimal, Unbounded, Infeasible };

/// maximize c.x subject to the rows, x >= 0.
struct DenseLp {
  struct Row {
    std::vector<std::pair<int, Rational>> coeffs;
    Relation rel = Relation::Ge;
    Rational rhs{0};
  };
  int numVars = 0;
  std::vector<Rational> objective; ///< size numVars
  std::vector<Row> rows;
};

struct DenseResult {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum{0};
  std::vector<Rational> x;
  int pivots = 0;
};

/// Two-phase tableau simplex in exact arithmetic. Dantzig's rule, switching
/// to Bland's rule for good after a run of degenerate pivots.
DenseResult solveDense(const DenseLp &lp);

} // namespace ncb
