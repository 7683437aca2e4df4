#include "ncb/simplex.hpp"

#include <stdexcept>

namespace ncb {

namespace {

constexpr int kDegenerateLimit = 50;

class Tableau {
public:
  Tableau(const DenseLp &lp) : n_(lp.numVars) {
    int m = int(lp.rows.size());
    // Column layout: structural, slack/surplus (one per inequality row),
    // artificial (one per >= or = row after sign normalization).
    std::vector<int> slackOf(m, -1), artOf(m, -1);
    int cols = n_;
    std::vector<bool> flip(m, false);
    for (int i = 0; i < m; ++i) {
      // Rows "a.x >= 0" become "-a.x <= 0" so their slack can start basic.
      flip[i] = lp.rows[i].rhs < 0 ||
                (lp.rows[i].rhs == 0 && lp.rows[i].rel == Relation::Ge);
      if (lp.rows[i].rel != Relation::Eq)
        slackOf[i] = cols++;
    }
    firstArt_ = cols;
    for (int i = 0; i < m; ++i) {
      Relation rel = lp.rows[i].rel;
      if (flip[i] && rel != Relation::Eq)
        rel = rel == Relation::Le ? Relation::Ge : Relation::Le;
      if (rel != Relation::Le)
        artOf[i] = cols++;
    }
    cols_ = cols;
    t_.assign(m, std::vector<Rational>(cols_));
    b_.assign(m, Rational(0));
    basis_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      const auto &row = lp.rows[i];
      Rational sign = flip[i] ? -1 : 1;
      for (const auto &[j, c] : row.coeffs) {
        if (j < 0 || j >= n_)
          throw std::out_of_range("LP coefficient outside variable range");
        t_[i][j] += sign * c;
      }
      b_[i] = sign * row.rhs;
      if (slackOf[i] >= 0)
        t_[i][slackOf[i]] = row.rel == Relation::Le ? sign : Rational(-sign);
      if (artOf[i] >= 0) {
        t_[i][artOf[i]] = 1;
        basis_[i] = artOf[i];
      } else {
        basis_[i] = slackOf[i];
      }
    }
  }

  DenseResult solve(const DenseLp &lp) {
    DenseResult res;
    // Phase 1: maximize -(sum of artificials).
    std::vector<Rational> c1(cols_);
    for (int j = firstArt_; j < cols_; ++j)
      c1[j] = -1;
    setObjective(c1);
    if (!run(cols_, res.pivots))
      throw std::logic_error("phase 1 cannot be unbounded");
    if (z_ < 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    purgeArtificials(res.pivots);

    std::vector<Rational> c2(cols_);
    for (int j = 0; j < n_; ++j)
      c2[j] = lp.objective.at(j);
    setObjective(c2);
    if (!run(firstArt_, res.pivots)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.optimum = z_;
    res.x.assign(n_, Rational(0));
    for (size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n_)
        res.x[basis_[i]] = b_[i];
    return res;
  }

private:
  void setObjective(const std::vector<Rational> &c) {
    d_ = c;
    z_ = 0;
    for (size_t i = 0; i < basis_.size(); ++i) {
      const Rational &cb = c[basis_[i]];
      if (cb == 0)
        continue;
      for (int j = 0; j < cols_; ++j)
        if (t_[i][j] != 0)
          d_[j] -= cb * t_[i][j];
      z_ += cb * b_[i];
    }
  }

  /// Pivots until optimal (true) or unbounded (false). Columns at or past
  /// `limit` never enter.
  bool run(int limit, int &pivots) {
    int degenerate = 0;
    bool bland = false;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (d_[j] <= 0)
          continue;
        if (enter < 0 || (!bland && d_[j] > d_[enter]))
          enter = j;
        if (bland)
          break;
      }
      if (enter < 0)
        return true;
      int leave = -1;
      Rational best;
      for (size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][enter] <= 0)
          continue;
        Rational ratio = b_[i] / t_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = int(i);
          best = ratio;
        }
      }
      if (leave < 0)
        return false;
      if (best == 0) {
        if (++degenerate > kDegenerateLimit)
          bland = true;
      } else {
        degenerate = 0;
      }
      pivot(leave, enter);
      ++pivots;
    }
  }

  void pivot(int r, int e) {
    Rational p = t_[r][e];
    std::vector<int> nz;
    for (int j = 0; j < cols_; ++j)
      if (t_[r][j] != 0) {
        t_[r][j] /= p;
        nz.push_back(j);
      }
    b_[r] /= p;
    for (size_t i = 0; i < t_.size(); ++i) {
      if (int(i) == r || t_[i][e] == 0)
        continue;
      Rational f = t_[i][e];
      for (int j : nz)
        t_[i][j] -= f * t_[r][j];
      b_[i] -= f * b_[r];
    }
    if (d_[e] != 0) {
      Rational f = d_[e];
      for (int j : nz)
        d_[j] -= f * t_[r][j];
      z_ += f * b_[r];
    }
    basis_[r] = e;
  }

  void purgeArtificials(int &pivots) {
    for (size_t i = 0; i < basis_.size();) {
      if (basis_[i] < firstArt_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < firstArt_ && col < 0; ++j)
        if (t_[i][j] != 0)
          col = j;
      if (col >= 0) {
        pivot(int(i), col);
        ++pivots;
        ++i;
      } else {
        // Redundant equality: the row is a combination of the others.
        t_.erase(t_.begin() + i);
        b_.erase(b_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  int n_ = 0, cols_ = 0, firstArt_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> b_, d_;
  std::vector<int> basis_;
  Rational z_{0};
};

} // namespace

DenseResult solveDense(const DenseLp &lp) {
  if (int(lp.objective.size()) != lp.numVars)
    throw std::invalid_argument("objective length differs from variable count");
  Tableau t(lp);
  return t.solve(lp);
}

} // namespace ncb
