/**
 * @file lp.hpp
 * @brief Dense revised simplex (bounded primal with Bland fallback, plus dual simplex for warm starts).
 *
 * Problem form: min c^T x  s.t.  rowLower <= A x <= rowUpper,  colLower <= x <= colUpper.
 * Internally each row gets a slack s_i = a_i^T x carrying the row bounds, so the
 * system is A x - s = 0. Variable k < numCols is structural, k >= numCols is the
 * slack of row k - numCols.
 */
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gic/common.hpp"

namespace gic {

struct LpProblem {
  int numCols = 0;
  Vec obj;
  Vec colLower;
  Vec colUpper;
  std::vector<SparseVec> cols;  ///< column-wise constraint matrix
  Vec rowLower;
  Vec rowUpper;

  int numRows() const { return static_cast<int>(rowLower.size()); }
  int addCol(double cost, double lo, double up, const SparseVec& column = {});
  int addRow(const SparseVec& row, double lo, double up);
  /** Row-major dense copy (for tests and small problems). */
  DenseMatrix denseRows() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, TimeLimit, Numerical };
std::string statusName(LpStatus s);

enum class VarStatus : unsigned char { Basic, AtLower, AtUpper, Free };

struct WarmStart {
  std::vector<int> head;           ///< basic variable per basis position
  std::vector<VarStatus> status;   ///< per variable (structural then slack)
  std::shared_ptr<const DenseMatrix> inverse;  ///< basis inverse for @c head, when known
  bool empty() const { return head.empty(); }
};

struct LpOptions {
  double primalTol = 1e-9;
  double dualTol = 1e-9;
  double pivotTol = 1e-9;
  int refactorEvery = 64;
  int maxIterations = 200000;
  int degenerateBeforeBland = 50;
  double timeLimit = kInf;  ///< seconds
};

struct LpResult {
  LpStatus status = LpStatus::Numerical;
  double objective = 0.0;
  Vec x;              ///< structural values
  Vec rowActivity;    ///< a_i^T x
  Vec rowDual;        ///< y with reduced cost d = c - A^T y
  Vec reducedCost;    ///< structural reduced costs
  WarmStart basis;
  Vec ray;            ///< structural direction of unboundedness when status == Unbounded
  int iterations = 0;
  bool usedDual = false;
};

class SimplexSolver {
 public:
  explicit SimplexSolver(LpOptions opt = {}) : opt_(opt) {}
  LpResult solve(const LpProblem& prob) const;
  LpResult solve(const LpProblem& prob, const WarmStart& warm) const;
  const LpOptions& options() const { return opt_; }

 private:
  LpOptions opt_;
};

}  // namespace gic
