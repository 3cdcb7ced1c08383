/**
 * @file prlp.hpp
 * @brief Point-ray linear program over a collection, objective families and cut gates.
 */
#pragma once

#include <string>
#include <vector>

#include "gic/lp.hpp"
#include "gic/split.hpp"

namespace gic {

/** Objective family used to probe the point-ray LP. */
enum class Family { S, T, R, V };

std::string familyName(Family f);
/** Parses a comma list such as "r,v,t,s" and returns it in execution order S, T, R, V. */
std::vector<Family> parseFamilies(const std::string& list);

struct PrlpOptions {
  double objTimeLimit = 5.0;     ///< seconds per objective solve
  double maxDynamism = kMaxDynamism;
  bool precheck = true;          ///< skip objectives predicted to be unbounded
};

enum class PrlpStatus { Optimal, Unbounded, Infeasible, Timeout, Rejected, Numerical };
std::string prlpStatusName(PrlpStatus s);

struct PrlpSolve {
  PrlpStatus status = PrlpStatus::Numerical;
  Vec alpha;
  double objective = 0.0;
  std::string reason;  ///< gate that rejected the cut
  int iterations = 0;
};

/**
 * min w^T alpha s.t. alpha^T p >= 1 (points), alpha^T r >= 0 (rays), alpha free.
 * Solved through its dual max sum(lambda) s.t. sum lambda_p p + sum mu_r r = w, which has
 * one column per collection element and keeps the basis across objectives.
 */
class Prlp {
 public:
  Prlp(const PointRayCollection& coll, int dim, PrlpOptions opt = {});

  int dim() const { return n_; }
  int numPointRows() const { return static_cast<int>(points_.size()); }
  int numRayRows() const { return static_cast<int>(rays_.size()); }
  int numRows() const { return numPointRows() + numRayRows(); }
  const std::vector<SparseVec>& points() const { return points_; }
  const std::vector<SparseVec>& rays() const { return rays_; }

  /** Solves for objective w, applies the dynamism and feasibility gates. */
  PrlpSolve solve(const Vec& w);
  /** Boundedness prediction: bounded iff w lies in cone(P u R), decided by a separate feasibility LP. */
  bool checkBoundedness(const Vec& w) const;
  /**
   * Cheap boundedness screen: 0 when a coordinate certificate proves w outside cone(P u R),
   * 1 when w is a nonnegative multiple of a single element, -1 when undecided.
   */
  int quickBoundedness(const Vec& w) const;
  /** Status of the PRLP solved directly in alpha-space, for cross-checks. */
  LpStatus solvePrimalForm(const Vec& w, Vec* alpha = nullptr) const;
  /** Largest violation of the model rows by alpha (0 when feasible). */
  double maxViolation(const Vec& alpha) const;

 private:
  int n_;
  PrlpOptions opt_;
  std::vector<SparseVec> points_;
  std::vector<SparseVec> rays_;
  LpProblem dual_;
  WarmStart warm_;
  Vec minCoord_;  ///< smallest coordinate of any element, per axis

};

/** Context needed to build objective vectors for one split. */
struct ObjectiveContext {
  const PointRayCollection* coll = nullptr;
  Vec rayCosts;                         ///< c^T r^j per cone ray
  std::vector<SparseVec> shared;        ///< points routed here from other splits
  int pointBudget = 1000;               ///< cap on (T) objectives for this split
};

/** Objective vectors of one family, deduplicated. */
std::vector<Vec> genObjectives(Family f, const ObjectiveContext& ctx, int dim);

/**
 * Routes points of every collection to the last split crossed by their generating edge
 * when the point lies strictly inside that split. Result is indexed like @p colls.
 */
std::vector<std::vector<SparseVec>> routeSharedPoints(const std::vector<const PointRayCollection*>& colls);

/** True when two nonbasic cuts with beta = 1 coincide within 1e-7 relative. */
bool sameCut(const Vec& a, const Vec& b);

}  // namespace gic
