/**
 * @file oracle.hpp
 * @brief Exact rational certification at desk scale: vertex and integer enumeration, cut
 *        validity, full hyperplane activation, S_k-closure optima and structural checks.
 *
 * Polyhedra are stored in inequality form {x : A x >= b} with free variables; bounds are
 * ordinary rows. All arithmetic is exact.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gic/generator.hpp"
#include "gic/rational.hpp"

namespace gic {

/** {x in Q^n : A x >= b}. */
struct QPolyhedron {
  int n = 0;
  QMatrix A;
  QVec b;

  int numRows() const { return static_cast<int>(A.size()); }
  void addRow(QVec a, Rational rhs) {
    A.push_back(std::move(a));
    b.push_back(std::move(rhs));
  }
  bool contains(const QVec& x) const;
  /** Row indices with a_i^T x = b_i. */
  std::vector<int> tightRows(const QVec& x) const;
};

/** All rows and nonnegativity bounds of a standard-form instance. */
QPolyhedron polyhedronOf(const Instance& inst);
/** Rows built from floating hyperplanes (each double is converted exactly). */
QPolyhedron polyhedronOf(const std::vector<Hyperplane>& hps, int n);

enum class QLpStatus { Optimal, Infeasible, Unbounded };

struct QLpResult {
  QLpStatus status = QLpStatus::Infeasible;
  Rational value;
  QVec x;          ///< optimal vertex (or last vertex before an unbounded edge)
  QVec ray;        ///< improving direction when unbounded
  std::vector<int> basis;  ///< n linearly independent tight rows at x
  long pivots = 0;
};

/** min c^T x over a polyhedron by the active-set simplex method with Bland's rule. */
QLpResult solveRationalLp(const QPolyhedron& poly, const QVec& c);

/** Vertices, extreme rays and edges of a pointed polyhedron. */
struct VDescription {
  std::vector<QVec> vertices;
  std::vector<QVec> rays;                   ///< primitive: largest |entry| equal to 1
  std::vector<std::pair<int, int>> edges;   ///< bounded edges as vertex index pairs
  std::vector<std::pair<int, int>> rayEdges;  ///< (vertex, ray) unbounded edges
  long bases = 0;                           ///< feasible bases visited
  bool pointed = true;
};

/**
 * Enumerates every feasible basis by traversing the basis graph. Refuses (SizeGuardError)
 * when n > 10, more than @p maxRows rows, or more than @p maxBases bases.
 */
VDescription enumerateVertices(const QPolyhedron& poly, int maxRows = 30, long maxBases = 1000000);

/** Polyhedron with integrality data and cached enumerations. */
class RationalPolyhedron {
 public:
  RationalPolyhedron(QPolyhedron poly, std::vector<bool> integer);
  /** Standard-form instance: rows plus x >= 0. */
  static RationalPolyhedron fromInstance(const Instance& inst);

  const QPolyhedron& poly() const { return poly_; }
  int dim() const { return poly_.n; }
  const std::vector<bool>& integer() const { return integer_; }

  const VDescription& vdesc() const;
  /**
   * Integer assignments of the integer variables inside their LP bounds that extend to a
   * point of P. Pure-integer instances return the points themselves. Refuses when the
   * box product exceeds 1e6 or some integer variable is unbounded.
   */
  const std::vector<QVec>& integerPoints() const;
  bool pureInteger() const;
  /** Lower and upper LP bounds of variable j (nullopt when unbounded). */
  std::pair<std::optional<Rational>, std::optional<Rational>> bounds(int j) const;

 private:
  QPolyhedron poly_;
  std::vector<bool> integer_;
  mutable std::optional<VDescription> vdesc_;
  mutable std::optional<std::vector<QVec>> ints_;
};

/** Outcome of checking pi^T x >= pi0 against every point of P_I. */
struct CutVerdict {
  bool valid = true;
  long checked = 0;
  std::vector<QVec> violators;  ///< at most 10 witnesses
  Rational worst;               ///< most negative pi^T z - pi0 (0 when valid)
};

/**
 * A point z of P_I violates the cut when pi^T z < pi0 - tol (1 + |pi0|). Mixed instances
 * minimize over the continuous fiber of each integer assignment.
 */
CutVerdict validateCut(const QVec& pi, const Rational& pi0, const RationalPolyhedron& poly,
                       const Rational& tol = Rational(1, 1000000));
CutVerdict validateCut(const Inequality& cut, const RationalPolyhedron& poly,
                       const Rational& tol = Rational(1, 1000000));

/** Exact split S = {lo <= x_var <= hi}. */
struct QSplit {
  int var = -1;
  Rational lo, hi;
  static QSplit from(const SplitSet& s);
  bool interior(const QVec& x) const { return x[var] > lo && x[var] < hi; }
  bool onBoundary(const QVec& x) const { return x[var] == lo || x[var] == hi; }
};

/** Extended value of an exact optimization: +inf for infeasible, -inf for unbounded. */
struct QBound {
  enum Kind { Finite, PlusInf, MinusInf } kind = PlusInf;
  Rational value;
  bool finite() const { return kind == Finite; }
  double toDouble() const;
  std::string str() const;
};

/** min c^T x over conv(P \ int S) as the smaller of the two one-sided LPs. */
QBound skClosureOpt(const QPolyhedron& poly, const QSplit& s, const QVec& c);

/** Exact apex and rays of the cone cut out by n tight rows of a polyhedron. */
struct QCone {
  QVec apex;
  QMatrix rays;  ///< rays[j] is r^j with a_{tight_j}^T r^i = delta_ij
  std::vector<int> tight;
  /** Apex of the given tight rows. Throws DegenerateBasisError when singular. */
  static QCone fromTight(const QPolyhedron& poly, const std::vector<int>& tight);
  int dim() const { return static_cast<int>(apex.size()); }
  /** apex + sum s_j r^j. */
  QVec point(const QVec& s) const;
  QVec direction(const QVec& d) const;
};

/** Point-ray collection in structural space with exact coordinates. */
struct QCollection {
  std::vector<QVec> points;
  std::vector<QVec> rays;
  std::vector<int> facet;      ///< per point: 0 for x_var = lo, 1 for x_var = hi, -1 beyond bd S
  std::vector<bool> isFinal;   ///< point of P on bd S
  int numFinal() const;
};

/**
 * Full activation: V-description of C = cone intersected with the given rows, edges cut
 * by bd S. Points are vertices of C outside int S plus edge crossings of bd S; rays are
 * the extreme rays of C. Final flags are computed against @p p.
 */
QCollection fullActivation(const QPolyhedron& p, const QCone& cone, const std::vector<int>& activated,
                           const QSplit& s);

/** Exact point-ray LP data: min w^T alpha s.t. alpha^T (p - apex) >= 1, alpha^T r >= 0. */
QPolyhedron prlpPolyhedron(const QCollection& coll, const QVec& apex);

/** Verdicts of the strict-dominance condition. */
enum class Dominance { Possible, Impossible, NotApplicable };
std::string dominanceName(Dominance d);

/**
 * Condition for a strictly dominating basic solution after activating row @p h alone:
 * some side t has no initial point strictly inside H and at least one strictly outside.
 */
Dominance strictDominanceCheck(const QPolyhedron& p, const QCone& cone, int h, const QSplit& s);
/**
 * Enumerates the basic solutions of the point-ray LP after fully activating @p h and
 * reports whether one strictly dominates the SIC on C = cone intersected with H^+.
 */
bool strictDominanceBruteForce(const QPolyhedron& p, const QCone& cone, int h, const QSplit& s);

/** Exact result of activating a hyperplane on the ray of the cheapest initial point. */
struct MonotonicityResult {
  bool applicable = false;  ///< the ray is cut by H before bd S
  bool holds = true;
  Rational zLow;            ///< min cost over the initial points
  std::optional<Rational> minNew;  ///< min cost over the new points
  int newPoints = 0;
};

/**
 * Activates row @p h on the ray carrying the cheapest initial point and compares the
 * cheapest new point with that cost. Costs are c^T x in structural space.
 */
MonotonicityResult monotonicityCheck(const QPolyhedron& p, const QCone& cone, int h, const QSplit& s,
                                     const QVec& c);

/** Summary of a batch of randomized property trials. */
struct TrialSummary {
  int trials = 0;
  int applicable = 0;
  int failures = 0;
  std::string detail;
};

/** Randomized exact monotonicity trials on 3D cones. */
TrialSummary monotonicityTrials(int trials, unsigned seed);
/** Float activations on parallel rays checked against the SIC (|alpha^T p - 1| and |alpha^T r|). */
TrialSummary parallelRayTrials(int trials, unsigned seed, double tol = 1e-7);
/** Condition versus brute force on random 3D toys. */
TrialSummary strictDominanceTrials(int trials, unsigned seed);

/** Results of the tilting regression on the fixture. */
struct TiltingRegression {
  bool brokenLegInvalid = false;   ///< broken sequence admits a PRLP cut violating a point of conv(P \ int S)
  bool enforcedLegRejected = false;
  bool compliantLegValid = false;  ///< every basic PRLP solution of the compliant sequence is valid
  QVec witness;                    ///< structural point of conv(P \ int S) that is cut
  QVec cutPi;                      ///< structural cut pi^T x >= pi0 that cuts the witness
  Rational cutPi0;
  int compliantVertices = 0;
  std::string detail;
  bool pass() const { return brokenLegInvalid && enforcedLegRejected && compliantLegValid; }
};

/** Replays the broken, enforced and compliant tilt sequences on the fixture file. */
TiltingRegression tiltingRegression(const std::string& fixturePath);

/** Random bounded pure-integer standard-form instance with a fractional LP optimum. */
Instance randomTinyMilp(unsigned seed, int n, int m);

/** Validity of every cut of several configs on one instance. */
struct ValiditySummary {
  int configs = 0;
  int cuts = 0;
  int invalid = 0;
  int integerPoints = 0;
  std::string detail;
};
ValiditySummary validateConfigs(const Instance& inst, const std::vector<GicConfig>& configs);

/** Bound sandwich per split after PHA rounds, and full activation of all rows. */
struct SandwichSummary {
  int splits = 0;
  int checked = 0;            ///< splits with final points
  int violations = 0;         ///< z_low <= closure <= z_high failures
  int fullChecked = 0;
  int fullMismatches = 0;  ///< full activation: min over final points != closure optimum
  std::string detail;
};
SandwichSummary sandwichCheck(const Instance& inst, int kh);

/** Point counts of full activation against PHA on the same hyperplane sequence. */
struct GrowthComparison {
  std::vector<int> fullPoints;  ///< after each activation
  std::vector<int> phaPoints;
};
GrowthComparison compareGrowth(unsigned seed, int n, int kh);

}  // namespace gic
