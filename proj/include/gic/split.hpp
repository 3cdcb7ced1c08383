/**
 * @file split.hpp
 * @brief Split sets, point-ray collections in the nonbasic chart, SICs and cuts.
 */
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gic/cone.hpp"

namespace gic {

/** One bounded coordinate lo <= x_var <= hi of a split or box set. */
struct SplitTerm {
  int var = -1;
  double lo = 0.0;
  double hi = 1.0;
};

/**
 * Convex set S given as a product of coordinate intervals. A simple split has one
 * term; the box of the tilting example has two.
 */
struct SplitSet {
  std::vector<SplitTerm> terms;

  /** Simple split floor(v) <= x_k <= ceil(v). */
  static SplitSet simple(int k, double value);
  int var() const { return terms.empty() ? -1 : terms.front().var; }
  bool contains(const Vec& x, double tol = kEps) const;
  bool interior(const Vec& x, double tol = kEps) const;
  bool onBoundary(const Vec& x, double tol = kEps) const;
  std::string label() const;
};

/** Integer variables at least kFracTol away from the nearest integer. */
std::vector<int> fractionalIndices(const Vec& x, const std::vector<bool>& integer, double tol = kFracTol);

/** Rates of the split coordinates along each cone ray. */
class SplitGeometry {
 public:
  SplitGeometry(const Cone& cone, SplitSet split);

  const SplitSet& split() const { return split_; }
  /** Value of the coordinate of term t at a nonbasic point. */
  double value(int t, const SparseVec& s) const;
  double rate(int t, const SparseVec& d) const;
  /** Distance along ray j to bd S (infinity when no facet is reached). */
  double boundaryDistance(int j) const;
  /**
   * First exit parameter from S along p + t d (p inside S).
   * @param facet set to 2*term + (0 for lo, 1 for hi) of the facet reached.
   */
  double exitParameter(const SparseVec& p, const SparseVec& d, int* facet = nullptr) const;
  /** Facet code of a point on bd S, or -1. */
  int facetOf(const SparseVec& p, double tol = kEps) const;
  bool inside(const SparseVec& p, double tol = kEps) const;
  bool strictlyInside(const SparseVec& p, double tol = kEps) const;

 private:
  SplitSet split_;
  Vec apexValue_;              ///< per term
  std::vector<Vec> rayRate_;   ///< per term, per ray
};

constexpr int kApex = -1;
constexpr int kBoundaryInit = -1;

/** Point on bd S or ray not meeting bd S, with its provenance. */
struct CollectionElem {
  SparseVec coords;          ///< nonbasic coordinates (a direction for rays)
  int originRay = kApex;     ///< cone ray carrying the vertex the edge starts from
  int hyperplane = kBoundaryInit;  ///< activated hyperplane that created it
  int step = 0;              ///< activation step
  int facet = -1;            ///< split facet code for points
  bool isFinal = false;
  SparseVec edgeStart;       ///< nonbasic start vertex of the generating edge
  SparseVec edgeDir;         ///< nonbasic direction of the generating edge
  double edgeLength = kInf;  ///< parameter at which the edge ends on the cone
};

/** Vertex v = d e_r created by activating a hyperplane on ray r. */
struct ActivationRecord {
  int hyperplane = -1;
  int ray = -1;
  double distance = 0.0;
  int step = 0;
};

/** Intersection points and rays for one split set. */
class PointRayCollection {
 public:
  PointRayCollection() = default;
  explicit PointRayCollection(const SplitGeometry* geom) : geom_(geom) {}

  const SplitGeometry& geometry() const { return *geom_; }
  const SplitSet& split() const { return geom_->split(); }

  std::vector<CollectionElem> points;
  std::vector<CollectionElem> rays;
  std::set<int> cutRays;          ///< R^c
  std::vector<int> parallelRays;  ///< R-bar-parallel
  std::vector<double> initialDistance;  ///< boundary distance per cone ray
  std::vector<ActivationRecord> vertices;
  std::set<int> activated;        ///< hyperplanes activated on this collection

  /** Adds unless a point within 1e-7 (infinity norm) exists. @return true when added. */
  bool addPoint(CollectionElem e);
  /** Adds a ray after scaling to unit infinity norm unless a duplicate exists. */
  bool addRay(CollectionElem e);
  /** Removes elements flagged in the masks and rebuilds the duplicate index. */
  void removeMarked(const std::vector<bool>& pointMask, const std::vector<bool>& rayMask);

  int numFinalPoints() const;
  int numFinalRays() const;

 private:
  void reindex();
  const SplitGeometry* geom_ = nullptr;
  std::map<std::vector<int>, std::vector<int>> pointIndex_;
  std::map<std::vector<int>, std::vector<int>> rayIndex_;
};

/** True when the structural image of @p s satisfies every hyperplane of P. */
bool pointInP(const Cone& cone, const SparseVec& s, double tol = kEps);
/** True when the structural direction lies in the recession cone of P. */
bool rayInP(const Cone& cone, const SparseVec& d, double tol = kEps);

/** Initial collection: ray j meets bd S at distance d_j or is kept as a ray. */
PointRayCollection initialCollection(const Cone& cone, const SplitGeometry& geom);

/** Cut alpha^T s >= beta in the nonbasic chart with its structural image. */
struct Cut {
  Vec alpha;
  double beta = 1.0;
  Inequality structural;   ///< standard-form pi^T x >= pi0
  int splitVar = -1;
  std::string family;      ///< SIC, R, V, T or S
  std::string algorithm;   ///< SIC, ALG2 or ALG3
  int step = 0;
  double efficacy = 0.0;
  double dynamism = 1.0;
  bool isSic() const { return algorithm == "SIC"; }
};

/** Ratio of largest to smallest nonzero |coefficient| (nonzero meaning above kEps relative). */
double dynamism(const Vec& v);
/** Euclidean distance by which pi^T x >= pi0 separates x. */
double efficacy(const Inequality& q, const Vec& x);

/** SIC: alpha_j = 1/d_j for rays meeting bd S, 0 otherwise. Empty alpha if no point exists. */
Cut sicFromInitial(const Cone& cone, const PointRayCollection& coll);

/** (alpha^T p - 1)/||alpha||, clipped below at 0. */
double pointDepth(const SparseVec& p, const Vec& sicAlpha);

}  // namespace gic
