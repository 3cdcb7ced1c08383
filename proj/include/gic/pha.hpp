/**
 * @file pha.hpp
 * @brief Distance-1 partial hyperplane activation, hyperplane scoring and tilt bookkeeping.
 */
#pragma once

#include <string>
#include <vector>

#include "gic/split.hpp"

namespace gic {

/** Hyperplane selection rule. */
enum class Criterion { H1, H2, H3 };

Criterion parseCriterion(const std::string& s);
std::string criterionName(Criterion c);

struct ActivationOptions {
  bool enforceTiltRule = true;  ///< raise TiltRuleViolation when a cut ray is left out of R_A
  int step = 0;
};

/** Summary of one activation, also written to the trace. */
struct ActivationResult {
  int hyperplane = -1;
  std::vector<int> raysCut;
  int pointsAdded = 0;
  int pointsRemoved = 0;
  int raysAdded = 0;
  int raysRemoved = 0;
  int finalRemoved = 0;  ///< final elements removed (always 0 for a valid hyperplane)
};

/** Rays j with dist(H, r^j) < dist(bd S, r^j) - 1e-7. */
std::vector<int> raysCutBy(const Cone& cone, int h, const PointRayCollection& coll);

/**
 * Points and rays created on the edges leaving v = d e_r on the 2-faces span{r, r'}.
 * Nothing is added to the collection.
 */
std::vector<CollectionElem> edgeElements(const Cone& cone, int h, int r, const PointRayCollection& coll, int step = 0);

/**
 * Activates hyperplane h on the rays of R_A it cuts before bd S.
 * Throws InvalidHyperplaneError when the apex violates h and TiltRuleViolation when
 * a previously cut ray of R(h) is outside R_A and the rule is enforced.
 */
ActivationResult pha1Activate(const Cone& cone, int h, const std::vector<int>& rayset, PointRayCollection& coll,
                              const ActivationOptions& opt = {});

/** New points a tentative activation would create, without touching the collection. */
std::vector<CollectionElem> previewActivation(const Cone& cone, int h, const std::vector<int>& rayset,
                                              const PointRayCollection& coll);

/** Scores of one candidate under the three rules. */
struct HyperplaneScore {
  int hyperplane = -1;
  double nearest = kInf;   ///< H1: smallest distance along a target ray
  double avgDepth = 0.0;   ///< H2
  int finalPoints = 0;     ///< H3
};

/**
 * Picks a hyperplane among @p candidates for the target rays. H2 and H3 preview only
 * the @p previewCap candidates with the smallest H1 score, activating on @p previewSet
 * (the targets when null).
 * @return hyperplane id, or -1 when no candidate cuts a target ray before bd S.
 */
int selectHyperplane(Criterion crit, const Cone& cone, const std::vector<int>& candidates,
                     const std::vector<int>& targets, const PointRayCollection& coll, const Vec& sicAlpha,
                     int previewCap = 50, std::vector<HyperplaneScore>* scores = nullptr,
                     const std::vector<int>* previewSet = nullptr);

/** Pair (cut ray, uncut ray) spanning an extreme ray of C-bar intersected with H. */
struct TiltEntry {
  int cutRay = -1;
  int uncutRay = -1;
  double lambda = 0.0;  ///< r = lambda r_cut + (1 - lambda) r_uncut lies on H
};

/** Support data for tilting a hyperplane that is tight at the apex. */
struct TiltSpec {
  int hyperplane = -1;
  std::vector<int> rays;          ///< R': rays of R(H) selected to cut
  std::vector<TiltEntry> entries; ///< empty when H is not tight at the apex
  /** Allowed delta values for an entry: 0 and -lambda. */
  static std::vector<double> allowedDeltas(const TiltEntry& e) { return {0.0, -e.lambda}; }
};

TiltSpec degenerateTiltSupport(const Cone& cone, int h, const PointRayCollection& coll);

/** Nonbasic direction (lambda + delta) e_cut + (1 - lambda - delta) e_uncut. */
SparseVec tiltedDirection(const TiltEntry& e, double delta);

}  // namespace gic
