/**
 * @file cone.hpp
 * @brief LP optimum of a standard-form instance and the simplicial cone it defines.
 *
 * Hyperplanes are indexed as follows: id i < m is row i (a_i^T x >= b_i), id m + j
 * is the bound x_j >= 0. The cone is stored with its nonbasic chart: the apex maps
 * to 0 and ray j to the unit vector e_j, so a hyperplane reads g_h + w_h^T s >= 0
 * with g_h = a_h^T xbar - b_h and w_hj = a_h^T r^j.
 */
#pragma once

#include <string>
#include <vector>

#include "gic/common.hpp"
#include "gic/instance.hpp"
#include "gic/lp.hpp"

namespace gic {

/** Halfspace a^T x >= b of a standard-form instance. */
struct Hyperplane {
  int id = -1;
  Vec a;
  double b = 0.0;
  std::string name;
};

/** All row and nonnegativity hyperplanes of a standard-form instance. */
std::vector<Hyperplane> hyperplanesOf(const Instance& inst);

/** LP relaxation min obj^T x s.t. rows >= b, x >= 0. */
LpProblem toLp(const Instance& inst, const Vec& obj);

struct BasicSolution {
  LpStatus status = LpStatus::Numerical;
  double objective = 0.0;  ///< minimization-form value without the objective constant
  Vec x;
  WarmStart basis;
  std::vector<int> tight;  ///< hyperplane id of each nonbasic variable, ordered by variable index
  Vec reducedCost;         ///< structural reduced costs of the LP
  int iterations = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
  /** Short stable hash of the basis, for reports. */
  std::string basisHash() const;
};

/** Solves the LP relaxation of a standard-form instance. */
BasicSolution solveLp(const Instance& inst, const Vec& obj, const LpOptions& opt = {});

/** Simplicial cone with apex xbar defined by n tight hyperplanes. */
class Cone {
 public:
  /** Cone of an optimal basis. Throws DegenerateBasisError on a singular tight system. */
  static Cone fromSolution(const Instance& inst, const BasicSolution& sol);
  /** Cone at @p apex defined by the hyperplanes with the given ids (one per ray). */
  static Cone fromTight(std::vector<Hyperplane> all, const Vec& apex, const std::vector<int>& tightIds);

  int dim() const { return n_; }
  const Vec& apex() const { return apex_; }
  /** Structural direction of ray j. */
  Vec ray(int j) const { return rays_.column(j); }
  double rayEntry(int k, int j) const { return rays_(k, j); }
  /** Hyperplane defining the facet opposite ray j (tight along all other rays). */
  int rayHyperplane(int j) const { return tight_[j]; }
  const std::vector<int>& tightIds() const { return tight_; }
  bool isConeHyperplane(int h) const { return coneHp_[h]; }

  const std::vector<Hyperplane>& hyperplanes() const { return hp_; }
  int numHyperplanes() const { return static_cast<int>(hp_.size()); }
  /** g_h = a_h^T xbar - b_h. */
  double slackAtApex(int h) const { return g_[h]; }
  /** w_hj = a_h^T r^j. */
  double rate(int h, int j) const { return w_(h, j); }
  const double* rates(int h) const { return w_.row(h); }

  /** Distance along ray j to H_h: g / (-w) when w < 0, else infinity. */
  double distance(int h, int j) const;
  /** Crossing parameter t of ray j with H_h (negative when behind the apex), infinity if parallel. */
  double signedDistance(int h, int j) const;
  /** Value g_h + w_h^T s at a nonbasic point. */
  double hyperplaneValue(int h, const SparseVec& s) const;
  /** Change w_h^T d along a nonbasic direction. */
  double hyperplaneRate(int h, const SparseVec& d) const;

  /** Structural image xbar + sum s_j r^j. */
  Vec toStructural(const SparseVec& s) const;
  /** Structural image of a nonbasic direction. */
  Vec directionToStructural(const SparseVec& d) const;
  /** Nonbasic coordinates of a structural point: s_j = a_{N_j}^T x - b_{N_j}. */
  Vec toNonbasic(const Vec& x) const;
  /** Per-ray costs c^T r^j (the reduced costs of the basis when c is the LP objective). */
  Vec reducedCosts(const Vec& c) const;

 private:
  void build();

  int n_ = 0;
  Vec apex_;
  std::vector<Hyperplane> hp_;
  std::vector<int> tight_;
  std::vector<bool> coneHp_;
  DenseMatrix rays_;  ///< n x n, column j is r^j
  DenseMatrix w_;     ///< hyperplane x ray rates
  Vec g_;
};

/** Structural inequality pi^T x >= pi0. */
struct Inequality {
  Vec pi;
  double pi0 = 0.0;
  double violationAt(const Vec& x) const { return pi0 - dot(pi, x); }
};

/** Maps the nonbasic-space cut alpha^T s >= beta to structural variables. */
Inequality structuralImage(const Cone& cone, const Vec& alpha, double beta = 1.0);

}  // namespace gic
