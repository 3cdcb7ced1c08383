/**
 * @file pha.cpp
 * @brief Distance-1 partial hyperplane activation and hyperplane selection.
 */
#include "gic/pha.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gic {

Criterion parseCriterion(const std::string& s) {
  if (s == "h1" || s == "H1") return Criterion::H1;
  if (s == "h2" || s == "H2") return Criterion::H2;
  if (s == "h3" || s == "H3") return Criterion::H3;
  throw std::invalid_argument("unknown hyperplane rule '" + s + "'");
}

std::string criterionName(Criterion c) {
  switch (c) {
    case Criterion::H1: return "H1";
    case Criterion::H2: return "H2";
    case Criterion::H3: return "H3";
  }
  return "?";
}

std::vector<int> raysCutBy(const Cone& cone, int h, const PointRayCollection& coll) {
  std::vector<int> out;
  for (int j = 0; j < cone.dim(); ++j) {
    double d = cone.distance(h, j);
    if (isInf(d)) continue;
    if (d < coll.initialDistance[j] - kEps) out.push_back(j);
  }
  return out;
}

namespace {

double violationTol(const Cone& cone, int h) { return kEps * (1.0 + std::fabs(cone.hyperplanes()[h].b)); }

bool exemptFrom(const SparseVec& p, const std::set<int>& rayset) {
  int nz = 0, at = -1;
  for (std::size_t k = 0; k < p.idx.size(); ++k)
    if (std::fabs(p.val[k]) > kEps) {
      ++nz;
      at = p.idx[k];
    }
  return nz == 1 && !rayset.count(at);
}

}  // namespace

std::vector<CollectionElem> edgeElements(const Cone& cone, int h, int r, const PointRayCollection& coll, int step) {
  std::vector<CollectionElem> out;
  const SplitGeometry& geom = coll.geometry();
  const double wr = cone.rate(h, r);
  const double d = cone.distance(h, r);
  if (isInf(d) || wr >= 0.0) return out;
  SparseVec v;
  if (d > 0.0) v.push(r, d);
  for (int rp = 0; rp < cone.dim(); ++rp) {
    if (rp == r) continue;
    const double mu = -cone.rate(h, rp) / wr;
    const double tstar = mu < -1e-12 ? d / -mu : kInf;
    SparseVec dir;
    dir.push(rp, 1.0);
    if (std::fabs(mu) > 1e-12) dir.push(r, mu);
    int facet = -1;
    const double ts = geom.exitParameter(v, dir, &facet);
    CollectionElem e;
    e.originRay = r;
    e.hyperplane = h;
    e.step = step;
    e.edgeStart = v;
    e.edgeDir = dir;
    e.edgeLength = tstar;
    if (!isInf(ts) && ts < tstar) {
      e.coords.push(rp, ts);
      const double sr = d + ts * mu;
      if (std::fabs(sr) > 1e-12) e.coords.push(r, sr);
      e.facet = facet;
      e.isFinal = pointInP(cone, e.coords);
      out.push_back(std::move(e));
    } else if (isInf(ts) && isInf(tstar)) {
      e.coords = dir;
      e.isFinal = rayInP(cone, dir);
      out.push_back(std::move(e));
    }
  }
  return out;
}

ActivationResult pha1Activate(const Cone& cone, int h, const std::vector<int>& rayset, PointRayCollection& coll,
                              const ActivationOptions& opt) {
  if (cone.slackAtApex(h) < -violationTol(cone, h))
    throw InvalidHyperplaneError("hyperplane " + std::to_string(h) + " is violated at the apex");
  ActivationResult res;
  res.hyperplane = h;
  const std::set<int> ra(rayset.begin(), rayset.end());
  const std::vector<int> cut = raysCutBy(cone, h, coll);
  if (opt.enforceTiltRule)
    for (int j : cut)
      if (coll.cutRays.count(j) && !ra.count(j))
        throw TiltRuleViolation("ray " + std::to_string(j) + " was cut before but is not in the activation set of hyperplane " +
                                std::to_string(h));
  const double tol = violationTol(cone, h);
  for (int r : cut) {
    if (!ra.count(r)) continue;
    std::vector<bool> pmask(coll.points.size(), false), rmask(coll.rays.size(), false);
    for (std::size_t i = 0; i < coll.points.size(); ++i) {
      const auto& e = coll.points[i];
      if (e.originRay != r && e.originRay != kApex) continue;
      if (exemptFrom(e.coords, ra)) continue;
      if (cone.hyperplaneValue(h, e.coords) < -tol) {
        pmask[i] = true;
        if (e.isFinal) ++res.finalRemoved;
      }
    }
    for (std::size_t i = 0; i < coll.rays.size(); ++i) {
      const auto& e = coll.rays[i];
      if (e.originRay != r && e.originRay != kApex) continue;
      if (exemptFrom(e.coords, ra)) continue;
      if (cone.hyperplaneRate(h, e.coords) < -kEps) {
        rmask[i] = true;
        if (e.isFinal) ++res.finalRemoved;
      }
    }
    res.pointsRemoved += static_cast<int>(std::count(pmask.begin(), pmask.end(), true));
    res.raysRemoved += static_cast<int>(std::count(rmask.begin(), rmask.end(), true));
    coll.removeMarked(pmask, rmask);
    for (auto& e : edgeElements(cone, h, r, coll, opt.step)) {
      const bool isRay = e.facet < 0;
      if (isRay) {
        if (coll.addRay(std::move(e))) ++res.raysAdded;
      } else if (coll.addPoint(std::move(e))) {
        ++res.pointsAdded;
      }
    }
    coll.cutRays.insert(r);
    coll.vertices.push_back({h, r, cone.distance(h, r), opt.step});
    res.raysCut.push_back(r);
  }
  coll.activated.insert(h);
  return res;
}

std::vector<CollectionElem> previewActivation(const Cone& cone, int h, const std::vector<int>& rayset,
                                              const PointRayCollection& coll) {
  std::vector<CollectionElem> out;
  const std::set<int> ra(rayset.begin(), rayset.end());
  for (int r : raysCutBy(cone, h, coll)) {
    if (!ra.count(r)) continue;
    for (auto& e : edgeElements(cone, h, r, coll))
      if (e.facet >= 0) out.push_back(std::move(e));
  }
  return out;
}

int selectHyperplane(Criterion crit, const Cone& cone, const std::vector<int>& candidates,
                     const std::vector<int>& targets, const PointRayCollection& coll, const Vec& sicAlpha,
                     int previewCap, std::vector<HyperplaneScore>* scores, const std::vector<int>* previewSet) {
  const std::set<int> tg(targets.begin(), targets.end());
  std::vector<HyperplaneScore> pool;
  for (int h : candidates) {
    HyperplaneScore s;
    s.hyperplane = h;
    for (int j : raysCutBy(cone, h, coll))
      if (tg.count(j)) s.nearest = std::min(s.nearest, cone.distance(h, j));
    if (!isInf(s.nearest)) pool.push_back(s);
  }
  if (pool.empty()) return -1;
  std::sort(pool.begin(), pool.end(), [](const HyperplaneScore& a, const HyperplaneScore& b) {
    return a.nearest != b.nearest ? a.nearest < b.nearest : a.hyperplane < b.hyperplane;
  });
  if (crit != Criterion::H1) {
    if (static_cast<int>(pool.size()) > previewCap) pool.resize(previewCap);
    for (auto& s : pool) {
      auto pts = previewActivation(cone, s.hyperplane, previewSet ? *previewSet : targets, coll);
      double depth = 0.0;
      for (const auto& e : pts) {
        depth += pointDepth(e.coords, sicAlpha);
        if (e.isFinal) ++s.finalPoints;
      }
      s.avgDepth = pts.empty() ? 0.0 : depth / static_cast<double>(pts.size());
    }
  }
  auto better = [crit](const HyperplaneScore& a, const HyperplaneScore& b) {
    switch (crit) {
      case Criterion::H1:
        if (a.nearest != b.nearest) return a.nearest < b.nearest;
        break;
      case Criterion::H2:
        if (std::fabs(a.avgDepth - b.avgDepth) > 1e-12) return a.avgDepth > b.avgDepth;
        break;
      case Criterion::H3:
        if (a.finalPoints != b.finalPoints) return a.finalPoints > b.finalPoints;
        break;
    }
    return a.hyperplane < b.hyperplane;
  };
  const auto best = std::min_element(pool.begin(), pool.end(), better);
  if (scores) *scores = pool;
  return best->hyperplane;
}

TiltSpec degenerateTiltSupport(const Cone& cone, int h, const PointRayCollection& coll) {
  TiltSpec spec;
  spec.hyperplane = h;
  spec.rays = raysCutBy(cone, h, coll);
  if (std::fabs(cone.slackAtApex(h)) > violationTol(cone, h)) return spec;
  for (int r1 = 0; r1 < cone.dim(); ++r1) {
    const double w1 = cone.rate(h, r1);
    if (w1 >= -kEps) continue;
    for (int r2 = 0; r2 < cone.dim(); ++r2) {
      const double w2 = cone.rate(h, r2);
      if (w2 <= kEps) continue;
      spec.entries.push_back({r1, r2, w2 / (w2 - w1)});
    }
  }
  return spec;
}

SparseVec tiltedDirection(const TiltEntry& e, double delta) {
  SparseVec d;
  const double a = e.lambda + delta;
  const double b = 1.0 - e.lambda - delta;
  if (std::fabs(a) > 1e-15) d.push(e.cutRay, a);
  if (std::fabs(b) > 1e-15) d.push(e.uncutRay, b);
  return d;
}

}  // namespace gic
